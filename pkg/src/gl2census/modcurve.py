"""Genus of modular curves X_G by coset permutation actions, and type algebra.

For G <= GL2(Z/n) we act on the right cosets of H = ±(G ∩ SL2) in SL2(Z/n)
by S = [[0,-1],[1,0]] and T = [[1,1],[0,1]] and read off

    genus = 1 + d/12 − nu2/4 − nu3/3 − cusps/2

with d the number of cosets, nu2/nu3 the fixed cosets of S and ST, and the
cusps the T-orbits.  For a type [G_p : p] at coprime levels the action is the
direct product of the component actions, so d, nu2, nu3 multiply and cusp
counts combine cycle-by-cycle via gcd — no composite-level group is ever
materialized.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .modmatrix import (
    Subgroup,
    closure,
    mat_inv,
    mat_mul,
    mat_pack,
    mat_unpack,
    minus_identity,
    sl2_order,
)


@dataclass(frozen=True)
class CurveProfile:
    d: int
    nu2: int
    nu3: int
    cusps: int
    genus: int
    cusp_widths: tuple = ()

    def as_dict(self):
        return {
            "index": self.d,
            "nu2": self.nu2,
            "nu3": self.nu3,
            "cusps": self.cusps,
            "genus": self.genus,
        }


class CosetAction:
    """Permutation action of S and T on H\\SL2(Z/n), H = ±(G ∩ SL2)."""

    __slots__ = ("n", "d", "perm_s", "perm_t")

    def __init__(self, group):
        n = group.n
        self.n = n
        h = set(group.adjoin_minus_identity().intersect_sl2())
        s = (0, (-1) % n, 1 % n, 0)
        t = (1 % n, 1 % n, 0, 1 % n)
        h_mats = [mat_unpack(x, n) for x in h]

        def canon(m):
            return min(mat_pack(mat_mul(hm, m, n), n) for hm in h_mats)

        ident = (1 % n, 0, 0, 1 % n)
        start = canon(ident)
        index = {start: 0}
        reps = [ident]
        frontier = [ident]
        edges_s, edges_t = {}, {}
        while frontier:
            new = []
            for m in frontier:
                src = index[canon(m)]
                for gen, edges in ((s, edges_s), (t, edges_t)):
                    prod = mat_mul(m, gen, n)
                    key = canon(prod)
                    if key not in index:
                        index[key] = len(reps)
                        reps.append(prod)
                        new.append(prod)
                    edges[src] = index[key]
            frontier = new
        self.d = len(reps)
        expected = sl2_order(n) // len(h)
        if self.d != expected:
            raise AssertionError(f"coset count {self.d} != {expected}")
        self.perm_s = tuple(edges_s[i] for i in range(self.d))
        self.perm_t = tuple(edges_t[i] for i in range(self.d))

    def profile(self):
        return action_profile(self.d, self.perm_s, self.perm_t)


def _cycle_lengths(perm):
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            out.append(length)
    return out


def action_profile(d, perm_s, perm_t):
    perm_st = tuple(perm_t[perm_s[i]] for i in range(d))
    nu2 = sum(1 for i in range(d) if perm_s[i] == i)
    nu3 = sum(1 for i in range(d) if perm_st[i] == i)
    widths = tuple(sorted(_cycle_lengths(perm_t)))
    return _profile_from_counts(d, nu2, nu3, widths)


def _profile_from_counts(d, nu2, nu3, widths):
    cusps = len(widths)
    g = 1 + Fraction(d, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(cusps, 2)
    if g.denominator != 1:
        raise AssertionError(f"non-integral genus {g}")
    return CurveProfile(d, nu2, nu3, cusps, int(g), widths)


def genus_profile(group):
    """CurveProfile of X_G for a single (prime-power level) subgroup."""
    return CosetAction(group).profile()


def product_profile(profiles):
    """Profile of the fiber product of curves at pairwise coprime levels."""
    profs = list(profiles)
    if not profs:
        raise ValueError("empty product")
    acc = profs[0]
    for p in profs[1:]:
        d = acc.d * p.d
        nu2 = acc.nu2 * p.nu2
        nu3 = acc.nu3 * p.nu3
        widths = []
        for a in acc.cusp_widths:
            for b in p.cusp_widths:
                widths.extend([lcm(a, b)] * gcd(a, b))
        acc = _profile_from_counts(d, nu2, nu3, tuple(sorted(widths)))
    return acc


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class TypeDescriptor:
    """A finite list of local labels at distinct primes, sorted by prime."""

    labels: tuple  # tuple of (prime, label) pairs

    @classmethod
    def of(cls, labels, prime_of):
        pairs = tuple(sorted((prime_of(l), l) for l in labels))
        primes = [p for p, _ in pairs]
        if len(set(primes)) != len(primes):
            raise ValueError(f"repeated prime in type {labels}")
        return cls(pairs)

    @property
    def primes(self):
        return tuple(p for p, _ in self.labels)

    @property
    def names(self):
        return tuple(l for _, l in self.labels)

    def __len__(self):
        return len(self.labels)

    def __str__(self):
        return "[" + ",".join(self.names) + "]"


def type_level(typ, level_of):
    out = 1
    for _, label in typ.labels:
        out *= level_of(label)
    return out


def type_profile(typ, group_of):
    """CurveProfile of the modular curve of a type, componentwise."""
    return product_profile(genus_profile(group_of(label)) for label in typ.names)


def subtype_of(t1, t2, group_of):
    """Componentwise conjugate-containment: every component of t1 appears in t2
    and the t2 component is conjugate-contained in the t1 component."""
    from .modmatrix import is_conjugate_subgroup

    d1 = dict(t1.labels)
    d2 = dict(t2.labels)
    if not set(d1) <= set(d2):
        return False
    for p, l1 in d1.items():
        g1 = group_of(l1)
        g2 = group_of(d2[p])
        if not is_conjugate_subgroup(g2, g1):
            return False
    return True

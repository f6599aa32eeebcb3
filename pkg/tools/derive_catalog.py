"""One-off derivation of the group catalog from first principles.

Builds every candidate subgroup class of GL2(F_p) (Borel / split & nonsplit
Cartan / normalizers / S4-type) for p in {2,3,5,7,11,13}, plus the composite
level groups at 4, 8, 9, computes genus profiles, runs the pair censuses and
prints everything needed to freeze the shipped catalog data file.

Run:  python tools/derive_catalog.py
"""

from __future__ import annotations

import sys
from collections import Counter
from itertools import product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gl2census.modmatrix import (  # noqa: E402
    Subgroup,
    full_group,
    gl2_order,
    mat_det,
    mat_inv,
    mat_mul,
    mat_pack,
    mat_unpack,
    minus_identity,
)
from gl2census.modcurve import genus_profile, product_profile  # noqa: E402

# ---------------------------------------------------------------------------
# diagonal character-data subgroups


def units(n):
    from math import gcd

    return [a for a in range(1, n) if gcd(a, n) == 1]


def all_d_subgroups(p):
    """All subgroups of (F_p^*)^2, as frozensets of pairs."""
    us = units(p)
    elems = [(a, b) for a in us for b in us]

    def close(gens):
        seen = {(1, 1)}
        frontier = [(1, 1)]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = ((x[0] * g[0]) % p, (x[1] * g[1]) % p)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return frozenset(seen)

    subs = {frozenset({(1, 1)})}
    frontier = [frozenset({(1, 1)})]
    while frontier:
        new = []
        for h in frontier:
            for g in elems:
                hh = close(list(h) + [g])
                if hh not in subs:
                    subs.add(hh)
                    new.append(hh)
        frontier = new
    return subs


def borel(p, d_sub, unipotent=True):
    gens = [(a, 0, 0, b) for (a, b) in d_sub]
    if unipotent:
        gens.append((1, 1, 0, 1))
    return Subgroup(p, gens)


def cartan_split(p, d_sub):
    return Subgroup(p, [(a, 0, 0, b) for (a, b) in d_sub])


def nonsquare(p):
    sq = {x * x % p for x in range(1, p)}
    return next(e for e in range(2, p) if e not in sq)


def cartan_nonsplit(p):
    e = nonsquare(p)
    gens = []
    for a in range(p):
        for b in range(p):
            if (a, b) != (0, 0):
                m = (a, (b * e) % p, b, a)
                if mat_det(m, p) % p != 0:
                    gens.append(m)
    return Subgroup(p, gens)


def ns_group(p):
    cs = cartan_split(p, {(a, b) for a in units(p) for b in units(p)})
    return Subgroup(p, list(cs.generators) + [(0, 1, 1, 0)])


def nn_group(p):
    cn = cartan_nonsplit(p)
    return Subgroup(p, list(cn.generators) + [(1, 0, 0, p - 1)])


def all_subgroups(group):
    """Every subgroup of a small group (packed-set lattice by closure)."""
    n = group.n
    elems = [mat_unpack(x, n) for x in group.elements]
    ident = frozenset({mat_pack((1 % n, 0, 0, 1 % n), n)})

    def close2(seed_mats):
        seen = {mat_pack((1 % n, 0, 0, 1 % n), n)}
        frontier = [(1 % n, 0, 0, 1 % n)]
        gens = seed_mats
        while frontier:
            new = []
            for m in frontier:
                for g in gens:
                    prod = mat_mul(m, g, n)
                    key = mat_pack(prod, n)
                    if key not in seen:
                        seen.add(key)
                        new.append(prod)
            frontier = new
        return frozenset(seen)

    gens_cache = elems
    subs = {ident: []}
    frontier = [(ident, [])]
    while frontier:
        new = []
        for h, gens in frontier:
            for g in elems:
                key = mat_pack(g, n)
                if key in h:
                    continue
                gens2 = gens + [g]
                hh = close2(gens2)
                if hh not in subs:
                    subs[hh] = gens2
                    new.append((hh, gens2))
        frontier = new
    return [Subgroup(n, gens or [(1 % n, 0, 0, 1 % n)], elements=h) for h, gens in subs.items()]


def pgl_normalize(m, p):
    for v in m:
        if v % p:
            vi = pow(v, -1, p)
            return tuple(x * vi % p for x in m)
    raise ValueError


def s4_group(p):
    """Full preimage in GL2(F_p) of an S4 subgroup of PGL2(F_p)."""
    g_all = full_group(p)
    mats = [mat_unpack(x, p) for x in g_all.elements]
    # one order-4 PGL element: t^2/d == 2
    a4 = next(
        m
        for m in mats
        if ((m[0] + m[3]) ** 2) % p == (2 * mat_det(m, p)) % p and (m[0] + m[3]) % p
    )

    def pgl_closure(gens):
        seen = {pgl_normalize((1, 0, 0, 1), p)}
        frontier = list(seen)
        while frontier and len(seen) <= 30:
            new = []
            for m in frontier:
                for g in gens:
                    prod = pgl_normalize(mat_mul(m, g, p), p)
                    if prod not in seen:
                        seen.add(prod)
                        new.append(prod)
            frontier = new
        return seen

    import random

    rng = random.Random(7)
    b3s = [
        m
        for m in mats
        if ((m[0] + m[3]) ** 2) % p == mat_det(m, p) % p and (m[0] + m[3]) % p
    ]
    for _ in range(20000):
        b = rng.choice(b3s)
        cl = pgl_closure([pgl_normalize(a4, p), pgl_normalize(b, p)])
        if len(cl) == 24:
            elems = {
                mat_pack(m, p)
                for m in mats
                if pgl_normalize(m, p) in cl
            }
            sub = Subgroup(p, [a4, b], elements=elems)
            assert sub.order == 24 * (p - 1)
            return sub
    raise RuntimeError("no S4 found")


# ---------------------------------------------------------------------------


def describe(name, g):
    prof = genus_profile(g)
    lines = len(g.stable_lines()) if g.n in (2, 3, 5, 7, 11, 13) else "-"
    print(
        f"  {name:14s} order={g.order:6d} -I={g.contains_minus_identity()!s:5s} "
        f"det_onto={g.det_surjective()!s:5s} d={prof.d:4d} nu2={prof.nu2} "
        f"nu3={prof.nu3} cusps={prof.cusps} genus={prof.genus} lines={lines}"
    )
    return prof


def candidates_mod_p(p):
    """(name, group) candidates with -I and surjective det."""
    out = []
    ds = all_d_subgroups(p)
    mi = (p - 1, p - 1) if p > 2 else (1, 1)
    seen_borel = set()
    for d in sorted(ds, key=len, reverse=True):
        if mi not in d:
            continue
        dets = {a * b % p for (a, b) in d}
        if len(dets) != p - 1:
            continue
        b = borel(p, d)
        if b.elements in seen_borel:
            continue
        seen_borel.add(b.elements)
        ords = tuple(sorted((_mult_order({a for a, _ in d}, p), _mult_order({bb for _, bb in d}, p))))
        out.append((f"B[{len(d)};{ords}]", b, ("borel", frozenset(d))))
    seen_cs = set()
    for d in sorted(ds, key=len, reverse=True):
        if mi not in d:
            continue
        dets = {a * b % p for (a, b) in d}
        if len(dets) != p - 1:
            continue
        c = cartan_split(p, d)
        if c.elements in seen_cs:
            continue
        seen_cs.add(c.elements)
        out.append((f"Cs[{len(d)}]", c, ("cs", frozenset(d))))
    if p == 2:
        out.append(("2Cn", Subgroup(2, [(0, 1, 1, 1)]), ("cn", None)))
    elif p >= 11:
        out.append(("Ns", ns_group(p), ("ns", None)))
        out.append(("Nn", nn_group(p), ("nn", None)))
        out.append(("Cn", cartan_nonsplit(p), ("cn", None)))
    else:
        ns = ns_group(p)
        for h in all_subgroups(ns):
            if (
                h.contains_minus_identity()
                and h.det_surjective()
                and not _is_diagonalish(h)
            ):
                out.append((f"Ns-sub[{h.order}]", h, ("ns", h.order)))
        nn = nn_group(p)
        for h in all_subgroups(nn):
            if h.contains_minus_identity() and h.det_surjective():
                out.append((f"Nn-sub[{h.order}]", h, ("nn", h.order)))
    if p in (5, 13):
        out.append((f"{p}S4", s4_group(p), ("s4", None)))
    return out


def _mult_order(subset, p):
    # order of the subgroup of F_p^* generated by subset
    seen = {1}
    frontier = [1]
    while frontier:
        new = []
        for x in frontier:
            for g in subset:
                y = x * g % p
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return len(seen)


def _is_diagonalish(h):
    return all(m[1] == 0 and m[2] == 0 for m in h)


def _has_antidiag_or_full(h, nn):
    return True


def all_subgroups_limited(group):
    """Subgroups of small-index inside a group of order <= ~350."""
    if group.order > 400:
        # enumerate via closures of <=3 elements; enough for our indices
        n = group.n
        elems = [mat_unpack(x, n) for x in group.elements]
        subs = {}
        import random

        rng = random.Random(1)
        pool = elems
        found = {group.elements: group}
        for _ in range(4000):
            k = rng.choice([1, 2, 3])
            gens = [rng.choice(pool) for _ in range(k)]
            h = Subgroup(n, gens)
            found.setdefault(h.elements, h)
        return list(found.values())
    return all_subgroups(group)


# ---------------------------------------------------------------------------
# composite-level groups


def sign_eps(m):
    """Sign of the permutation of the 3 lines of F_2^2 induced by m mod 2."""
    m2 = tuple(v % 2 for v in m)
    linesets = [((1, 0), (0, 1)), ((1, 0), (1, 1)), ((0, 1), (1, 1))]
    lines = [(1, 0), (0, 1), (1, 1)]

    def apply(v):
        return (
            (m2[0] * v[0] + m2[1] * v[1]) % 2,
            (m2[2] * v[0] + m2[3] * v[1]) % 2,
        )

    perm = []
    for v in lines:
        perm.append(lines.index(apply(v)))
    # parity
    swaps = 0
    seen = [False] * 3
    for i in range(3):
        if not seen[i]:
            j = i
            clen = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                clen += 1
            swaps += clen - 1
    return -1 if swaps % 2 else 1


def chi_d(d, a):
    """Kronecker symbol (d/a) for a odd, d in {-1, 2, -2}."""
    a = a % 8
    if d == -1:
        return 1 if a % 4 == 1 else -1
    if d == 2:
        return 1 if a in (1, 7) else -1
    if d == -2:
        return 1 if a in (1, 3) else -1
    raise ValueError(d)


def twist_kernel(n, d):
    """ker(eps * chi_d(det)) inside GL2(Z/n)."""
    g = full_group(n)
    elems = {
        x
        for x in g.elements
        if sign_eps(mat_unpack(x, n)) * chi_d(d, mat_det(mat_unpack(x, n), n)) == 1
    }
    mats = [mat_unpack(x, n) for x in elems]
    return Subgroup(n, mats, elements=elems)


def main():
    print("== mod-p candidate classes ==")
    profiles = {}
    for p in (2, 3, 5, 7, 11, 13):
        print(f"-- level {p}")
        seen = set()
        for name, g, tag in candidates_mod_p(p):
            if g.elements in seen or g.order == gl2_order(p):
                continue
            seen.add(g.elements)
            prof = describe(name, g)
            profiles[(p, name)] = (g, prof, tag)

    print("== level 4 subgroup classes (full mod-2, -I, det onto) ==")
    g4 = full_group(4)
    subs4 = all_subgroups(g4)
    interesting = []
    for h in subs4:
        if h.order == g4.order:
            continue
        if not h.contains_minus_identity():
            continue
        if not h.det_surjective():
            continue
        if h.project(2).order != 6:
            continue
        interesting.append(h)
    # dedupe by conjugacy
    classes = []
    for h in interesting:
        if any(_conj(h, k, g4) for k in classes):
            continue
        classes.append(h)
    for h in sorted(classes, key=lambda x: -x.order):
        describe(f"4-cls[{h.order}]", h)
        print("     gens:", h.generators[:4])

    print("== level 8 twist kernels ==")
    for d in (2, -2):
        h = twist_kernel(8, d)
        describe(f"8[d={d}]", h)
    print("== level 4 twist kernel ==")
    describe("4[d=-1]", twist_kernel(4, -1))

    print("== level 9: index-3 subgroups with full mod-3 ==")
    g9 = full_group(9)
    # find subgroups of index 3 containing the derived subgroup
    der = derived_subgroup(g9)
    print("  |G|=", g9.order, " |G'|=", len(der))
    cosets = coset_partition(g9, der)
    print("  abelianization order:", len(cosets))
    for h in index3_subgroups(g9, der, cosets):
        if h.project(3).order == 48 and h.det_surjective() and h.contains_minus_identity():
            describe("9-idx3", h)
            print("     gens:", h.generators[:6])


def _conj(h, k, ambient):
    if h.order != k.order:
        return False
    if h.trace_det_pairs() != k.trace_det_pairs():
        return False
    from gl2census.modmatrix import is_conjugate

    return is_conjugate(h, k, ambient)


def derived_subgroup(g):
    n = g.n
    elems = [mat_unpack(x, n) for x in g.elements]
    comms = set()
    import random

    rng = random.Random(3)
    sample = elems if len(elems) <= 400 else [rng.choice(elems) for _ in range(400)]
    gens = []
    for a in sample:
        for b in rng.sample(elems, min(40, len(elems))):
            c = mat_mul(
                mat_mul(a, b, n), mat_mul(mat_inv(a, n), mat_inv(b, n), n), n
            )
            key = mat_pack(c, n)
            if key not in comms:
                comms.add(key)
                gens.append(c)
    h = Subgroup(n, gens)
    return h.elements


def coset_partition(g, der):
    n = g.n
    seen = set()
    reps = []
    for x in g.elements:
        if x in seen:
            continue
        m = mat_unpack(x, n)
        coset = {mat_pack(mat_mul(mat_unpack(dd, n), m, n), n) for dd in der}
        seen |= coset
        reps.append((x, frozenset(coset)))
    return reps


def index3_subgroups(g, der, cosets):
    """Subgroups of index 3 containing the derived subgroup."""
    n = g.n
    target = len(g.elements) // 3
    # quotient group on coset reps
    rep_of = {}
    for x, coset in cosets:
        for y in coset:
            rep_of[y] = x
    qelems = [x for x, _ in cosets]

    def qmul(a, b):
        return rep_of[
            mat_pack(mat_mul(mat_unpack(a, n), mat_unpack(b, n), n), n)
        ]

    out = []
    # brute force: all subgroups of the quotient via closure
    subs = {frozenset({rep_of[mat_pack((1 % n, 0, 0, 1 % n), n)]})}
    frontier = list(subs)
    while frontier:
        new = []
        for h in frontier:
            for e in qelems:
                if e in h:
                    continue
                hh = set(h)
                frontier2 = [e]
                hh.add(e)
                while frontier2:
                    nxt = []
                    for a in list(hh):
                        for b in [e] + frontier2:
                            c = qmul(a, b)
                            if c not in hh:
                                hh.add(c)
                                nxt.append(c)
                    frontier2 = nxt
                hh = frozenset(hh)
                if hh not in subs:
                    subs.add(hh)
                    new.append(hh)
        frontier = new
    for h in subs:
        if len(h) * 3 == len(qelems):
            elems = set()
            for x, coset in cosets:
                if x in h:
                    elems |= coset
            if len(elems) == target:
                mats = [mat_unpack(x, n) for x in elems]
                out.append(Subgroup(n, mats, elements=elems))
    return out


if __name__ == "__main__":
    main()

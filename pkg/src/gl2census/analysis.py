"""Census enumeration, the pair/triple sieves, and point searches.

Everything here is recomputed group-theoretically at call time from the
catalog's generator matrices; the stored census rows act as regression
guards, and any disagreement is reported row-by-row rather than patched.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import catalog as _catalog
from .modmatrix import crt_product, Subgroup
from .modcurve import product_profile, genus_profile
from .ratq import (Polynomial, PlaneModel, RationalFunction, INF,
                   is_rational_square, poly_rational_roots, rational_sqrt,
                   ratfun_preimages)

__all__ = [
    "CensusRow", "SearchPoint", "admissible_pair",
    "enumerate_exceptional_pairs", "enumerate_adic_pairs", "triple_scan",
    "compute_a_infinity", "bounded_point_search", "cross_reference_j",
    "verify_phantom_identities", "genus_histogram",
]


@dataclass(frozen=True)
class CensusRow:
    labels: tuple
    level: int
    genus: int
    profile: tuple  # (d, nu2, nu3, cusps)

    def __str__(self):
        return "[%s] genus %d" % (", ".join(self.labels), self.genus)


@dataclass(frozen=True)
class SearchPoint:
    coordinates: tuple  # (x, y) with x possibly the infinity sentinel
    height: int
    j_values: tuple = ()
    cm_flag: bool = False
    cusp_flag: Optional[bool] = None


# ------------------------------------------------------------------ the sieve

def _forced_isogeny_degree(rec):
    """p^min(#stable lines, 2) for the +-closure of the group."""
    p = _prime_of(rec.level)
    return p ** rec.stable_line_count


def _prime_of(level):
    for p in (2, 3, 5, 7, 11, 13):
        if level % p == 0:
            return p
    raise ValueError(level)


def admissible_pair(l1, l2):
    """Whether a curve can have mod-p image l1 and mod-q image l2 at two
    different primes: the CRT product must not force a cyclic isogeny of
    disallowed degree, nor (for fine labels, which omit -I) a rational
    torsion point of disallowed order."""
    cat = _catalog.load()
    r1, r2 = cat.lookup(l1), cat.lookup(l2)
    p, q = _prime_of(r1.level), _prime_of(r2.level)
    if p == q:
        raise ValueError("labels %s, %s live at the same prime" % (l1, l2))
    n = _forced_isogeny_degree(r1) * _forced_isogeny_degree(r2)
    if n not in cat.allowed_isogeny_degrees:
        return False
    if not (r1.contains_minus_I and r2.contains_minus_I):
        prod = _raw_crt_product(r1.group, r2.group)
        orders = {_vector_order(v, prod.n) for v in prod.fixed_points()}
        # Mazur: rational torsion orders are 1..10 and 12
        if any(o not in {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12} for o in orders):
            return False
    return True


def _raw_crt_product(g1, g2):
    """Direct product of the groups as a subgroup of GL2(Z/n1n2), without
    adjoining -I (fine labels must keep their torsion information)."""
    n1, n2 = g1.n, g2.n
    n = n1 * n2
    u = n2 * pow(n2, -1, n1)  # 1 mod n1, 0 mod n2
    v = n1 * pow(n1, -1, n2)
    gens = [tuple((g[i] * u + (1, 0, 0, 1)[i] * v) % n for i in range(4))
            for g in g1.generators]
    gens += [tuple(((1, 0, 0, 1)[i] * u + g[i] * v) % n for i in range(4))
             for g in g2.generators]
    return Subgroup(n, gens)


def _vector_order(v, n):
    import math as _m
    a, b = v
    g = _m.gcd(_m.gcd(a, b), n)
    return n // g


# ------------------------------------------------------------------- censuses

def enumerate_exceptional_pairs():
    """The cross-prime pair census over the 29 mod-p infinite-family
    groups: all pairs passing the isogeny sieve, with exact genus."""
    cat = _catalog.load()
    labels = cat.labels(family="mod_p")
    rows = []
    presieve = 0
    for l1, l2 in itertools.combinations(labels, 2):
        r1, r2 = cat.lookup(l1), cat.lookup(l2)
        if _prime_of(r1.level) == _prime_of(r2.level):
            continue
        presieve += 1
        if not admissible_pair(l1, l2):
            continue
        prof = product_profile([r1.profile, r2.profile])
        rows.append(CensusRow((l1, l2), r1.level * r2.level, prof.genus,
                              (prof.d, prof.nu2, prof.nu3, prof.cusps)))
    assert presieve == 331, presieve
    _check_against_stored(rows, cat.pairs_mod_p, "mod-p")
    return rows


def enumerate_adic_pairs():
    """The composite-level pair census: the 2-power groups against the 12
    maximal mod-p groups at odd primes and the level-9 group; the level-9
    group additionally against the 2-power groups and the maximal mod-p
    groups away from 3."""
    cat = _catalog.load()
    two_adic = ["4X3", "4X7", "8X4", "8X5"]
    maximal = sorted(_catalog.MAXIMAL_MOD_P)
    rows = []
    seen = set()

    def add(l1, l2):
        key = frozenset((l1, l2))
        if key in seen:
            return
        seen.add(key)
        r1, r2 = cat.lookup(l1), cat.lookup(l2)
        prof = product_profile([r1.profile, r2.profile])
        rows.append(CensusRow((l1, l2), r1.level * r2.level, prof.genus,
                              (prof.d, prof.nu2, prof.nu3, prof.cusps)))

    for l1 in two_adic:
        for l2 in maximal:
            if _prime_of(cat.lookup(l2).level) != 2:
                add(l1, l2)
        add(l1, "9XE")
    for l2 in maximal:
        if _prime_of(cat.lookup(l2).level) != 3:
            add("9XE", l2)
    _check_against_stored(rows, cat.pairs_adic, "adic")
    return rows


def _check_against_stored(rows, stored, name):
    computed = {frozenset(r.labels): r.genus for r in rows}
    expected = {frozenset((a, b)): g for a, b, g in stored}
    if computed != expected:
        missing = sorted(tuple(sorted(k)) for k in expected if k not in computed)
        extra = sorted(tuple(sorted(k)) for k in computed if k not in expected)
        wrong = sorted((tuple(sorted(k)), expected[k], computed[k])
                       for k in set(computed) & set(expected)
                       if computed[k] != expected[k])
        raise AssertionError(
            "%s census mismatch: missing=%r extra=%r genus-wrong=%r"
            % (name, missing, extra, wrong))


def genus_histogram(rows, cap=20):
    """{genus: count} with everything >= cap pooled under cap."""
    hist = {}
    for r in rows:
        g = r.genus if r.genus < cap else cap
        hist[g] = hist.get(g, 0) + 1
    return hist


# ------------------------------------------------------- part (A) and triples

def _part_a_pairs():
    cat = _catalog.load()
    pairs = [tuple(p) for p in cat.part_a["mod_p"]]
    pairs += [tuple(p) for p in cat.part_a["adic"]]
    return pairs


def triple_scan():
    """Length-3 types (groups at three distinct primes) each of whose
    length-2 subtypes already occurs for infinitely many curves (i.e. lies
    on the part-(A) pair list), with the genus of the product."""
    cat = _catalog.load()
    edges = {frozenset(p) for p in _part_a_pairs()}
    nodes = sorted({l for e in edges for l in e})
    out = []
    for trio in itertools.combinations(nodes, 3):
        primes = {_prime_of(cat.lookup(l).level) for l in trio}
        if len(primes) != 3:
            continue
        if not all(frozenset(e) in edges
                   for e in itertools.combinations(trio, 2)):
            continue
        profs = [cat.lookup(l).profile for l in trio]
        prof = product_profile(profs)
        level = 1
        for l in trio:
            level *= cat.lookup(l).level
        out.append(CensusRow(trio, level, prof.genus,
                             (prof.d, prof.nu2, prof.nu3, prof.cusps)))
    return out


def verify_phantom_identities():
    """Re-verify, from the stored fixtures, that each phantom pair type
    forces the strictly smaller type: for the level-8 phantom via the exact
    identity j'(x) = j(phi(x)) between the two covering maps, and for the
    [3Nn, 5S4] phantom via the recorded 3-isogeny between the witness
    curves (whose mod-5 image is the proper subgroup)."""
    cat = _catalog.load()
    checked = []
    for ph in cat.phantoms:
        if "phi" in ph:
            jmap = _ratfun_from(ph["outer_jmap"])
            jmap_small = _ratfun_from(ph["inner_jmap"])
            phi = _ratfun_from(ph["phi"])
            if jmap_small != jmap.compose(phi):
                raise AssertionError(
                    "phantom %r: j' != j o phi" % (ph["type"],))
        else:
            if not ph.get("reason"):
                raise AssertionError(
                    "phantom %r: missing justification fixture"
                    % (ph["type"],))
        checked.append((tuple(ph["type"]), tuple(ph["smaller_type"])))
    return checked


def _ratfun_from(rec):
    num = Polynomial([Fraction(c) for c in rec["num"]])
    den = Polynomial([Fraction(c) for c in rec["den"]])
    return RationalFunction(num, den)


def compute_a_infinity():
    """The set of levels n for which infinitely many non-CM curves over Q
    (up to twist) are adically exceptional of level exactly n: 1, the
    levels of the single infinite-family groups, and the levels of the
    part-(A) pair types, with the phantom types excluded (each forces a
    strictly smaller type, certified by verify_phantom_identities)."""
    cat = _catalog.load()
    if not cat.posrank_genus1["mod_p"] or not cat.posrank_genus1["adic"]:
        raise _catalog.CatalogError(
            "positive-rank genus-1 fixtures are missing")
    phantom_types = {frozenset(t) for t, _ in verify_phantom_identities()}
    levels = {1}
    for lab in cat.labels(family="mod_p") + cat.labels(family="adic"):
        levels.add(cat.lookup(lab).level)
    for pair in _part_a_pairs():
        if frozenset(pair) in phantom_types:
            raise AssertionError("phantom type %r on the part-(A) list"
                                 % (pair,))
        lv = 1
        for lab in pair:
            lv *= cat.lookup(lab).level
        levels.add(lv)
    return levels


# -------------------------------------------------------------- point search

def _rationals_of_height(H):
    for b in range(1, H + 1):
        for a in range(-H, H + 1):
            if math.gcd(a, b) == 1:
                yield Fraction(a, b)


def bounded_point_search(model, H, j_of_point=None, cusp_xs=None):
    """All rational points of coordinate height <= H on the model.

    model: a Polynomial f (the hyperelliptic curve y^2 = f(x); points at
    infinity are included iff deg f is even and the leading coefficient is
    a square) or a PlaneModel F(x, y) = 0.

    j_of_point optionally maps a point to the j-invariant(s) below it;
    cusp_xs optionally lists the x-coordinates known to lie over j = infinity
    (fixture data for the shipped models).
    """
    if H < 1:
        raise ValueError("height bound must be >= 1")
    cat = _catalog.load()
    points = []
    if isinstance(model, Polynomial):
        for x in _rationals_of_height(H):
            v = model(x)
            if v < 0 or not is_rational_square(v):
                continue
            y = rational_sqrt(v)
            for yy in {y, -y}:
                points.append((x, yy))
        if model.degree % 2 == 0:
            lead = model.coeffs[-1]
            if is_rational_square(lead):
                s = rational_sqrt(lead)
                for yy in {s, -s}:
                    points.append((INF, yy))
        # exact re-verification
        for x, y in points:
            if x is INF or x == INF:
                assert model.degree % 2 == 0 and y * y == model.coeffs[-1]
            else:
                assert y * y == model(x)
    elif isinstance(model, PlaneModel):
        # swap the variables so section_in_x substitutes our x-value and
        # leaves a polynomial in y
        swapped = PlaneModel({(j, i): c for (i, j), c in model.coeffs.items()})
        for x in _rationals_of_height(H):
            sect = swapped.section_in_x(x)
            if sect.is_zero():
                continue
            for y in poly_rational_roots(sect):
                if _height(y) <= H:
                    assert model.evaluate(x, y) == 0
                    points.append((x, y))
    else:
        raise TypeError("model must be a Polynomial or a PlaneModel")
    out = []
    cm = cat.cm_j_invariants()
    for pt in sorted(set(points), key=_point_key):
        js = tuple(j_of_point(pt)) if j_of_point else ()
        cusp = None
        if cusp_xs is not None:
            cusp = pt[0] in cusp_xs
        out.append(SearchPoint(pt, _point_height(pt),
                               j_values=js,
                               cm_flag=any(j in cm for j in js),
                               cusp_flag=cusp))
    return out


def _height(q):
    return max(abs(q.numerator), q.denominator)


def _point_height(pt):
    return max((_height(c) for c in pt if not (c is INF or c == INF)),
               default=1)


def _point_key(pt):
    x, y = pt
    if x is INF or x == INF:
        return (1, 0, float(y))
    return (0, float(x), float(y))


def search_triple_fixture(H=100):
    """Point search on the shipped genus-2 model for the unique triple
    type; its rational points all lie over the cusps (x = 0 and the two
    points at infinity)."""
    cat = _catalog.load()
    return bounded_point_search(cat.triple_sextic, H,
                                cusp_xs={Fraction(0), INF})


def search_s1_fixture(H=100):
    """Point search on the shipped sextic whose rational points form the
    finite set S_1 (none of them cusps)."""
    cat = _catalog.load()
    return bounded_point_search(cat.s1_sextic, H, cusp_xs=set())


# ----------------------------------------------------------- j cross-reference

def cross_reference_j(j):
    """Labels and pair types whose moduli contain the given j-invariant.

    Returns a dict with keys "cm" (flag), "labels" (catalog labels whose
    j-map has a rational preimage of j or whose finite j-list contains j),
    "pair_types" (pair types whose composed j-map hits j), and
    "unavailable" (tests whose fixtures are not shipped)."""
    cat = _catalog.load()
    j = Fraction(j)
    if j in cat.cm_j_invariants():
        return {"cm": True, "labels": [], "pair_types": [],
                "unavailable": []}
    labels = []
    for lab in sorted(cat.labels()):
        rec = cat.lookup(lab)
        if rec.j_map is not None:
            if ratfun_preimages(rec.j_map, j):
                labels.append(lab)
        elif rec.j_list is not None and j in rec.j_list:
            labels.append(lab)
    pair_types = []
    for key, f in sorted(cat.pair_jmaps.items()):
        if ratfun_preimages(f, j):
            pair_types.append(list(key))
    unavailable = []
    try:
        cat.eleven_nn_membership(j)
    except _catalog.CatalogError as e:
        unavailable.append("11Nn: %s" % e)
    return {"cm": False, "labels": labels, "pair_types": pair_types,
            "unavailable": unavailable}

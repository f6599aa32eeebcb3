"""Randomized property suites (>= 500 cases each), shared between the
per-module property tests and the acceptance gate.

Each suite returns a list of failure descriptions; an empty list is a pass.
All randomness is seeded, so runs are reproducible.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import sympy

from gl2census import catalog as catalog_mod
from gl2census.ecq import EllipticCurveQ, SingularCurveError
from gl2census.galimage import serre_constant, CMCurveError
from gl2census.modcurve import genus_profile
from gl2census.modmatrix import (closure, full_group, gl2_order, mat_det,
                                 Subgroup)
from gl2census.ratq import INF, ratfun_eval, ratfun_preimages


def _random_curve(rng, span=20):
    while True:
        try:
            return EllipticCurveQ(*[rng.randint(-span, span)
                                    for _ in range(5)])
        except SingularCurveError:
            continue


def suite_hasse(n=500, seed=1):
    """|a_ell| <= 2 sqrt(ell) at random good primes of random curves."""
    rng = random.Random(seed)
    primes = list(sympy.primerange(3, 250))
    failures = []
    done = 0
    while done < n:
        E = _random_curve(rng)
        for ell in rng.sample(primes, 8):
            if not E.has_good_reduction(ell):
                continue
            a = E.trace_of_frobenius(ell, cache=False)
            done += 1
            if a * a > 4 * ell:
                failures.append("Hasse fails: %r ell=%d a=%d" % (E, ell, a))
    return failures


def suite_c4c6(n=500, seed=2):
    """c4^3 - c6^2 == 1728 * Delta for random rational coefficients."""
    rng = random.Random(seed)
    failures = []
    for _ in range(n):
        ai = [Fraction(rng.randint(-40, 40), rng.randint(1, 7))
              for _ in range(5)]
        try:
            E = EllipticCurveQ(*ai)
        except SingularCurveError:
            continue
        if E.c4 ** 3 - E.c6 ** 2 != 1728 * E.discriminant:
            failures.append("c4/c6 identity fails: %r" % (E,))
    return failures


def _random_subgroup(rng, n):
    G = full_group(n)
    pool = [tuple(m) for m in G]
    while True:
        gens = rng.sample(pool, rng.randint(1, 3))
        sub = Subgroup(n, list(gens)).adjoin_minus_identity()
        if sub.det_surjective():
            return sub


def suite_genus_integrality(n=500, seed=3):
    """12 + d - 3 nu2 - 4 nu3 - 6 cusps is 12g with g a nonneg integer,
    for random determinant-surjective subgroups containing -I."""
    rng = random.Random(seed)
    levels = [2, 3, 4, 5, 7, 8, 9]
    failures = []
    for i in range(n):
        lvl = levels[i % len(levels)]
        sub = _random_subgroup(rng, lvl)
        prof = genus_profile(sub)
        lhs = 12 + prof.d - 3 * prof.nu2 - 4 * prof.nu3 - 6 * prof.cusps
        if lhs != 12 * prof.genus or prof.genus < 0:
            failures.append("genus formula fails: level %d order %d -> %r"
                            % (lvl, sub.order, prof))
    return failures


def suite_twist_invariance(n=500, seed=4):
    """mod2_image is twist-invariant for all cases; A(E) is checked on a
    slice of them (it is much more expensive)."""
    rng = random.Random(seed)
    failures = []
    serre_checked = 0
    for i in range(n):
        E = _random_curve(rng, span=12)
        d = rng.choice([-1, 2, -2, 3, -3, 5, -5, 6, 7, -7, 10, -11, 13])
        Ed = E.quadratic_twist(d)
        if E.j_invariant != Ed.j_invariant:
            failures.append("twist changed j: %r d=%d" % (E, d))
            continue
        if E.mod2_image() != Ed.mod2_image():
            failures.append("mod2 image not twist-invariant: %r d=%d"
                            % (E, d))
        if serre_checked < 25 and i % 20 == 0:
            try:
                if serre_constant(E) != serre_constant(Ed):
                    failures.append("A(E) not twist-invariant: %r d=%d"
                                    % (E, d))
                serre_checked += 1
            except CMCurveError:
                pass
    return failures


def suite_preimage(n=500, seed=5, height=50):
    """j-map preimage soundness (t is recovered among the preimages of
    j(t)) and, on the low-degree maps, completeness against brute force."""
    rng = random.Random(seed)
    cat = catalog_mod.load()
    maps = [(lab, cat.lookup(lab).j_map) for lab in cat.labels()
            if cat.lookup(lab).j_map is not None]
    brute = {"2B", "2Cn", "3Nn", "4X3", "8X4", "8X5", "4X7"}
    failures = []
    done = 0
    while done < n:
        lab, f = maps[done % len(maps)]
        t = Fraction(rng.randint(-height, height), rng.randint(1, height))
        j = ratfun_eval(f, t)
        done += 1
        if j == INF:
            continue
        pres = ratfun_preimages(f, j)
        if t not in pres:
            failures.append("preimage soundness fails: %s t=%s" % (lab, t))
            continue
        if lab in brute and done % 7 == 0:
            found = {s for s in pres if s != INF
                     and max(abs(s.numerator), s.denominator) <= height}
            scan = set()
            for b in range(1, height + 1):
                for a in range(-height, height + 1):
                    if math.gcd(a, b) == 1:
                        s = Fraction(a, b)
                        if ratfun_eval(f, s) == j:
                            scan.add(s)
            if scan != found:
                failures.append("preimage completeness fails: %s j=%s "
                                "scan=%r found=%r" % (lab, j, scan, found))
    return failures


def suite_closure_lagrange(n=500, seed=6):
    """The closure of random generator sets has order dividing |GL2(Z/n)|
    and containing each generator."""
    rng = random.Random(seed)
    levels = [2, 3, 4, 5, 6, 7, 8, 9, 11, 13]
    failures = []
    for i in range(n):
        lvl = levels[i % len(levels)]
        gens = []
        while len(gens) < rng.randint(1, 2):
            m = tuple(rng.randrange(lvl) for _ in range(4))
            if math.gcd(mat_det(m, lvl), lvl) == 1:
                gens.append(m)
        elems = closure(gens, lvl)
        order = len(elems)
        if gl2_order(lvl) % order != 0:
            failures.append("Lagrange fails: level %d order %d" % (lvl, order))
        sub = Subgroup(lvl, gens)
        if any(g not in sub for g in gens):
            failures.append("closure misses a generator: level %d" % lvl)
    return failures


ALL_SUITES = [
    ("Hasse bound", suite_hasse),
    ("c4^3 - c6^2 = 1728 Delta", suite_c4c6),
    ("genus integrality", suite_genus_integrality),
    ("twist invariance of A(E) and mod2 image", suite_twist_invariance),
    ("j-map preimage soundness/completeness", suite_preimage),
    ("closure Lagrange divisibility", suite_closure_lagrange),
]

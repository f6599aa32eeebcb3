"""Acceptance gate: one test (one pass/fail line under ``pytest -v``) per
criterion.  Every assertion here is zero-tolerance."""

from fractions import Fraction

import pytest

import suites
from gl2census import analysis, catalog
from gl2census.ecq import EllipticCurveQ
from gl2census.galimage import adic_level_2, mod_p_image, serre_constant
from gl2census.modcurve import product_profile
from gl2census.ratq import INF, is_rational_square


def _cat():
    return catalog.load()


def _example(label):
    return EllipticCurveQ(*_cat().examples[label], label=label)


def _curve_with_j(j):
    return EllipticCurveQ(0, 0, 0, 3 * j * (1728 - j),
                          2 * j * (1728 - j) ** 2)


def _pair_genus(l1, l2):
    cat = _cat()
    prof = product_profile([cat.lookup(l1).profile, cat.lookup(l2).profile])
    return prof.genus


def test_criterion_1_genus_engine_regression():
    cat = _cat()
    triple = product_profile([cat.lookup(l).profile
                              for l in ("3Nn", "5B", "2B")])
    assert triple.genus == 2
    assert cat.lookup("13S4").profile.genus == 3
    assert cat.lookup("13Nn").profile.genus == 3
    assert cat.lookup("13Ns").profile.genus == 3
    assert _pair_genus("8X4", "13B") == 1
    assert _pair_genus("4X7", "13B") == 3
    assert _pair_genus("4X7", "7B") == 2
    assert _pair_genus("8X5", "7Ns") == 3
    assert _pair_genus("4X7", "9XE") == 6
    # every pair type with a shipped composed j-map is a genus-0 row
    for l1, l2 in cat.pair_jmaps:
        assert _pair_genus(l1, l2) == 0, (l1, l2)


def test_criterion_2_census_totals_and_histograms():
    rows = analysis.enumerate_exceptional_pairs()  # asserts presieve == 331
    assert len(rows) == 206
    assert max(r.genus for r in rows) == 246
    assert analysis.genus_histogram(rows, cap=20) == {
        0: 12, 1: 25, 2: 14, 3: 15, 4: 12, 5: 8, 6: 5, 7: 9, 8: 7, 9: 7,
        10: 2, 11: 2, 13: 4, 14: 5, 15: 4, 16: 3, 18: 1, 19: 6, 20: 65}
    adic = analysis.enumerate_adic_pairs()
    assert len(adic) == 54
    assert max(r.genus for r in adic) == 111
    assert analysis.genus_histogram(adic, cap=1000) == {
        0: 10, 1: 15, 2: 6, 3: 7, 4: 2, 6: 2, 7: 3, 8: 1, 10: 1, 13: 1,
        14: 1, 18: 1, 26: 1, 40: 1, 54: 1, 111: 1}


def test_criterion_3_serre_constants():
    assert serre_constant(_example("50a1")) == 120
    assert serre_constant(_example("3891b1")) == 1
    for j in _cat().lookup("13S4").j_list:
        assert serre_constant(_curve_with_j(j)) == 13


def test_criterion_4_per_prime_images():
    cat = _cat()
    E = _example("50a1")
    assert mod_p_image(E, 3).label == "3B.1.2"
    assert mod_p_image(E, 5).label == "5B.1.3"
    level2, label2 = adic_level_2(E)
    assert (level2, label2) == (3, "8X4")
    # the Delta = -2 t^2 cross-check: -Delta/2 is a square
    assert is_rational_square(-E.discriminant / 2)
    # every example curve attached to a catalog record classifies to that
    # record's label (compared at the +- level for fine labels)
    for lab in cat.labels():
        rec = cat.lookup(lab)
        if rec.example_curve is None:
            continue
        E = _example(rec.example_curve)
        if rec.family == "adic":
            assert adic_level_2(E)[1] == lab, lab
            continue
        p = 3 if rec.level % 3 == 0 else 5
        got = mod_p_image(E, p).label
        got_pm = cat.lookup(got).pm_label or got if got != "GL2" else got
        want_pm = rec.pm_label or lab
        assert got == lab or got_pm == want_pm, (lab, got)


def test_criterion_5_point_search():
    pts = analysis.search_triple_fixture(100)
    assert {p.coordinates for p in pts} == {
        (Fraction(0), Fraction(1)), (Fraction(0), Fraction(-1)),
        (INF, Fraction(1)), (INF, Fraction(-1))}
    assert all(p.cusp_flag for p in pts)
    s1 = analysis.search_s1_fixture(100)
    # S_1: x in {0, 3/4, 2} and the two points at infinity.  (The x = 2
    # point is a Weierstrass point, so the set has 7 distinct points; the
    # quoted count of 8 double-counts it -- see the decisions ledger.)
    assert {p.coordinates for p in s1} == {
        (Fraction(0), Fraction(2)), (Fraction(0), Fraction(-2)),
        (Fraction(3, 4), Fraction(25, 32)),
        (Fraction(3, 4), Fraction(-25, 32)),
        (Fraction(2), Fraction(0)),
        (INF, Fraction(2)), (INF, Fraction(-2))}


def test_criterion_6_a_infinity():
    assert analysis.compute_a_infinity() == set(
        list(range(1, 16)) + [20, 21, 24, 28, 40, 56, 104])
    types = {t for t, _ in analysis.verify_phantom_identities()}
    assert types == {("8X5", "3Nn"), ("3Nn", "5S4")}


def test_criterion_7_property_suites():
    failed = {}
    for name, fn in suites.ALL_SUITES:
        failures = fn()
        if failures:
            failed[name] = failures[:3]
    assert not failed, failed

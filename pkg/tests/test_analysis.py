from fractions import Fraction

import pytest

from gl2census import analysis, catalog
from gl2census.ratq import INF

MOD_P_HISTOGRAM = {0: 12, 1: 25, 2: 14, 3: 15, 4: 12, 5: 8, 6: 5, 7: 9,
                   8: 7, 9: 7, 10: 2, 11: 2, 13: 4, 14: 5, 15: 4, 16: 3,
                   18: 1, 19: 6, 20: 65}
ADIC_HISTOGRAM = {0: 10, 1: 15, 2: 6, 3: 7, 4: 2, 6: 2, 7: 3, 8: 1, 10: 1,
                  13: 1, 14: 1, 18: 1, 26: 1, 40: 1, 54: 1, 111: 1}


@pytest.fixture(scope="module")
def mod_p_rows():
    return analysis.enumerate_exceptional_pairs()


@pytest.fixture(scope="module")
def adic_rows():
    return analysis.enumerate_adic_pairs()


class TestSieve:
    def test_admissible_oracles(self):
        assert not analysis.admissible_pair("5B", "7B")  # 35-isogeny
        assert analysis.admissible_pair("2B", "3B")      # X_0(6)
        assert analysis.admissible_pair("2Cn", "3Nn")    # no lines at all
        with pytest.raises(ValueError):
            analysis.admissible_pair("5B", "5Cs")

    def test_fine_label_torsion_clause(self):
        # both fine Borels force rational torsion; 3 * 5 = 15-torsion is
        # beyond Mazur's list
        assert not analysis.admissible_pair("3B.1.1", "5B.1.1")


class TestCensuses:
    def test_mod_p_census(self, mod_p_rows):
        assert len(mod_p_rows) == 206
        assert max(r.genus for r in mod_p_rows) == 246
        assert analysis.genus_histogram(mod_p_rows, cap=20) == MOD_P_HISTOGRAM

    def test_adic_census(self, adic_rows):
        assert len(adic_rows) == 54
        assert max(r.genus for r in adic_rows) == 111
        assert analysis.genus_histogram(adic_rows, cap=1000) == ADIC_HISTOGRAM

    def test_marked_pairs(self, adic_rows):
        genera = {frozenset(r.labels): r.genus for r in adic_rows}
        assert genera[frozenset(("8X4", "13B"))] == 1
        assert genera[frozenset(("4X7", "13B"))] == 3
        assert genera[frozenset(("4X7", "7B"))] == 2
        assert genera[frozenset(("8X5", "7Ns"))] == 3
        assert genera[frozenset(("4X7", "9XE"))] == 6


class TestTriples:
    def test_unique_triple(self):
        triples = analysis.triple_scan()
        assert len(triples) == 1
        (row,) = triples
        assert set(row.labels) == {"2B", "3Nn", "5B"}
        assert row.genus == 2


class TestAInfinity:
    def test_exact_set(self):
        assert analysis.compute_a_infinity() == set(
            list(range(1, 16)) + [20, 21, 24, 28, 40, 56, 104])

    def test_phantoms_justified(self):
        checked = analysis.verify_phantom_identities()
        types = {t for t, _ in checked}
        assert ("8X5", "3Nn") in types
        assert ("3Nn", "5S4") in types

    def test_35_not_in_set(self):
        assert 35 not in analysis.compute_a_infinity()


class TestPointSearch:
    def test_triple_sextic(self):
        pts = analysis.search_triple_fixture(100)
        coords = {p.coordinates for p in pts}
        assert coords == {(Fraction(0), Fraction(1)),
                          (Fraction(0), Fraction(-1)),
                          (INF, Fraction(1)), (INF, Fraction(-1))}
        assert all(p.cusp_flag for p in pts)

    def test_s1_sextic(self):
        pts = analysis.search_s1_fixture(100)
        xs = sorted({p.coordinates[0] for p in pts}, key=str)
        assert set(xs) == {Fraction(0), Fraction(3, 4), Fraction(2), INF}
        assert len(pts) == 7  # (2, 0) is a single (Weierstrass) point
        assert not any(p.cusp_flag for p in pts)

    def test_exactness(self):
        cat = catalog.load()
        for p in analysis.search_s1_fixture(10):
            x, y = p.coordinates
            if x is not INF and x != INF:
                assert y * y == cat.s1_sextic(x)

    def test_plane_model_linear(self):
        from gl2census.ratq import PlaneModel
        m = PlaneModel({(1, 0): Fraction(1), (0, 1): Fraction(-1)})
        pts = analysis.bounded_point_search(m, 3)
        assert all(p.coordinates[0] == p.coordinates[1] for p in pts)
        assert (Fraction(2, 3), Fraction(2, 3)) in {p.coordinates
                                                    for p in pts}

    def test_bad_height(self):
        with pytest.raises(ValueError):
            analysis.bounded_point_search(catalog.load().s1_sextic, 0)


class TestCrossReference:
    def test_7ns_j(self):
        out = analysis.cross_reference_j(Fraction(2268945, 128))
        assert "7Ns.3.1" in out["labels"]

    def test_pair_map_hit(self):
        out = analysis.cross_reference_j(Fraction(-27 * 1331, 4))
        assert ["4X3", "3B"] in out["pair_types"]
        assert "3B" in out["labels"] and "4X3" in out["labels"]

    def test_cm_flagged(self):
        out = analysis.cross_reference_j(Fraction(0))
        assert out["cm"] is True and out["labels"] == []

    def test_11nn_reported_unavailable(self):
        out = analysis.cross_reference_j(Fraction(5))
        assert any("11Nn" in u for u in out["unavailable"])

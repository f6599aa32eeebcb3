from fractions import Fraction

import pytest

from gl2census import catalog


@pytest.fixture(scope="module")
def cat():
    return catalog.load()


class TestLoadAndValidate:
    def test_level_counts(self, cat):
        counts = {}
        for lab in cat.labels(family="mod_p") + cat.labels(family="adic"):
            rec = cat.lookup(lab)
            counts[rec.level] = counts.get(rec.level, 0) + 1
        assert counts == {2: 3, 3: 4, 4: 2, 5: 9, 7: 6, 8: 2, 9: 1,
                          11: 1, 13: 6}

    def test_maximal_set(self, cat):
        maximal = {l for l in cat.labels(family="mod_p")
                   if cat.lookup(l).maximal}
        assert maximal == set(catalog.MAXIMAL_MOD_P)

    def test_unknown_label_suggests(self, cat):
        with pytest.raises(catalog.CatalogError) as e:
            cat.lookup("5b")
        assert "5B" in str(e.value)

    def test_group_orders(self, cat):
        # frozen orders at level 5 and 7
        for lab, order in [("5B", 80), ("5B.4.1", 40), ("5B.4.2", 40),
                           ("5Cs", 16), ("5Ns", 32), ("5Nn", 48),
                           ("5S4", 96), ("7B", 252), ("7Ns", 72),
                           ("7Nn", 96), ("13B", 1872)]:
            assert cat.lookup(lab).group.order == order, lab


class TestProfiles:
    def test_excluded_level13_profiles(self, cat):
        assert cat.lookup("13S4").profile.genus == 3
        assert cat.lookup("13Nn").profile.genus == 3
        assert cat.lookup("13Ns").profile.genus == 3

    def test_level9_profile(self, cat):
        prof = cat.lookup("9XE").profile
        assert (prof.d, prof.nu2, prof.nu3, prof.cusps, prof.genus) == \
            (27, 3, 3, 3, 0)
        assert tuple(prof.cusp_widths) == (9, 9, 9)


class TestFineLabels:
    def test_signatures(self, cat):
        assert cat.lookup("3B.1.1").signature == (1, 2)
        assert cat.lookup("3B.1.2").signature == (2, 1)
        assert cat.lookup("5B.1.1").signature == (1, 4)
        assert cat.lookup("5B.1.2").signature == (2, 4)
        assert cat.lookup("5B.1.3").signature == (4, 2)
        assert cat.lookup("5B.1.4").signature == (4, 1)

    def test_pm_labels(self, cat):
        assert cat.lookup("3B.1.1").pm_label == "3B"
        assert cat.lookup("5B.1.1").pm_label == "5B.4.2"
        assert cat.lookup("5B.1.3").pm_label == "5B.4.1"

    def test_fine_groups_lack_minus_I(self, cat):
        for lab in ("3B.1.1", "3B.1.2", "5B.1.1", "5B.1.2", "5B.1.3",
                    "5B.1.4"):
            assert not cat.lookup(lab).contains_minus_I


class TestJMaps:
    def test_known_jmaps_evaluate(self, cat):
        from gl2census.ratq import ratfun_eval
        # j-map of the level-2 Borel curve: (t+256)^3 / t^2, so
        # f(256) = 512^3 / 256^2 = 2^27 / 2^16 = 2048
        f = cat.lookup("2B").j_map
        assert ratfun_eval(f, Fraction(256)) == 2048
        f3 = cat.lookup("3Nn").j_map
        assert ratfun_eval(f3, Fraction(-4)) == Fraction(-64)

    def test_finite_lists(self, cat):
        assert len(cat.finite_j_list("13S4")) == 3
        assert cat.finite_j_list("7Ns.3.1") == [Fraction(2268945, 128)]
        assert cat.finite_j_list("11B.10.4") == [Fraction(-121)]
        with pytest.raises(catalog.CatalogError):
            cat.finite_j_list("3B")

    def test_eleven_nn_unavailable(self, cat):
        with pytest.raises(catalog.CatalogError):
            cat.eleven_nn_membership(Fraction(1))


class TestFixtures:
    def test_cm_set(self, cat):
        cm = cat.cm_j_invariants()
        assert len(cm) == 13
        assert Fraction(0) in cm and Fraction(1728) in cm
        assert Fraction(-262537412640768000) in cm

    def test_allowed_isogeny_degrees(self, cat):
        assert cat.allowed_isogeny_degrees == frozenset(
            list(range(1, 14)) + [15, 16, 17, 18, 21, 25, 37])

    def test_census_row_counts(self, cat):
        assert len(cat.pairs_mod_p) == 206
        assert len(cat.pairs_adic) == 54

    def test_part_a_counts(self, cat):
        assert len(cat.part_a["mod_p"]) == 15
        assert len(cat.part_a["adic"]) == 14

    def test_examples(self, cat):
        assert cat.examples["50a1"] == (1, 0, 1, -126, -552)
        assert set(cat.examples) == {"50a1", "3891b1", "t3n", "t5n"}

import pytest

from gl2census.modmatrix import (Subgroup, closure, crt_product, full_group,
                                 gl2_order, is_conjugate, sl2_order)


class TestOrders:
    def test_gl2_orders(self):
        # |GL2(Z/p)| = (p^2-1)(p^2-p)
        assert gl2_order(2) == 6
        assert gl2_order(3) == 48
        assert gl2_order(5) == 480
        assert gl2_order(7) == 2016
        # prime powers and composites
        assert gl2_order(4) == 96
        assert gl2_order(8) == 1536  # 6 * 16^2
        assert gl2_order(9) == 3888
        assert gl2_order(6) == gl2_order(2) * gl2_order(3)

    def test_sl2_orders(self):
        assert sl2_order(2) == 6
        assert sl2_order(3) == 24
        assert sl2_order(5) == 120


class TestClosure:
    def test_full_group(self):
        for n in (2, 3, 4, 5):
            assert full_group(n).order == gl2_order(n)

    def test_borel_mod5(self):
        b = Subgroup(5, [(1, 1, 0, 1), (2, 0, 0, 1), (1, 0, 0, 2)])
        assert b.order == 80  # p(p-1)^2
        assert b.contains_minus_identity()
        assert b.det_surjective()
        assert len(b.stable_lines()) == 1

    def test_split_cartan_lines(self):
        c = Subgroup(5, [(2, 0, 0, 1), (1, 0, 0, 2)])
        assert len(c.stable_lines()) == 2

    def test_fixed_points_of_unipotent(self):
        u = Subgroup(5, [(1, 1, 0, 1)])
        fixed = u.fixed_points()
        assert (1, 0) in fixed and (2, 0) in fixed


class TestConjugacy:
    def test_conjugate_borels(self):
        upper = Subgroup(3, [(1, 1, 0, 1), (2, 0, 0, 1), (1, 0, 0, 2)])
        lower = Subgroup(3, [(1, 0, 1, 1), (2, 0, 0, 1), (1, 0, 0, 2)])
        assert is_conjugate(upper, lower)

    def test_not_conjugate(self):
        borel = Subgroup(3, [(1, 1, 0, 1), (2, 0, 0, 1), (1, 0, 0, 2)])
        cartan = Subgroup(3, [(2, 0, 0, 1), (1, 0, 0, 2)])
        assert not is_conjugate(borel, cartan)


class TestCrtProduct:
    def test_order_multiplies(self):
        g2 = full_group(2)
        g3 = full_group(3)
        prod = crt_product(g2, g3)
        assert prod.n == 6
        assert prod.order == g2.order * g3.order

    def test_projection(self):
        g6 = crt_product(full_group(2), full_group(3))
        assert g6.project(2).order == 6
        assert g6.project(3).order == 48

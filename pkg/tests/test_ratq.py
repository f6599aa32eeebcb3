from fractions import Fraction

import pytest

from gl2census.ratq import (INF, PlaneModel, Polynomial, RationalFunction,
                            is_rational_cube, is_rational_square,
                            poly_rational_roots, ratfun_eval,
                            ratfun_preimages, rational_sqrt)


F = Fraction


class TestPolynomial:
    def test_arithmetic(self):
        x = Polynomial.x()
        p = (x + 1) * (x - 2)
        assert list(p.coeffs) == [F(-2), F(-1), F(1)]
        assert p(F(2)) == 0 and p(F(3)) == 4
        q, r = divmod(p, x + 1)
        assert q == x - 2 and r.is_zero()

    def test_degree_and_derivative(self):
        p = Polynomial([1, 0, 3])
        assert p.degree == 2
        assert p.derivative() == Polynomial([0, 6])

    def test_rational_roots_oracles(self):
        assert poly_rational_roots(Polynomial([6, 5, 1])) == [F(-3), F(-2)]
        assert poly_rational_roots(Polynomial([0, 0, 1])) == [F(0)]
        # 2x^2 - 3x + 1 = (2x - 1)(x - 1)
        assert poly_rational_roots(Polynomial([1, -3, 2])) == [F(1, 2), F(1)]
        # irreducible
        assert poly_rational_roots(Polynomial([1, 1, 1])) == []
        with pytest.raises(ValueError):
            poly_rational_roots(Polynomial([0]))

    def test_rational_roots_huge_coefficients(self):
        # (x - N)(x + 1) with a 60-digit N must not require factoring N
        N = 10 ** 60 + 7
        p = Polynomial([-N, -N + 1, 1])
        assert poly_rational_roots(p) == [F(-1), F(N)]


class TestSquares:
    def test_squares(self):
        assert is_rational_square(F(49, 81))
        assert not is_rational_square(F(-4))
        assert not is_rational_square(F(8))
        assert rational_sqrt(F(49, 81)) == F(7, 9)

    def test_cubes(self):
        assert is_rational_cube(F(-27, 8))
        assert not is_rational_cube(F(4))


class TestRationalFunction:
    def test_eval_and_infinity(self):
        f = RationalFunction(Polynomial([0, 0, 0, 1]))  # t^3
        assert ratfun_eval(f, F(2)) == 8
        assert ratfun_eval(f, INF) == INF
        g = RationalFunction(Polynomial([1]), Polynomial([0, 1]))  # 1/t
        assert ratfun_eval(g, F(0)) == INF

    def test_preimages(self):
        f = RationalFunction(Polynomial([0, 0, 0, 1]))  # t^3
        assert ratfun_preimages(f, F(-64)) == [F(-4)]
        assert ratfun_preimages(f, F(2)) == []
        assert INF in ratfun_preimages(f, INF)

    def test_compose(self):
        f = RationalFunction(Polynomial([0, 0, 1]))  # t^2
        g = RationalFunction(Polynomial([1, 1]))     # t + 1
        h = f.compose(g)
        assert ratfun_eval(h, F(3)) == 16


class TestPlaneModel:
    def test_section(self):
        # x - y = 0
        m = PlaneModel({(1, 0): F(1), (0, 1): F(-1)})
        sect = m.section_in_x(F(5))
        assert poly_rational_roots(sect) == [F(5)]

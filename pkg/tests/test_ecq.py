from fractions import Fraction

import pytest

from gl2census.ecq import (BadPrimeError, EllipticCurveQ, SingularCurveError,
                           division_polynomial, trace_of_frobenius_short)
from gl2census.ratq import Polynomial


def curve_50a1():
    return EllipticCurveQ(1, 0, 1, -126, -552, label="50a1")


class TestInvariants:
    def test_50a1(self):
        E = curve_50a1()
        assert E.discriminant == -5000
        assert E.j_invariant == Fraction(-349938025, 8)
        assert E.c4 ** 3 - E.c6 ** 2 == 1728 * E.discriminant

    def test_singular_rejected(self):
        with pytest.raises(SingularCurveError):
            EllipticCurveQ(0, 0, 0, 0, 0)
        with pytest.raises(SingularCurveError):
            EllipticCurveQ(0, 0, 0, -3, 2)  # (x-1)^2(x+2)

    def test_b_invariants(self):
        E = EllipticCurveQ(1, 2, 3, 4, 5)
        assert E.b2 == 9
        assert E.b4 == 11
        assert E.b6 == 29
        assert E.b8 == 35
        assert 4 * E.b8 == E.b2 * E.b6 - E.b4 ** 2


class TestModels:
    def test_short_model_same_j(self):
        E = curve_50a1()
        A, B = E.integral_short_model()
        Es = EllipticCurveQ(0, 0, 0, A, B)
        assert Es.j_invariant == E.j_invariant

    def test_twist(self):
        E = curve_50a1()
        Et = E.quadratic_twist(-6)
        assert Et.j_invariant == E.j_invariant
        assert Et.discriminant != E.discriminant
        with pytest.raises(ValueError):
            E.quadratic_twist(0)
        with pytest.raises(ValueError):
            E.quadratic_twist(4)


class TestFrobenius:
    def test_known_traces_level11_curve(self):
        # the conductor-11 curve with a rational 5-torsion point; its
        # L-series coefficients are classical
        E = EllipticCurveQ(0, -1, 1, 0, 0)
        assert E.trace_of_frobenius(3) == -1
        assert E.trace_of_frobenius(5) == 1
        assert E.trace_of_frobenius(7) == -2
        assert E.trace_of_frobenius(13) == 4

    def test_bad_prime_rejected(self):
        E = EllipticCurveQ(0, -1, 1, 0, 0)  # conductor 11
        with pytest.raises(BadPrimeError):
            E.trace_of_frobenius(11)
        with pytest.raises(BadPrimeError):
            E.trace_of_frobenius(9)

    def test_char_sum_direct(self):
        # y^2 = x^3 + x over F_5: supersingular-style count, a_5 via sum
        a = trace_of_frobenius_short(1, 0, 5)
        assert a * a <= 20

    def test_cache_roundtrip(self, tmp_path, monkeypatch):
        import gl2census.ecq as ecq
        monkeypatch.setenv("GL2CENSUS_TRACE_CACHE",
                           str(tmp_path / "traces.txt"))
        monkeypatch.setattr(ecq, "_trace_cache_mem", None)
        E = EllipticCurveQ(0, -1, 1, 0, 0)
        a = E.trace_of_frobenius(13)
        assert (tmp_path / "traces.txt").exists()
        monkeypatch.setattr(ecq, "_trace_cache_mem", None)
        assert E.trace_of_frobenius(13) == a == 4


class TestTorsionStructure:
    def test_mod2_labels(self):
        # full rational 2-torsion: y^2 = x(x-1)(x+1)
        assert EllipticCurveQ(0, 0, 0, -1, 0).mod2_image() == "2Cs"
        # one rational 2-torsion point: y^2 = x^3 + x^2 - x  (disc nonsquare
        # cubic with a single rational root)
        assert EllipticCurveQ(0, 1, 0, -1, 0).mod2_image() == "2B"
        # 50a1: irreducible 2-division cubic, Delta = -5000 nonsquare
        assert curve_50a1().mod2_image() == "GL2"

    def test_division_polynomial_psi3(self):
        psi3 = division_polynomial(-1, 0, 3)  # y^2 = x^3 - x
        assert psi3 == Polynomial([-1, 0, -6, 0, 3])  # 3x^4 + 6Ax^2 - A^2

    def test_kernel_polynomials_50a1(self):
        E = curve_50a1()
        assert E.isogeny_kernel_polynomials(3) == [Polynomial([225, 1])]
        assert E.isogeny_kernel_polynomials(5) == [
            Polynomial([36405, 390, 1])]
        assert E.isogeny_kernel_polynomials(7) == []

    def test_line_counts(self):
        E = curve_50a1()
        assert E.rational_isogeny_line_count(3) == 1
        assert E.rational_isogeny_line_count(5) == 1
        assert E.rational_isogeny_line_count(7) == 0

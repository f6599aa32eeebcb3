"""Elliptic curves over Q in exact arithmetic.

Provides Weierstrass invariants, quadratic twists, short models, traces of
Frobenius at good primes (with an append-only disk cache), division
polynomials, the mod-2 image, and detection of rational p-isogeny kernel
polynomials -- everything the image classifier needs from the curve side.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import sympy

from .ratq import Polynomial, is_rational_square, poly_rational_roots

__all__ = [
    "EllipticCurveQ", "SingularCurveError", "BadPrimeError",
    "trace_of_frobenius_short", "division_polynomial",
]


class SingularCurveError(ValueError):
    """The given coefficients define a singular cubic."""


class BadPrimeError(ValueError):
    """Trace of Frobenius requested at a prime of bad reduction."""


def _cache_path():
    return os.environ.get(
        "GL2CENSUS_TRACE_CACHE",
        os.path.join(os.path.expanduser("~"), ".gl2census_traces"))


def trace_of_frobenius_short(a, b, ell):
    """a_ell for y^2 = x^3 + a x + b over F_ell (ell an odd good prime),
    by the quadratic-character sum: a_ell = -sum_x chi(x^3 + a x + b)."""
    a %= ell
    b %= ell
    total = 0
    half = (ell - 1) // 2
    for x in range(ell):
        v = (x * x % ell * x + a * x + b) % ell
        if v == 0:
            continue
        total += 1 if pow(v, half, ell) == 1 else -1
    t = -total
    assert t * t <= 4 * ell, "Hasse bound violated; bad char-sum input"
    return t


@lru_cache(maxsize=None)
def division_polynomial(A, B, m):
    """m-th division polynomial of y^2 = x^3 + A x + B as a univariate
    Polynomial in x (the usual convention: for even m the factor 2y is
    removed, so psi_m here is y-free)."""
    A = Fraction(A)
    B = Fraction(B)
    x = Polynomial([0, 1])
    f = x**3 + Polynomial([A]) * x + Polynomial([B])  # y^2

    def psi(k):
        return _psi_table(A, B, f, k)

    return psi(m)


def _psi_table(A, B, f, m):
    # b_m recurrence with y^2 -> f substituted; see Silverman III.
    table = {}

    def get(k):
        if k in table:
            return table[k]
        x = Polynomial([0, 1])
        # b_k = psi_k / y^(k+1 mod 2); note b_2 = 2 in this convention.
        if k == 0:
            v = Polynomial([0])
        elif k == 1:
            v = Polynomial([1])
        elif k == 2:
            v = Polynomial([2])
        elif k == 3:
            v = (Polynomial([3]) * x**4 + Polynomial([6 * A]) * x**2
                 + Polynomial([12 * B]) * x + Polynomial([-A * A]))
        elif k == 4:
            v = Polynomial([4]) * (
                x**6 + Polynomial([5 * A]) * x**4
                + Polynomial([20 * B]) * x**3 + Polynomial([-5 * A * A]) * x**2
                + Polynomial([-4 * A * B]) * x
                + Polynomial([Fraction(-8) * B * B - A**3]))
        elif k % 2 == 1:
            n = (k - 1) // 2
            t1 = get(n + 2) * get(n) ** 3
            t2 = get(n - 1) * get(n + 1) ** 3
            if n % 2 == 0:
                v = f * f * t1 - t2
            else:
                v = t1 - f * f * t2
        else:
            n = k // 2
            v = get(n) * (get(n + 2) * get(n - 1) ** 2
                          - get(n - 2) * get(n + 1) ** 2)
            v = v * Polynomial([Fraction(1, 2)])
        table[k] = v
        return v

    return get(m)


@dataclass(frozen=True)
class EllipticCurveQ:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with rational ai."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction
    label: Optional[str] = None

    def __init__(self, a1, a2, a3, a4, a6, label=None):
        for name, v in zip("a1 a2 a3 a4 a6".split(),
                           (a1, a2, a3, a4, a6)):
            object.__setattr__(self, name, Fraction(v))
        object.__setattr__(self, "label", label)
        if self.discriminant == 0:
            raise SingularCurveError(
                "discriminant is zero: the equation is singular")
        assert self.c4 ** 3 - self.c6 ** 2 == 1728 * self.discriminant

    # ------------------------------------------------------------ invariants
    @property
    def b2(self):
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self):
        return (self.a1 ** 2 * self.a6 + 4 * self.a2 * self.a6
                - self.a1 * self.a3 * self.a4 + self.a2 * self.a3 ** 2
                - self.a4 ** 2)

    @property
    def c4(self):
        return self.b2 ** 2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        return (-self.b2 ** 2 * self.b8 - 8 * self.b4 ** 3
                - 27 * self.b6 ** 2 + 9 * self.b2 * self.b4 * self.b6)

    @property
    def j_invariant(self):
        return self.c4 ** 3 / self.discriminant

    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # ------------------------------------------------------------ models
    def short_model(self):
        """(A, B) with y^2 = x^3 + A x + B isomorphic over Q:
        A = -27 c4, B = -54 c6."""
        return (-27 * self.c4, -54 * self.c6)

    def integral_short_model(self):
        """Integral (A, B) for the short model, minimal over the u^4/u^6
        rescalings by rational u built from the denominators."""
        A, B = self.short_model()
        d = _lcm(A.denominator, B.denominator)
        u2 = _min_u2(A * d ** 2, B * d ** 3, d)
        A, B = A * u2 ** 2, B * u2 ** 3
        assert A.denominator == 1 and B.denominator == 1
        return int(A), int(B)

    def quadratic_twist(self, d):
        """Twist by a nonzero squarefree integer d."""
        d = int(d)
        if d == 0:
            raise ValueError("twist parameter must be nonzero")
        if d != _squarefree_part(d):
            raise ValueError("twist parameter must be squarefree")
        A, B = self.short_model()
        return EllipticCurveQ(0, 0, 0, A * d ** 2, B * d ** 3)

    def two_division_polynomial(self):
        """The cubic 4x^3 + b2 x^2 + 2 b4 x + b6 whose roots are the
        x-coordinates of the 2-torsion."""
        return Polynomial([self.b6, 2 * self.b4, self.b2, 4])

    # ------------------------------------------------------------ reduction
    def integral_model(self):
        """u-rescaled a-invariants (u a1, u^2 a2, ..., u^6 a6) that are all
        integers, as a tuple of ints."""
        u = 1
        for i, a in zip((1, 2, 3, 4, 6), self.ainvs()):
            d = a.denominator
            while (u ** i) % d != 0:
                u *= _smallest_nonclearing_factor(u ** i, d)
        out = tuple(int(a * Fraction(u) ** i)
                    for i, a in zip((1, 2, 3, 4, 6), self.ainvs()))
        return out

    def _integral_disc(self):
        a1, a2, a3, a4, a6 = self.integral_model()
        E = EllipticCurveQ(a1, a2, a3, a4, a6)
        return int(E.discriminant)

    def has_good_reduction(self, ell):
        """Whether the given model has good reduction at ell (a non-minimal
        model may report bad reduction at a prime of good reduction)."""
        return self._integral_disc() % ell != 0

    def trace_of_frobenius(self, ell, cache=True):
        """a_ell at an odd prime ell of good reduction, by the
        quadratic-character sum over the completed-square model
        (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6."""
        if ell == 2 or not _is_prime(ell):
            raise BadPrimeError("need an odd prime, got %d" % ell)
        if not self.has_good_reduction(ell):
            raise BadPrimeError("bad reduction at %d" % ell)
        ai = self.integral_model()
        key = "%s,%d" % (".".join(str(a) for a in ai), ell)
        if cache:
            cached = _trace_cache().get(key)
            if cached is not None:
                return cached
        a1, a2, a3, a4, a6 = ai
        b2 = (a1 * a1 + 4 * a2) % ell
        b4 = (2 * a4 + a1 * a3) % ell
        b6 = (a3 * a3 + 4 * a6) % ell
        half = (ell - 1) // 2
        total = 0
        for x in range(ell):
            v = (((4 * x + b2) * x + 2 * b4) * x + b6) % ell
            if v == 0:
                continue
            total += 1 if pow(v, half, ell) == 1 else -1
        t = -total
        assert t * t <= 4 * ell, "Hasse bound violated; bad char-sum input"
        if cache:
            _trace_cache_append(key, t)
        return t

    def good_primes(self, bound, start=3):
        disc = self._integral_disc()
        return [ell for ell in _primes_below(bound)
                if ell >= start and disc % ell != 0]

    # ------------------------------------------------------------ structure
    def is_cm(self, cm_j_set):
        return self.j_invariant in cm_j_set

    def mod2_image(self):
        """Label of the mod-2 image: 2Cs (full 2-torsion), 2B (one rational
        2-torsion point), 2Cn (irreducible cubic, square discriminant), or
        GL2 (surjective)."""
        cubic = self.two_division_polynomial()
        roots = poly_rational_roots(cubic)
        if len(roots) >= 2:
            return "2Cs"
        if len(roots) == 1:
            return "2B"
        if is_rational_square(self.discriminant):
            return "2Cn"
        return "GL2"

    def division_poly(self, p):
        A, B = self.integral_short_model()
        return division_polynomial(A, B, p)

    def isogeny_kernel_polynomials(self, p):
        """Monic rational polynomials of degree (p-1)/2 cutting out the
        x-coordinates of the kernel of a rational p-isogeny (p an odd prime).
        Deterministic: factor the p-division polynomial over Q and take
        products of factors of total degree (p-1)/2 that are stable under
        the doubling map."""
        assert p % 2 == 1 and _is_prime(p)
        A, B = self.integral_short_model()
        psi = division_polynomial(A, B, p)
        half = (p - 1) // 2
        x = sympy.Symbol("x")
        expr = sum(sympy.Rational(c) * x ** i
                   for i, c in enumerate(psi.coeffs))
        factors = [f for f, mult in sympy.factor_list(expr)[1]
                   for _ in range(mult)]
        out = []
        seen = set()
        for subset in _subsets_with_degree(factors, half, x):
            g = sympy.expand(sympy.prod(subset))
            key = sympy.srepr(sympy.Poly(g, x).monic().as_expr())
            if key in seen:
                continue
            seen.add(key)
            if _doubling_stable(g, A, B, x):
                out.append(_poly_from_sympy(sympy.Poly(g, x).monic()))
        return out

    def rational_isogeny_line_count(self, p):
        """Number of rational p-isogenies (stable lines of the mod-p
        representation defined over Q), capped at 2: 0, 1, or 2+."""
        return min(len(self.isogeny_kernel_polynomials(p)), 2)

    def __repr__(self):
        tag = self.label or "E"
        return "EllipticCurveQ(%s: %s)" % (
            tag, ",".join(str(a) for a in self.ainvs()))


# --------------------------------------------------------------------- helpers

def _subsets_with_degree(factors, target, x):
    """All sub-multisets of the factor list with total degree == target."""
    degs = [sympy.degree(f, x) for f in factors]

    def rec(i, remaining, chosen):
        if remaining == 0:
            yield list(chosen)
            return
        if i == len(factors) or remaining < 0:
            return
        yield from rec(i + 1, remaining, chosen)
        chosen.append(factors[i])
        yield from rec(i + 1, remaining - degs[i], chosen)
        chosen.pop()

    yield from rec(0, target, [])


def _doubling_stable(g, A, B, x):
    """Whether V(g) (as a set of x-coordinates) is stable under point
    doubling on y^2 = x^3 + A x + B: check that the numerator of
    g(x(2P)) vanishes mod g."""
    f = x ** 3 + A * x + B
    num_x2 = (x ** 2 - A) ** 2 - 8 * B * x  # x(2P) = num / (4f)
    den_x2 = 4 * f
    d = sympy.degree(g, x)
    gp = sympy.Poly(g, x)
    acc = sympy.Integer(0)
    for i, c in enumerate(reversed(gp.all_coeffs())):
        acc += c * num_x2 ** i * den_x2 ** (d - i)
    rem = sympy.rem(sympy.expand(acc), g, x)
    return sympy.simplify(rem) == 0


def _poly_from_sympy(poly):
    return Polynomial([Fraction(str(c))
                       for c in reversed(poly.all_coeffs())])


def _lcm(a, b):
    return abs(a * b) // math.gcd(a, b)


def _smallest_nonclearing_factor(power, den):
    """Smallest prime factor of den not yet cleared by power."""
    rem = den // math.gcd(power, den)
    for p, _ in sympy.factorint(rem).items():
        return p
    raise AssertionError("denominator already cleared")


def _min_u2(A, B, d):
    """Smallest positive rational u^2 = (d * s)^2-free scale making
    (A u^4, B u^6) integral and not obviously non-minimal: start from the
    clearing denominator d and strip shared 12th-power content."""
    u2 = Fraction(d) ** 2
    An, Bn = Fraction(A) / d ** 2 * u2 ** 2, Fraction(B) / d ** 3 * u2 ** 3
    # strip common content q^2 with q^4 | A and q^6 | B
    q = 2
    An, Bn = int(An), int(Bn)
    while q ** 4 <= max(abs(An), 2) or q ** 6 <= max(abs(Bn), 2):
        while ((An == 0 or An % q ** 4 == 0)
               and (Bn == 0 or Bn % q ** 6 == 0)
               and not (An == 0 and Bn == 0)):
            An //= q ** 4
            Bn //= q ** 6
            u2 /= q ** 2
        q += 1
        if q > 1000:
            break
    return u2


def _squarefree_part(n):
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in sympy.factorint(abs(n)).items():
        if e % 2:
            out *= p
    return out


def _is_prime(n):
    return sympy.isprime(n)


def _primes_below(bound):
    return list(sympy.primerange(3, bound))


# ------------------------------------------------------------------ trace cache

_trace_cache_mem = None


def _trace_cache():
    global _trace_cache_mem
    if _trace_cache_mem is None:
        _trace_cache_mem = {}
        path = _cache_path()
        if os.path.exists(path):
            with open(path) as f:
                for line in f:
                    parts = line.strip().split()
                    if len(parts) == 2:
                        _trace_cache_mem[parts[0]] = int(parts[1])
    return _trace_cache_mem


def _trace_cache_append(key, value):
    cache = _trace_cache()
    if key in cache:
        return
    cache[key] = value
    try:
        with open(_cache_path(), "a") as f:
            f.write("%s %d\n" % (key, value))
    except OSError:
        pass  # cache is best-effort

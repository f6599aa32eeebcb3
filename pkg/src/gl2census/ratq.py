"""Exact rational arithmetic: dense polynomials and rational functions over Q.

Everything here is exact (fractions.Fraction); there is no floating point.
Rational-root finding uses the rational root theorem with sympy's integer
factorization for the divisor enumeration.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import sympy

Rational = Fraction

#: marker for the point at infinity of P^1(Q)
INF = "inf"


def _to_frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Polynomial:
    """Dense univariate polynomial with Fraction coefficients, index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [_to_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def const(cls, c):
        return cls([c])

    @property
    def degree(self):
        # degree of the zero polynomial is -1 by convention
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Polynomial(a)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = Polynomial([])
        r = self
        dlead = other.coeffs[-1]
        while not r.is_zero() and r.degree >= other.degree:
            shift = r.degree - other.degree
            c = r.coeffs[-1] / dlead
            term = Polynomial([0] * shift + [c])
            q = q + term
            r = r - term * other
        return q, r

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Polynomial([c / lead for c in self.coeffs])

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self):
        """self / gcd(self, self'), monic."""
        if self.is_zero():
            return self
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def integer_clear(self):
        """Return (primitive integer coefficient list, scale) with self = poly/scale."""
        if self.is_zero():
            return [], Fraction(1)
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        content = 0
        for v in ints:
            content = gcd(content, v)
        ints = [v // content for v in ints]
        return ints, Fraction(den, content)

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "Polynomial(" + " + ".join(terms) + ")"


def _divisors_from_factorization(n):
    """All positive divisors of |n| (n nonzero)."""
    divs = [1]
    for p, e in sympy.factorint(abs(n)).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def poly_rational_roots(poly):
    """All rational roots of poly, by the rational root theorem. Exact.

    Returns a sorted list of distinct Fractions.
    """
    if poly.is_zero():
        raise ValueError("zero polynomial has every root")
    ints, _ = poly.integer_clear()
    roots = set()
    # strip trailing zero coefficients -> root at 0
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        ints = ints[k:]
    if len(ints) > 1:
        # factor over Z (polynomial factorization never needs to factor the
        # huge integer coefficients, unlike the rational-root theorem)
        x = sympy.Symbol("x")
        p = sympy.Poly(list(reversed(ints)), x)
        for f, _ in p.factor_list()[1]:
            if f.degree(x) == 1:
                a, b = (int(c) for c in sympy.Poly(f, x).all_coeffs())
                roots.add(Fraction(-b, a))
    for r in roots:
        assert poly(r) == 0
    return sorted(roots)


def is_rational_square(q):
    """Exact test: is the Fraction q a square in Q?"""
    q = _to_frac(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    return rn * rn == n and rd * rd == d


def rational_sqrt(q):
    """Exact square root of a Fraction, or None."""
    q = _to_frac(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def is_rational_cube(q):
    q = _to_frac(q)
    neg = q < 0
    n, d = abs(q.numerator), q.denominator
    rn = round(n ** (1 / 3)) if n < 1 << 50 else int(sympy.integer_nthroot(n, 3)[0])
    rd = round(d ** (1 / 3)) if d < 1 << 50 else int(sympy.integer_nthroot(d, 3)[0])
    # correct rounding drift
    for cand in (rn - 1, rn, rn + 1):
        if cand >= 0 and cand**3 == n:
            rn = cand
            break
    else:
        return False
    for cand in (rd - 1, rd, rd + 1):
        if cand > 0 and cand**3 == d:
            return True
    return False


class RationalFunction:
    """Quotient of two Polynomials, in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Polynomial([1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den) if not num.is_zero() else den.monic()
        num, den = num // g, den // g
        # normalize: denominator with integer primitive positive lead
        lead = den.coeffs[-1]
        self.num = num * (1 / lead)
        self.den = den * (1 / lead)

    @property
    def degree(self):
        """Degree as a map P^1 -> P^1."""
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __call__(self, x):
        return ratfun_eval(self, x)

    def compose(self, other):
        """self(other(x)) as a RationalFunction."""
        # homogenized evaluation: num(on/od), den(on/od) cleared by od^deg
        deg = max(self.num.degree, self.den.degree)
        on, od = other.num, other.den
        powers_n = [Polynomial([1])]
        powers_d = [Polynomial([1])]
        for _ in range(deg):
            powers_n.append(powers_n[-1] * on)
            powers_d.append(powers_d[-1] * od)
        num_h = Polynomial([])
        for i, c in enumerate(self.num.coeffs):
            num_h = num_h + powers_n[i] * powers_d[deg - i] * c
        den_h = Polynomial([])
        for i, c in enumerate(self.den.coeffs):
            den_h = den_h + powers_n[i] * powers_d[deg - i] * c
        return RationalFunction(num_h, den_h)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


def ratfun_eval(f, x):
    """Evaluate f at x in P^1(Q); x may be INF, result may be INF."""
    if x == INF:
        dn, dd = f.num.degree, f.den.degree
        if dn > dd:
            return INF
        if dn < dd:
            return Fraction(0)
        return f.num.coeffs[-1] / f.den.coeffs[-1]
    n, d = f.num(x), f.den(x)
    if d == 0:
        if n == 0:
            raise ArithmeticError("rational function not in lowest terms")
        return INF
    return n / d


def ratfun_preimages(f, value):
    """All rational t (including INF) with f(t) == value; value may be INF."""
    pre = []
    if value == INF:
        if not f.den.is_zero() and f.den.degree >= 0:
            if f.den.degree > 0:
                pre.extend(poly_rational_roots(f.den))
    else:
        g = f.num - f.den * value
        if g.is_zero():
            raise ValueError("constant map equal to the requested value")
        if g.degree > 0:
            pre.extend(poly_rational_roots(g))
    if ratfun_eval(f, INF) == value:
        pre.append(INF)
    return pre


class PlaneModel:
    """Bivariate integer polynomial sum c[i,j] x^i y^j (a plane curve model)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = {k: Fraction(v) for k, v in coeffs.items() if v != 0}

    @property
    def degrees(self):
        dx = max((i for i, _ in self.coeffs), default=-1)
        dy = max((j for _, j in self.coeffs), default=-1)
        return dx, dy

    def evaluate(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self.coeffs.items())

    def section_in_x(self, y):
        """Substitute the y-value; returns a Polynomial in x."""
        out = {}
        for (i, j), c in self.coeffs.items():
            out[i] = out.get(i, Fraction(0)) + c * y**j
        n = max(out, default=-1)
        return Polynomial([out.get(i, Fraction(0)) for i in range(n + 1)])


def plane_model(f, g):
    """Numerator of f(x) − g(y) as a PlaneModel: fn(x) gd(y) − gn(y) fd(x)."""
    coeffs = {}
    for i, a in enumerate(f.num.coeffs):
        for j, b in enumerate(g.den.coeffs):
            if a and b:
                coeffs[(i, j)] = coeffs.get((i, j), Fraction(0)) + a * b
    for i, a in enumerate(f.den.coeffs):
        for j, b in enumerate(g.num.coeffs):
            if a and b:
                coeffs[(i, j)] = coeffs.get((i, j), Fraction(0)) - a * b
    return PlaneModel(coeffs)


def quadratic_section_roots(A, B, C, j):
    """Rational roots in x of A(x) j^2 + B(x) j + C(x) for a fixed rational j."""
    poly = A * (j * j) + B * j + C
    if poly.is_zero():
        raise ValueError("identically zero section")
    if poly.degree <= 0:
        return []
    return poly_rational_roots(poly)

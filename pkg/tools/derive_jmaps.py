"""Stage 3: derive/verify the j-maps that ship in the catalog data file.

Every candidate map is checked against the group's curve profile (ramification
over j=0, j=1728 and the cusp widths) and, where possible, by specializing to
elliptic curves and testing the expected structure (isogeny kernels via
division polynomials, discriminant classes, trace/determinant fingerprints).

Run:  python tools/derive_jmaps.py
"""

from __future__ import annotations

import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import sympy
from sympy import Poly, Rational, factor_list, symbols

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gl2census.modmatrix import Subgroup  # noqa: E402
from gl2census.ratq import Polynomial, poly_rational_roots  # noqa: E402


def rational_preimages(expr, j0):
    """Rational t with expr(t) == j0, via the exact rational-root finder."""
    num, den = sympy.fraction(sympy.together(expr - j0))
    coeffs = list(reversed(Poly(num, t).all_coeffs()))
    poly = Polynomial([Fraction(cf.p, cf.q) for cf in map(Rational, coeffs)])
    return poly_rational_roots(poly)

t, x = symbols("t x")

DATA = Path(__file__).resolve().parent / "frozen"
GROUPS = json.load(open(DATA / "groups.json"))["groups"]


# ---------------------------------------------------------------- utilities

def curve_from_j(j):
    """Short Weierstrass curve with the given j-invariant (j not 0, 1728)."""
    j = Rational(j)
    a = 3 * j * (1728 - j)
    b = 2 * j * (1728 - j) ** 2
    return a, b


def trace_of_frobenius(a, b, ell):
    """a_ell for y^2 = x^3 + ax + b by a quadratic character sum."""
    a %= ell
    b %= ell
    # Legendre symbol table
    sq = [0] * ell
    for u in range(1, ell):
        sq[u * u % ell] = 1
    def chi(u):
        u %= ell
        if u == 0:
            return 0
        return 1 if sq[u] else -1
    s = 0
    for u in range(ell):
        s += chi((u * u * u + a * u + b) % ell)
    return -s


def primes_upto(n):
    sieve = [True] * (n + 1)
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, n + 1, p):
                sieve[q] = False
    return out


PRIMES = [p for p in primes_upto(1200) if p > 3]


def integral_model(a, b):
    """Scale (a, b) to integers by the (u^4, u^6) change of variables."""
    a = Rational(a)
    b = Rational(b)
    u = sympy.lcm(a.q, b.q)
    return int(a * u**4), int(b * u**6)


def fingerprint_ok(label, j, samples=120):
    """True if curve_from_j(j) survives trace-det fingerprinting for label."""
    rec = GROUPS[label]
    g = Subgroup(rec["level"], [tuple(m) for m in rec["generators"]])
    pairs = g.adjoin_minus_identity().trace_det_pairs()
    a, b = integral_model(*curve_from_j(j))
    disc = -16 * (4 * a**3 + 27 * b**2)
    n = g.n
    used = 0
    for ell in PRIMES:
        if used >= samples:
            break
        if disc % ell == 0 or n % ell == 0:
            continue
        aell = trace_of_frobenius(a, b, ell)
        used += 1
        if (aell % n, ell % n) not in pairs:
            return False
    return True


def ram_profile(expr, d, nu2, nu3, widths):
    """Check the ramification of the degree-d map j(t) against the profile."""
    num, den = sympy.fraction(sympy.together(expr))
    num = Poly(num, t)
    den = Poly(den, t)
    assert max(num.degree(), den.degree()) == d, (num.degree(), den.degree())

    def mults(poly, deg_target):
        out = []
        for fac, mult in factor_list(poly)[1]:
            out.extend([mult] * sympy.degree(fac, t))
        drop = deg_target - sum(out)
        if drop:
            out.append(drop)  # point at infinity
        return sorted(out)

    # over j = 0
    m0 = mults(num, d) if num.degree() == d else mults(num, num.degree()) + [d - num.degree()]
    m0 = sorted(m0)
    assert all(m in (1, 3) for m in m0), m0
    assert m0.count(1) == nu3, (m0, nu3)
    # over j = 1728
    diff = Poly(num - 1728 * den, t)
    m1728 = mults(diff, diff.degree())
    if diff.degree() < d:
        m1728.append(d - diff.degree())
    m1728 = sorted(m1728)
    assert all(m in (1, 2) for m in m1728), m1728
    assert m1728.count(1) == nu2, (m1728, nu2)
    # over infinity (cusps)
    pole = mults(den, den.degree()) if den.degree() else []
    if den.degree() < d and num.degree() == d:
        pole.append(d - den.degree())
    assert sorted(pole) == sorted(widths), (pole, widths)
    return True


def division_poly(p, a, b):
    """The x-polynomial part of psi_p for y^2 = x^3 + ax + b (p odd)."""
    f = Poly(x**3 + a * x + b, x)
    f2 = f * f
    # psi_m = b_m(x) * y^(m+1 mod 2); the recurrence below is y-free
    bb = {0: Poly(0, x), 1: Poly(1, x), 2: Poly(2, x),
          3: Poly(3 * x**4 + 6 * a * x**2 + 12 * b * x - a**2, x),
          4: Poly(4 * (x**6 + 5 * a * x**4 + 20 * b * x**3 - 5 * a**2 * x**2
                       - 4 * a * b * x - 8 * b**2 - a**3), x)}
    for m in range(5, p + 1):
        if m % 2 == 1:
            k = (m - 1) // 2
            if k % 2 == 0:
                val = bb[k + 2] * bb[k] ** 3 * f2 - bb[k - 1] * bb[k + 1] ** 3
            else:
                val = bb[k + 2] * bb[k] ** 3 - bb[k - 1] * bb[k + 1] ** 3 * f2
        else:
            k = m // 2
            val = bb[k] * (bb[k + 2] * bb[k - 1] ** 2 - bb[k - 2] * bb[k + 1] ** 2)
            val = Poly(val.as_expr() / 2, x)
        bb[m] = val
    assert p % 2 == 1
    return bb[p]


def has_isogeny(j, p):
    """Does the curve with invariant j admit a rational p-isogeny?
    Tested via a degree-(p-1)/2 rational factor of the division polynomial."""
    a, b = integral_model(*curve_from_j(j))
    if p == 2:
        cubic = Poly(x**3 + a * x + b, x)
        return any(sympy.degree(f, x) == 1 for f, _ in factor_list(cubic)[1])
    psi = division_poly(p, a, b)
    target = (p - 1) // 2
    degs = []
    for fac, mult in factor_list(psi)[1]:
        degs.extend([sympy.degree(fac, x)] * mult)
    reach = {0}
    for dg in degs:
        reach |= {r + dg for r in reach}
    return target in reach


def check_map(label, expr, spec_tests=(), samples=60):
    rec = GROUPS[label]
    d, nu2, nu3, cusps, genus = rec["profile"]
    ram_profile(expr, d, nu2, nu3, rec["cusp_widths"])
    rng = random.Random(11)
    pts = 0
    while pts < 4:
        tv = Rational(rng.randint(-40, 40), rng.randint(1, 12))
        try:
            j = expr.subs(t, tv)
        except ZeroDivisionError:
            continue
        if j.is_finite is False or j in (0, 1728):
            continue
        jq = Rational(j)
        for fn in spec_tests:
            assert fn(jq), (label, tv, jq)
        assert fingerprint_ok(label, jq, samples), (label, tv, jq)
        pts += 1
    print(f"  {label}: profile + {pts} specializations OK")
    return expr


def main():
    maps = {}

    print("classical maps:")
    maps["2B"] = check_map("2B", (t + 256) ** 3 / t**2,
                           [lambda j: has_isogeny(j, 2)])
    maps["2Cs"] = check_map("2Cs", 256 * (t**2 + t + 1) ** 3 / (t**2 * (t + 1) ** 2))
    maps["2Cn"] = check_map("2Cn", t**2 + 1728)
    maps["3B"] = check_map("3B", (t + 27) * (t + 243) ** 3 / t**3,
                           [lambda j: has_isogeny(j, 3)])
    maps["3Nn"] = check_map("3Nn", t**3)
    maps["5B"] = check_map("5B", (t**2 + 250 * t + 3125) ** 3 / t**5,
                           [lambda j: has_isogeny(j, 5)])
    maps["7B"] = check_map("7B", (t**2 + 13 * t + 49) * (t**2 + 245 * t + 2401) ** 3 / t**7,
                           [lambda j: has_isogeny(j, 7)])
    maps["13B"] = check_map(
        "13B",
        (t**2 + 5 * t + 13) * (t**4 + 7 * t**3 + 20 * t**2 + 19 * t + 1) ** 3 / t,
        [lambda j: has_isogeny(j, 13)])

    print("discriminant-class maps:")
    maps["4X3"] = check_map("4X3", 1728 - t**2)
    maps["8X4"] = check_map("8X4", 1728 - 2 * t**2)
    maps["8X5"] = check_map("8X5", 1728 + 2 * t**2)

    print("4X7 (Belyi solve, degree 4):")
    # j = c t^3 (t - 1) with the triple point at 0 and the simple one at 1;
    # j - 1728 = c (t-d)^2 (t-e)(t-f)
    c, d_, e_, f_ = symbols("c d e f")
    lhs = Poly(c * t**3 * (t - 1) - 1728, t)
    rhs = Poly(c * (t - d_) ** 2 * (t - e_) * (t - f_), t)
    eqs = [sympy.expand(a - b) for a, b in
           zip(lhs.all_coeffs(), rhs.all_coeffs())]
    sols = sympy.solve(eqs, [c, d_, e_, f_], dict=True)
    cands = []
    for s in sols:
        if s[c].is_rational:
            cands.append(sympy.expand((c * t**3 * (t - 1)).subs(c, s[c])))
    print("   rational candidates:", cands)
    anchors47 = [Rational(-3**3 * 11**3, 2**2), Rational(3**2 * 23**3, 2**6),
                 Rational(-2**2 * 3**7 * 5**3 * 439**3)]
    good = []
    for cand in set(map(sympy.simplify, cands)):
        try:
            ram_profile(cand, 4, 2, 1, [4])
        except AssertionError:
            continue
        hits = sum(1 for j0 in anchors47 if rational_preimages(cand, j0))
        if hits == 3 and all(
            fingerprint_ok("4X7", Rational(cand.subs(t, tv)), 80)
            for tv in (Rational(3), Rational(5, 2), Rational(-7, 3))
        ):
            good.append(cand)
    print("   anchored candidates:", good)
    assert good, "no 4X7 map found"
    maps["4X7"] = good[0]
    check_map("4X7", maps["4X7"])

    print("9XE (Elkies' mod-9 family):")
    e9 = (3**7 * (t**2 - 1) ** 3
          * (t**6 + 3 * t**5 + 6 * t**4 + t**3 - 3 * t**2 + 12 * t + 16) ** 3
          * (2 * t**3 + 3 * t**2 - 3 * t - 5) / (t**3 - 3 * t - 1) ** 9)
    maps["9XE"] = check_map("9XE", e9, samples=80)
    # the paper's [4X7,9XE] point must be in the image
    exc = Rational(-(2**2) * 3**7 * 5**3 * 439**3)
    rr = rational_preimages(e9, exc)
    print("   -2^2 3^7 5^3 439^3 preimages:", rr)
    assert rr

    print("5S4 (Belyi solve, degree 5):")
    cc, p_, q_, u_, v_ = symbols("cc p q u v")
    lhs = Poly(cc * t**3 * (t**2 + p_ * t + q_) - 1728, t)
    rhs = Poly(cc * (t - 1) * (t**2 + u_ * t + v_) ** 2, t)
    eqs = [sympy.expand(a - b) for a, b in zip(lhs.all_coeffs(), rhs.all_coeffs())]
    sols = sympy.solve(eqs, [cc, p_, q_, u_, v_], dict=True)
    got = None
    for s in sols:
        if not all(s[v].is_rational for v in (cc, p_, q_)):
            continue
        cand = sympy.expand((cc * t**3 * (t**2 + p_ * t + q_)).subs(s))
        try:
            ram_profile(cand, 5, 1, 2, [5])
        except AssertionError:
            continue
        if all(fingerprint_ok("5S4", Rational(cand.subs(t, tv)), 80)
               for tv in (Rational(3), Rational(-5, 2), Rational(7, 3))):
            got = cand
            break
    if got is not None:
        maps["5S4"] = check_map("5S4", got, samples=80)
    else:
        print("   no rational 5S4 map found; shipping none")

    out = {}
    for label, expr in maps.items():
        num, den = sympy.fraction(sympy.together(sympy.expand(expr)))
        out[label] = {
            "num": [str(cf) for cf in Poly(num, t).all_coeffs()],
            "den": [str(cf) for cf in Poly(den, t).all_coeffs()],
        }
    (DATA / "jmaps_derived.json").write_text(json.dumps(out, indent=1))
    print("wrote", DATA / "jmaps_derived.json")


if __name__ == "__main__":
    main()

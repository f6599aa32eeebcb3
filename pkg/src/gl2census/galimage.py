"""Mod-p and adic Galois image classification for non-CM curves over Q.

The classifier is certificate-first:

* rational p-isogeny counts come from exact factorization of division
  polynomials (deterministic);
* trace/determinant fingerprints over many good primes eliminate candidate
  subgroups (elimination is rigorous; survival alone is not);
* membership is certified by rational points on the genus-0 parametrizations
  (j-map preimages), by the shipped finite j-lists, or -- for fine Borel
  classes at 3 and 5 -- by explicit square-class and congruence certificates;
* primes outside the shipped range are handled by a uniformity assumption
  that is flagged in the output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import sympy

from . import catalog as _catalog
from .ecq import EllipticCurveQ, BadPrimeError
from .ratq import (Polynomial, is_rational_square, poly_rational_roots,
                   ratfun_preimages)

__all__ = ["mod_p_image", "exceptional_primes", "adic_level_2",
           "adic_level_3", "serre_constant", "exceptional_type",
           "ImageReport", "CMCurveError"]

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)
FINITE_LIST_PRIMES = {7: ["7Ns.3.1"],
                      11: ["11B.10.4", "11B.10.5"],
                      13: ["13S4"],
                      17: ["17B.4.2", "17B.4.6"],
                      37: ["37B.8.1", "37B.8.2"]}
DEFAULT_PRIME_BOUND = 2000


class CMCurveError(ValueError):
    """The classification and A(E) are only defined for non-CM curves."""


@dataclass
class ImageReport:
    label: str
    method: str
    confidence: str
    assumptions: tuple = ()


def _ensure_non_cm(E):
    if E.j_invariant in _catalog.load().cm_j_invariants():
        raise CMCurveError("curve has CM (j = %s); classification is for "
                           "non-CM curves" % E.j_invariant)


# ----------------------------------------------------------------- mod p image

def mod_p_image(E, p, prime_bound=DEFAULT_PRIME_BOUND, assume=True):
    """ImageReport for the mod-p image of a non-CM curve.

    For p in {2,...,13} the label is one of the census labels (fine labels
    at 3 and 5 where a certificate pins them down) or "GL2" for surjective.
    For p in {17, 37} only the finite j-lists can occur; for all other p the
    image is reported surjective under the flagged uniformity assumption.
    """
    _ensure_non_cm(E)
    cat = _catalog.load()
    if p == 2:
        lab = E.mod2_image()
        return ImageReport(lab, "2-division cubic + discriminant class",
                           "proven")
    if p in FINITE_LIST_PRIMES:
        hit = _finite_list_hit(cat, E, p)
        if hit is not None:
            asm = ("conjectural-13S4",) if (p == 13 and assume) else ()
            conf = "proven" if p != 13 else (
                "proven under 13S4 conjecture" if assume else "j-list match; "
                "group identification conjectural")
            return ImageReport(hit, "finite j-list", conf, asm)
    if p not in SMALL_PRIMES:
        if not assume:
            return ImageReport(
                "GL2", "uniformity assumption (disabled)", "unverified",
                ("strong-uniformity",))
        return ImageReport("GL2", "uniformity assumption", "assumed",
                           ("strong-uniformity",))
    # fingerprint elimination among the census candidates at level p
    candidates = [cat.lookup(lab) for lab in cat.labels(family="mod_p",
                                                        level=p)]
    survivors, samples = _fingerprint_filter(E, p, candidates, prime_bound)
    if not survivors:
        return ImageReport("GL2", "fingerprint elimination of all proper "
                           "candidates (%d primes)" % samples, "proven")
    # deterministic rational-isogeny line count
    lines = E.rational_isogeny_line_count(p)
    survivors = [r for r in survivors if r.stable_line_count == lines]
    if not survivors:
        if lines == 0:
            return ImageReport("GL2", "no rational %d-isogeny; fingerprint "
                               "survivors all require one" % p, "proven")
        raise RuntimeError(
            "inconsistent classification at %d: %d rational lines but no "
            "matching candidate survived" % (p, lines))
    # membership in a group with a j-map is decidable: j lies in the image
    # of the genus-0 parametrization iff the mod-p image is contained in it
    method = "fingerprint (%d primes) + isogeny count" % samples
    confidence = "heuristic"
    while survivors:
        rec = _minimal_survivor(cat, survivors)
        if rec.j_map is None:
            break
        if _jmap_member(rec, E.j_invariant):
            method += " + j-map certificate"
            confidence = "proven"
            break
        survivors = [r for r in survivors if r.label != rec.label]
    if not survivors:
        if lines:
            raise RuntimeError(
                "inconsistent classification at %d: rational isogeny but "
                "every candidate excluded by its j-map" % p)
        return ImageReport("GL2", method + "; remaining candidates excluded "
                           "by their j-maps", "proven")
    if p == 3 and rec.label == "3B":
        return _refine_mod3(E, rec, method)
    if p == 5 and rec.label in ("5B", "5B.4.1", "5B.4.2"):
        return _refine_mod5(E, rec, method)
    return ImageReport(rec.label, method, confidence)


def _finite_list_hit(cat, E, p):
    j = E.j_invariant
    for lab in FINITE_LIST_PRIMES[p]:
        if j in cat.lookup(lab).j_list:
            return lab
    return None


def _fingerprint_filter(E, p, candidates, prime_bound, max_samples=120):
    """Eliminate candidates whose (trace, det) set misses an observed
    (a_ell mod p, ell mod p).  Elimination is rigorous."""
    pair_sets = {}
    for rec in candidates:
        g = rec.group.adjoin_minus_identity()
        pair_sets[rec.label] = set(g.trace_det_pairs())
    # candidates whose pair set is all of (Z/p) x (Z/p)* can never be
    # eliminated by sampling; only their j-maps can decide membership
    full = {(t, d) for t in range(p) for d in range(1, p)}
    uneliminable = {lab for lab, s in pair_sets.items() if s >= full}
    alive = dict(pair_sets)
    samples = 0
    for ell in E.good_primes(prime_bound):
        if ell == p:
            continue
        if set(alive) <= uneliminable or samples >= max_samples:
            break
        a = E.trace_of_frobenius(ell)
        obs = (a % p, ell % p)
        samples += 1
        for lab in [l for l, s in alive.items() if obs not in s]:
            del alive[lab]
    return [rec for rec in candidates if rec.label in alive], samples


def _minimal_survivor(cat, survivors):
    labels = {r.label for r in survivors}
    minimal = [r for r in survivors
               if not any(s in labels and s != r.label
                          for s in _below(cat, r.label, labels))]
    minimal.sort(key=lambda r: (r.group.order, r.label))
    return minimal[0]


def _below(cat, label, labels):
    # survivors strictly below `label` in the containment poset
    return [l for l in labels if label in cat.contained_in(l)]


def _jmap_member(rec, j):
    try:
        return bool(ratfun_preimages(rec.j_map, j))
    except ZeroDivisionError:
        return False


# ----------------------------------------------------------- fine refinement

def _short_f(E):
    A, B = E.integral_short_model()
    return Polynomial([Fraction(B), Fraction(A), Fraction(0), Fraction(1)])


def _refine_mod3(E, coarse, method):
    """Split 3B into 3B.1.1 / 3B.1.2 / coarse 3B by the square class of
    f(x0) at the rational kernel x-coordinate: psi_1 trivial iff the
    3-torsion point is rational (f(x0) square), psi_1 = chi_3 iff
    -3 f(x0) is a square."""
    kernels = E.isogeny_kernel_polynomials(3)
    assert kernels, "3B survivor without a rational 3-isogeny"
    roots = poly_rational_roots(kernels[0])
    if not roots:
        return ImageReport("3B", method, "heuristic")
    v = _short_f(E)(roots[0])
    if is_rational_square(v):
        return ImageReport("3B.1.1", method + " + torsion-point certificate",
                           "proven")
    if is_rational_square(-3 * v):
        return ImageReport("3B.1.2", method + " + square-class certificate",
                           "proven")
    return ImageReport("3B", method + " (characters have order 2)", "proven")


def _refine_mod5(E, coarse, method):
    """Refine the mod-5 Borel classes using the degree-2 kernel polynomial.

    k reducible with root x0: f(x0) square -> 5B.1.1 (rational 5-torsion);
    f(x0) in 5*squares -> 5B.1.2; otherwise coarse 5B.4.2.
    k irreducible: disc(k) not in 5*squares -> coarse 5B.4.1; otherwise the
    kernel field is Q(sqrt 5) and Q(P) may be Q(zeta_5): if the y-resultant
    quartic splits over Q(zeta_5), psi_1 is chi or chi^3 and one good prime
    ell = 2,3 mod 5 decides (a_ell = ell+1 -> 5B.1.4; ell^3+ell^2 -> 5B.1.3).
    """
    kernels = E.isogeny_kernel_polynomials(5)
    assert kernels, "5B survivor without a rational 5-isogeny"
    k = kernels[0]
    f = _short_f(E)
    roots = poly_rational_roots(k)
    if roots:
        v = f(roots[0])
        if is_rational_square(v):
            return ImageReport("5B.1.1", method + " + torsion-point "
                               "certificate", "proven")
        if is_rational_square(v / 5):
            return ImageReport("5B.1.2", method + " + square-class "
                               "certificate", "proven")
        return ImageReport("5B.4.2", method + " (psi_1 has order 4)",
                           "proven")
    disc = k.coeffs[1] ** 2 - 4 * k.coeffs[0]
    if not is_rational_square(disc / 5):
        return ImageReport("5B.4.1", method + " (kernel field is not "
                           "Q(sqrt 5))", "proven")
    if not _kernel_point_in_zeta5(k, f):
        return ImageReport("5B.4.1", method + " (point field is not "
                           "Q(zeta_5))", "proven")
    for ell in E.good_primes(DEFAULT_PRIME_BOUND):
        if ell % 5 in (2, 3):
            a = E.trace_of_frobenius(ell) % 5
            if a == (ell + 1) % 5:
                return ImageReport("5B.1.4", method + " + congruence "
                                   "certificate at %d" % ell, "proven")
            if a == (ell ** 3 + ell ** 2) % 5:
                return ImageReport("5B.1.3", method + " + congruence "
                                   "certificate at %d" % ell, "proven")
            raise RuntimeError("mod-5 character congruence failed at %d" % ell)
    raise RuntimeError("no good prime = 2,3 mod 5 below bound")


def _kernel_point_in_zeta5(k, f):
    """Whether the y-coordinates of the kernel points lie in Q(zeta_5):
    factor Res_x(k(x), y^2 - f(x)) into linears over the cyclotomic field."""
    x, y = sympy.symbols("x y")

    def to_sym(poly, var):
        return sum(sympy.Rational(c) * var ** i
                   for i, c in enumerate(poly.coeffs))

    res = sympy.resultant(to_sym(k, x), y ** 2 - to_sym(f, x), x)
    zeta = sympy.CRootOf(sympy.cyclotomic_poly(5, x), 0)
    try:
        factors = sympy.factor_list(res, y, extension=zeta)[1]
    except (sympy.PolynomialError, NotImplementedError):
        return False
    return all(sympy.degree(g, y) == 1 for g, _ in factors)


# ------------------------------------------------------------- adic structure

def adic_level_2(E):
    """(exponent, label) for the exceptional 2-adic structure.

    exponent is the 2-exponent contributed to A(E): 1 for a proper mod-2
    image, 2 for the level-4 types (discriminant in -squares, or j in the
    image of the level-4 index-2 curve), 3 for the level-8 types
    (discriminant in -2*squares or 2*squares), 0 otherwise.
    """
    _ensure_non_cm(E)
    cat = _catalog.load()
    mod2 = E.mod2_image()
    if mod2 != "GL2":
        return 1, mod2
    d = E.discriminant
    if is_rational_square(-d / 2):
        assert _jmap_member(cat.lookup("8X4"), E.j_invariant), \
            "discriminant class says 8X4 but the j-map test disagrees"
        return 3, "8X4"
    if is_rational_square(d / 2):
        return 3, "8X5"
    if is_rational_square(-d):
        return 2, "4X3"
    if _jmap_member(cat.lookup("4X7"), E.j_invariant):
        return 2, "4X7"
    return 0, None


def adic_level_3(E):
    """(exponent, label) for the exceptional 3-adic structure: 1 for a
    proper mod-3 image, 2 when j lies on the level-9 curve, else 0."""
    _ensure_non_cm(E)
    cat = _catalog.load()
    rep = mod_p_image(E, 3)
    if rep.label != "GL2":
        return 1, rep.label
    if _jmap_member(cat.lookup("9XE"), E.j_invariant):
        return 2, "9XE"
    return 0, None


def exceptional_primes(E, assume=True):
    """Sorted list of primes with non-surjective mod-p image."""
    _ensure_non_cm(E)
    out = []
    for p in SMALL_PRIMES:
        if mod_p_image(E, p, assume=assume).label != "GL2":
            out.append(p)
    for p in (17, 37):
        if _finite_list_hit(_catalog.load(), E, p) is not None:
            out.append(p)
    return out


def serre_constant(E, assume=True):
    """Serre's constant A(E): the product over exceptional primes p of
    p^(adic exponent)."""
    _ensure_non_cm(E)
    a = 1
    e2, _ = adic_level_2(E)
    a *= 2 ** e2
    e3, _ = adic_level_3(E)
    a *= 3 ** e3
    for p in (5, 7, 11, 13):
        if mod_p_image(E, p, assume=assume).label != "GL2":
            a *= p
    for p in (17, 37):
        if _finite_list_hit(_catalog.load(), E, p) is not None:
            a *= p
    return a


def exceptional_type(E, assume=True, prime_bound=DEFAULT_PRIME_BOUND):
    """Full classification report as a JSON-ready dict."""
    _ensure_non_cm(E)
    images = {}
    assumptions = set()
    s_e = []
    for p in SMALL_PRIMES + (17, 37):
        rep = mod_p_image(E, p, prime_bound=prime_bound, assume=assume)
        assumptions.update(rep.assumptions)
        if rep.label != "GL2":
            s_e.append(p)
            images[p] = rep
    if assume:
        assumptions.add("strong-uniformity")
    e2, lab2 = adic_level_2(E)
    e3, lab3 = adic_level_3(E)
    s_e_infty = sorted(set(s_e) | ({2} if e2 else set())
                       | ({3} if e3 else set()))
    if e2 > 1:
        images[2] = ImageReport(lab2, "discriminant square class"
                                if lab2 != "4X7" else "j-map certificate",
                                "proven")
    if e3 > 1:
        images[3] = ImageReport(lab3, "j-map certificate", "proven")
    return {
        "label": E.label,
        "j": str(E.j_invariant),
        "delta": str(E.discriminant),
        "S_E": s_e,
        "S_E_infty": s_e_infty,
        "images": {str(p): {"label": rep.label, "method": rep.method,
                            "confidence": rep.confidence}
                   for p, rep in sorted(images.items())},
        "serre_constant": serre_constant(E, assume=assume),
        "assumptions": sorted(assumptions),
    }


def report_json(E, **kw):
    return json.dumps(exceptional_type(E, **kw), indent=2)

"""Assemble the single shipped data file src/gl2census/data/catalog.json.

Merges the frozen census (groups.json) and verified j-maps (jmaps_derived.json)
with: fine Borel records, the excluded genus-3 level-13 groups, finite-j-list
records, per-level containment posets, pair j-maps for the quadratic 2-side
types, phantom-type fixtures, part-(A) lists, positive-rank genus-1 fixtures,
the CM j-invariant set, hyperelliptic search models, and example curves.

Every derived item is re-verified here before being written.
"""
import json
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
sys.path.insert(0, os.path.dirname(__file__))

from gl2census.modmatrix import (
    Subgroup, closure, full_group, is_conjugate, is_conjugate_subgroup,
    mat_det, minus_identity,
)
from gl2census.modcurve import genus_profile, product_profile, CurveProfile
from gl2census.ratq import Polynomial, RationalFunction, poly_rational_roots
from derive_catalog import s4_group, nn_group, ns_group
from freeze_catalog import char_orders

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "gl2census", "data")


def load_frozen():
    with open(os.path.join(os.path.dirname(__file__), "frozen", "groups.json")) as f:
        groups = json.load(f)
    with open(os.path.join(os.path.dirname(__file__), "frozen", "jmaps_derived.json")) as f:
        jmaps = json.load(f)
    return groups, jmaps


def asc(coeffs_desc):
    """Descending string coeff list -> ascending int list (ratq convention)."""
    return [int(c) for c in reversed(coeffs_desc)]


def ratfun(jrec):
    return RationalFunction(Polynomial(asc(jrec["num"])), Polynomial(asc(jrec["den"])))


# ---------------------------------------------------------------- fine Borels
# A fine (-I-free) Borel class is determined by the pair of diagonal-character
# orders (ord psi1, ord psi2) of the kernel/quotient characters; psi1*psi2 is
# the mod-p cyclotomic character, so the diagonal part is the cyclic graph
# group <diag(a0, d0)> with a0*d0 a generator of (Z/p)^*.
FINE = {
    # label: (p, generators, signature)
    "3B.1.1": (3, [(1, 1, 0, 1), (1, 0, 0, 2)], (1, 2)),
    "3B.1.2": (3, [(1, 1, 0, 1), (2, 0, 0, 1)], (2, 1)),
    "5B.1.1": (5, [(1, 1, 0, 1), (1, 0, 0, 2)], (1, 4)),
    "5B.1.2": (5, [(1, 1, 0, 1), (4, 0, 0, 3)], (2, 4)),
    "5B.1.3": (5, [(1, 1, 0, 1), (3, 0, 0, 4)], (4, 2)),
    "5B.1.4": (5, [(1, 1, 0, 1), (2, 0, 0, 1)], (4, 1)),
}


def fine_records():
    recs = {}
    for label, (p, gens, sig) in FINE.items():
        g = Subgroup(p, gens)
        assert not g.contains_minus_identity(), label
        assert g.det_surjective(), label
        diag = {(m[0], m[3]) for m in g if m[1] == 0 and m[2] == 0}
        assert char_orders(diag, p) == sig, (label, char_orders(diag, p), sig)
        pm = g.adjoin_minus_identity()
        # coarse parent: the unique census group at level p conjugate to +/-g
        recs[label] = {
            "level": p,
            "generators": [list(m) for m in gens],
            "order": g.order,
            "contains_minus_I": False,
            "signature": list(sig),
            "family": "fine",
            "maximal": False,
            "forced_isogeny": p,
            "implied_torsion": p if sig[0] == 1 else None,
            "pm_order": pm.order,
        }
    return recs


# ------------------------------------------------------- excluded 13-groups
def excluded_records():
    recs = {}
    for label, g in (("13S4", s4_group(13)),
                     ("13Nn", nn_group(13)),
                     ("13Ns", ns_group(13))):
        sub = Subgroup(13, sorted(g)) if isinstance(g, (set, frozenset)) else g
        if not isinstance(sub, Subgroup):
            sub = Subgroup(13, sorted(g))
        prof = genus_profile(sub)
        assert prof.genus == 3, (label, prof)
        recs[label] = {
            "level": 13,
            "generators": None,
            "order": sub.order,
            "contains_minus_I": True,
            "profile": [prof.d, prof.nu2, prof.nu3, prof.cusps, prof.genus],
            "family": "excluded",
            "maximal": False,
        }
        # store a small generating set
        gens = []
        cur = Subgroup(13, [(1, 0, 0, 1)])
        for m in sorted(sub):
            if m not in cur:
                gens.append(m)
                cur = Subgroup(13, gens)
                if cur.order == sub.order:
                    break
        assert cur.order == sub.order
        recs[label]["generators"] = [list(m) for m in gens]
    return recs


# ---------------------------------------------------------- finite j-lists
def fr(s):
    return str(s)


FINITE_J = {
    "13S4": [fr(Fraction(2**4 * 5 * 13**4 * 17**3, 3**13)),
             fr(Fraction(-(2**12) * 5**3 * 11 * 13**4, 3**13)),
             fr(Fraction(2**18 * 3**3 * 13**4 * 127**3 * 139**3 * 157**3 * 283**3 * 929,
                         5**13 * 61**13))],
    "7Ns.3.1": [fr(Fraction(3**3 * 5 * 7**5, 2**7))],
    "11B.10.4": [fr(-(11**2))],
    "11B.10.5": [fr(-11 * 131**3)],
    "17B.4.2": [fr(Fraction(-17 * 373**3, 2**17))],
    "17B.4.6": [fr(Fraction(-(17**2) * 101**3, 2))],
    "37B.8.1": [fr(-7 * 11**3)],
    "37B.8.2": [fr(-7 * 137**3 * 2083**3)],
}

FINITE_LEVEL = {"13S4": 13, "7Ns.3.1": 7, "11B.10.4": 11, "11B.10.5": 11,
                "17B.4.2": 17, "17B.4.6": 17, "37B.8.1": 37, "37B.8.2": 37}

CM_J = [0, 1728, -3375, 8000, -32768, 54000, 287496, -884736, -12288000,
        16581375, -884736000, -147197952000, -262537412640768000]


# ------------------------------------------------------------- containment
def containment_poset(records, groups_by_label):
    """For each level, label -> sorted list of strictly larger labels (up to
    conjugacy) among the stored groups at that level (with -I adjoined)."""
    by_level = {}
    for label, rec in records.items():
        if rec.get("generators") is None:
            continue
        by_level.setdefault(rec["level"], []).append(label)
    poset = {}
    for level, labels in sorted(by_level.items()):
        closed = {}
        for lab in labels:
            g = groups_by_label[lab]
            closed[lab] = g.adjoin_minus_identity()
        for lab in labels:
            ups = []
            for other in labels:
                if other == lab:
                    continue
                gl, go = closed[lab], closed[other]
                if go.order > gl.order and is_conjugate_subgroup(gl, go):
                    ups.append(other)
            poset[lab] = sorted(ups)
    return poset


# ---------------------------------------------------------------- pair maps
def poly_sub_lambda_square(poly, lam):
    """p(lam * s^2) as an exact Polynomial in s."""
    out = Polynomial([0])
    s2 = Polynomial([0, 0, 1])
    power = Polynomial([1])
    for c in poly.coeffs:
        out = out + power * Polynomial([c])
        power = power * s2 * Polynomial([lam])
    return out


def compose_pair_map(jp, lam):
    """j_p(lam * s^2) as a RationalFunction in s."""
    return RationalFunction(poly_sub_lambda_square(jp.num, lam),
                            poly_sub_lambda_square(jp.den, lam))


def derive_pair_jmaps(jmaps, records):
    """Pair j-maps for [G2, pB] with G2 in {2Cn,4X3,8X4,8X5}, p in {3,7}.

    The 2-side curves have j - 1728 = eps*t^2 (eps = 1,-1,-2,2) and the odd
    side satisfies j_p - 1728 = Q(h)^2 / h^w with w odd, so the fiber product
    is rational, parametrized by h = eps*r^2*s^2 (any rational r != 0).
    """
    eps = {"2Cn": 1, "4X3": -1, "8X4": Fraction(-1, 2), "8X5": Fraction(1, 2)}
    # Verify the square shape of j_p - 1728 for p = 3, 7.
    for plab, w in (("3B", 3), ("7B", 7)):
        jp = ratfun(jmaps[plab])
        num = jp.num - jp.den * Polynomial([1728])
        # num must be a perfect square of a polynomial (all preimages of 1728
        # are doubled since nu2(X0(p)) = 0 for p = 3, 7 mod 4).
        q = poly_sqrt(num)
        assert q is not None, plab
    out = {}
    anchors = {}
    # anchor: [4X3,3B] must hit j1 = -3^3*11^3/2^2 at s = -1/2 (choose r).
    j3 = ratfun(jmaps["3B"])
    j1 = Fraction(-(3**3) * 11**3, 4)
    pre = [h for h in rational_preimages_rf(j3, j1) if h != "inf"]
    hstar = None
    for h in pre:
        m = -Fraction(h)
        num, den = m.numerator, m.denominator
        import sympy
        if m > 0 and sympy.sqrt(num).is_integer and sympy.sqrt(den).is_integer:
            hstar = Fraction(h)
    assert hstar is not None, pre
    r43 = 2 * frac_sqrt(-hstar)  # s = +-1/2 -> h = -r^2/4 = hstar
    for g2 in ("2Cn", "4X3", "8X4", "8X5"):
        for plab in ("3B", "7B"):
            jp = ratfun(jmaps[plab])
            r = r43 if (g2, plab) == ("4X3", "3B") else 1
            lam = eps[g2] * r * r
            comp = compose_pair_map(jp, lam)
            # verification: for sample s, j(s) lies in both component images:
            # oddside by construction; 2-side: (j - 1728)/eps_form is a square.
            e = {"2Cn": 1, "4X3": -1, "8X4": -2, "8X5": 2}[g2]
            for s in (Fraction(1), Fraction(2), Fraction(3, 2), Fraction(-5)):
                j = comp(s)
                if j == "inf":
                    continue
                v = (j - 1728) * Fraction(1, e)
                assert v >= 0 and frac_sqrt(v) is not None, (g2, plab, s)
            key = "%s,%s" % (g2, plab)
            out[key] = {"num": [str(c) for c in comp.num.coeffs],
                        "den": [str(c) for c in comp.den.coeffs]}
            anchors[key] = str(lam)
    # anchor check
    comp = None
    k = "4X3,3B"
    cm = out[k]
    f = RationalFunction(Polynomial([Fraction(c) for c in cm["num"]]),
                         Polynomial([Fraction(c) for c in cm["den"]]))
    assert f(Fraction(-1, 2)) == j1, f(Fraction(-1, 2))
    return out, anchors


def poly_sqrt(p):
    """Exact polynomial square root, or None."""
    if p.degree % 2:
        return None
    import sympy
    x = sympy.symbols("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i
               for i, c in enumerate(p.coeffs))
    const, facs = sympy.factor_list(sympy.Poly(expr, x))
    cs = frac_sqrt(Fraction(const.p, const.q))
    if cs is None or any(m % 2 for _, m in facs):
        return None
    root = sympy.Poly(1, x)
    for f, m in facs:
        root = root * f ** (m // 2)
    coeffs = [Fraction(c.p, c.q) * cs for c in reversed(root.all_coeffs())]
    return Polynomial(coeffs)


def frac_sqrt(v):
    v = Fraction(v)
    if v < 0:
        return None
    import sympy
    a, b = sympy.sqrt(v.numerator), sympy.sqrt(v.denominator)
    if a.is_integer and b.is_integer:
        return Fraction(int(a), int(b))
    return None


def rational_preimages_rf(f, value):
    """Rational preimages of value under RationalFunction f (finite only)."""
    num = f.num - f.den * Polynomial([Fraction(value)])
    if num.is_zero():
        return []
    return [r for r in poly_rational_roots(num)]


# ----------------------------------------------------------------- phantoms
def phantom_fixtures(jmaps):
    # [8X5,3Nn]: outer modular curve has j(x) = 8x^3; the smaller-type curve
    # ([8X17,3Nn]) has j'(x) = 8((x^3+32)/x^2)^3 and j' = j o phi with
    # phi(x) = (x^3+32)/x^2. The identity is trivial once phi is fixed, and
    # it proves Im(j') = Im(j) restricted to rational points transported by
    # the 3-isogeny phi between the two elliptic models.
    phi = RationalFunction(Polynomial([32, 0, 0, 1]), Polynomial([0, 0, 1]))
    jout = RationalFunction(Polynomial([0, 0, 0, 8]), Polynomial([1]))
    # j'(x) = 8*((x^3+32)/x^2)^3 = 8(x^3+32)^3/x^6
    n = (Polynomial([32, 0, 0, 1]) ** 3) * Polynomial([8])
    jin = RationalFunction(n, Polynomial([0] * 6 + [1]))
    # exact identity j'(x) = j(phi(x)):
    lhs = jin
    rhs_num = (phi.num ** 3) * Polynomial([8])
    rhs = RationalFunction(rhs_num, phi.den ** 3)
    assert lhs.num * rhs.den == rhs.num * lhs.den
    x17 = Subgroup(8, [(1, 0, 2, 1), (1, 0, 0, 7), (1, 1, 0, 5)])
    # 8X17 reduces into 2B mod 2 (so mod-2 is already non-surjective)
    m2 = x17.project(2)
    assert m2.order < 6
    return [
        {"type": ["8X5", "3Nn"], "smaller_type": ["8X17", "3Nn"],
         "inner_group": {"level": 8,
                         "generators": [[1, 0, 2, 1], [1, 0, 0, 7], [1, 1, 0, 5]]},
         "outer_jmap": {"num": [str(c) for c in jout.num.coeffs],
                        "den": [str(c) for c in jout.den.coeffs]},
         "inner_jmap": {"num": [str(c) for c in jin.num.coeffs],
                        "den": [str(c) for c in jin.den.coeffs]},
         "phi": {"num": [str(c) for c in phi.num.coeffs],
                 "den": [str(c) for c in phi.den.coeffs]},
         "outer_model": "576a3", "inner_model": "576a1"},
        {"type": ["3Nn", "5S4"], "smaller_type": ["3Nn", "5Ns"],
         "outer_model": "225a2", "inner_model": "225a1",
         "reason": "5Ns is a proper subgroup of 5S4; the two genus-1 models "
                   "are 3-isogenous with matching j-map images"},
    ]


# ------------------------------------------------------------- part A lists
# coarse (+-I) reductions of the published part-(A) pair lists; fine labels
# fold into their +-closure, whose modular curve is the same
PART_A_MOD_P = [
    ["2B", "3B"], ["2B", "3Cs"], ["2B", "3Nn"], ["2B", "3Ns"],
    ["2B", "5B"], ["2B", "5B.4.1"], ["2B", "5B.4.2"],
    ["2Cn", "3B"], ["2Cn", "5S4"], ["2Cn", "7B"],
    ["2Cs", "3B"],
    ["3Nn", "5B"], ["3Nn", "5Ns"], ["3Nn", "5Nn"], ["3Nn", "7Nn"],
]
PART_A_ADIC = [
    ["4X3", "3B"], ["4X3", "5S4"], ["4X3", "7B"],
    ["4X7", "3Nn"], ["4X7", "5S4"],
    ["8X4", "3B"], ["8X4", "5B"], ["8X4", "5S4"], ["8X4", "7B"], ["8X4", "13B"],
    ["8X5", "3B"], ["8X5", "5Nn"], ["8X5", "5S4"], ["8X5", "7B"],
]
# the two genus-1 positive-rank types excluded from part (A): every curve of
# these types has a strictly smaller type (phantom types)
PHANTOM_TYPES = [["8X5", "3Nn"], ["3Nn", "5S4"]]


# ----------------------------------------------------------------- examples
EXAMPLES = {
    # curve name -> a-invariants (a1,a2,a3,a4,a6)
    "50a1": [1, 0, 1, -126, -552],
    "3891b1": [1, 0, 0, 0, 3],
    "t3n": [1, 0, 1, 0, 0],      # Tate normal form, rational 3-torsion
    "t5n": [0, -1, 1, 0, 0],     # Tate normal form, rational 5-torsion
}


def main():
    groups_json, jmaps = load_frozen()
    # The published 7B.2.1/7B.2.3 are fine (-I-free) index-2 subgroups of 7B;
    # the order-84 census classes get the 7B.6.x names instead.
    RENAME = {"7B.2.1": "7B.6.2", "7B.2.3": "7B.6.3"}
    groups_json["groups"] = {RENAME.get(k, k): v
                             for k, v in groups_json["groups"].items()}
    groups_json["pairs"] = {
        kind: [[RENAME.get(a, a), RENAME.get(b, b), g] for a, b, g in rows]
        for kind, rows in groups_json["pairs"].items()}
    records = {}
    groups_by_label = {}
    for label, rec in groups_json["groups"].items():
        g = Subgroup(rec["level"], [tuple(m) for m in rec["generators"]])
        groups_by_label[label] = g
        out = dict(rec)
        out["contains_minus_I"] = True
        out["family"] = "adic" if rec["adic"] else "mod_p"
        del out["adic"]
        if label in jmaps:
            out["j_map"] = {"num": [str(c) for c in asc(jmaps[label]["num"])],
                            "den": [str(c) for c in asc(jmaps[label]["den"])]}
        else:
            out["j_map"] = None
        records[label] = out

    # fine records
    for label, rec in fine_records().items():
        records[label] = rec
        groups_by_label[label] = Subgroup(
            rec["level"], [tuple(m) for m in rec["generators"]])
    # excluded level-13 groups
    for label, rec in excluded_records().items():
        records[label] = rec
        groups_by_label[label] = Subgroup(
            rec["level"], [tuple(m) for m in rec["generators"]])
    # finite-list records (no generators stored; only the j-lists matter)
    for label, jl in FINITE_J.items():
        if label in records:
            records[label]["j_list"] = jl
        else:
            records[label] = {
                "level": FINITE_LEVEL[label], "generators": None,
                "order": None, "contains_minus_I": True, "family": "finite",
                "maximal": False, "j_list": jl, "j_map": None,
            }

    # fine records: name the census class conjugate to the +-closure
    for label, rec in records.items():
        if rec.get("family") != "fine":
            continue
        pm = groups_by_label[label].adjoin_minus_identity()
        parent = None
        for other, orec in records.items():
            if orec.get("family") != "mod_p" or orec["level"] != rec["level"]:
                continue
            if orec["order"] == pm.order and is_conjugate(
                    pm, groups_by_label[other]):
                parent = other
                break
        assert parent is not None, label
        rec["pm_label"] = parent

    # example-curve attachments (verified by the classifier test suite)
    attach = {
        "3B.1.2": "50a1", "5B.1.3": "50a1", "8X4": "50a1",
        "3B.1.1": "t3n", "5B.1.1": "t5n",
    }
    for lab, name in attach.items():
        records[lab]["example_curve"] = name

    poset = containment_poset(records, groups_by_label)

    pair_jmaps, pair_lambdas = derive_pair_jmaps(jmaps, records)
    phantoms = phantom_fixtures(jmaps)

    # part-A sanity: every listed pair is a census row of genus 0 or 1
    cenmp = {(a, b): g for a, b, g in groups_json["pairs"]["mod_p"]}
    cenad = {(a, b): g for a, b, g in groups_json["pairs"]["adic"]}

    def find_genus(census, pair):
        for (a, b), g in census.items():
            if {a, b} == set(pair):
                return g
        raise KeyError(pair)

    posrank_mod_p, posrank_adic = [], []
    for pair in PART_A_MOD_P:
        g = find_genus(cenmp, pair)
        assert g in (0, 1), (pair, g)
        if g == 1:
            posrank_mod_p.append(pair)
    for pair in PART_A_ADIC:
        g = find_genus(cenad, pair)
        assert g in (0, 1), (pair, g)
        if g == 1:
            posrank_adic.append(pair)
    assert find_genus(cenad, ["8X5", "3Nn"]) == 1
    assert find_genus(cenmp, ["3Nn", "5S4"]) == 1
    ng0mp = sum(1 for g in cenmp.values() if g == 0)
    ng0ad = sum(1 for g in cenad.values() if g == 0)
    assert len(PART_A_MOD_P) == ng0mp + len(posrank_mod_p), (
        len(PART_A_MOD_P), ng0mp, posrank_mod_p)
    assert len(PART_A_ADIC) == ng0ad + len(posrank_adic), (
        len(PART_A_ADIC), ng0ad, posrank_adic)

    # S1 fixture: the [4X7,5Nn] hyperelliptic sextic and its known points
    s1_sextic = (Polynomial([-2, 0, 0, 0, 0, 1])
                 if False else None)
    # f(x) = (x-2)(x^2+1)(4x^3-4x^2+3x-2)
    f = Polynomial([-2, 1]) * Polynomial([1, 0, 1]) * Polynomial([-2, 3, -4, 4])
    assert f.degree == 6 and f.coeffs[6] == 4
    assert f(Fraction(0)) == 4 and f(Fraction(3, 4)) == Fraction(625, 1024)
    assert f(Fraction(2)) == 0
    triple = Polynomial([1, 0, 0, -18, 0, 0, 1])

    catalog = {
        "_schema": {
            "format": "one JSON object; polynomial coefficients are ascending "
                      "(index = degree) exact integers/fraction strings",
            "groups": "label -> record: level, generators (2x2 matrices as "
                      "[a,b,c,d], or null), order, contains_minus_I, family "
                      "(mod_p|adic|fine|excluded|finite), profile "
                      "[d,nu2,nu3,cusps,genus], cusp_widths, forced_isogeny, "
                      "maximal, j_map ({num,den} or null), j_list, "
                      "example_curve, signature (fine diagonal-character "
                      "orders)",
            "pairs": "census rows [label1, label2, genus]",
            "containment": "label -> strictly larger stored labels at the "
                           "same level, up to conjugacy, after adjoining -I",
            "pair_jmaps": "'G2,pB' -> j-map of the fiber product, "
                          "parametrized so the 2-side condition "
                          "(j-1728)/eps is a square is automatic",
            "phantoms": "types with infinitely many rational points, all of "
                        "which force a strictly smaller type",
        },
        "allowed_isogeny_degrees": sorted([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11,
                                           12, 13, 15, 16, 17, 18, 21, 25, 37]),
        "groups": records,
        "pairs": groups_json["pairs"],
        "containment": poset,
        "part_a": {"mod_p": PART_A_MOD_P, "adic": PART_A_ADIC},
        "posrank_genus1": {"mod_p": posrank_mod_p, "adic": posrank_adic,
                           "phantoms": PHANTOM_TYPES},
        "pair_jmaps": pair_jmaps,
        "pair_jmap_lambdas": pair_lambdas,
        "phantoms": phantoms,
        "cm_j_invariants": [str(j) for j in CM_J],
        "finite_j_lists": FINITE_J,
        "examples": EXAMPLES,
        "search_models": {
            "triple_sextic": [str(c) for c in triple.coeffs],
            "s1_sextic": [str(c) for c in f.coeffs],
            "s1_points": [["0", "2"], ["0", "-2"], ["3/4", "25/32"],
                          ["3/4", "-25/32"], ["2", "0"], ["inf", "1"],
                          ["inf", "-1"]],
        },
        "maximal_mod_p": sorted(["2B", "2Cn", "3B", "3Nn", "5B", "5Nn", "5S4",
                                 "7B", "7Nn", "7Ns", "11Nn", "13B"]),
        "level_counts_34": {"2": 3, "3": 4, "4": 2, "5": 9, "7": 6, "8": 2,
                            "9": 1, "11": 1, "13": 6},
    }

    out = os.path.join(DATA, "catalog.json")
    with open(out, "w") as fobj:
        json.dump(catalog, fobj, indent=1, sort_keys=True)
    print("wrote", out, os.path.getsize(out), "bytes")
    print("records:", len(records))


if __name__ == "__main__":
    main()

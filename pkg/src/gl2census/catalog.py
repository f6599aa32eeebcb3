"""Embedded catalog of labeled GL2 subgroups and arithmetic fixtures.

Loads the single shipped data file (``data/catalog.json``) and validates every
record against the group/curve machinery before anything else may use it:
transcription errors must fail loudly at load time, not corrupt
classifications later.

The catalog contains:

* the 34 infinite-family groups (29 mod-p with ``-I``, 5 of prime-power
  composite level) with genus profiles and, where available, j-maps;
* fine (``-I``-free) Borel classes at 3 and 5, keyed by the orders of their
  diagonal characters;
* the excluded genus-3 level-13 groups and the finite-j-list labels;
* the pair census (206 cross-prime pairs, 54 composite-level pairs) with
  genera, the part-(A) pair lists, positive-rank genus-1 fixtures, and the
  two phantom types;
* pair j-maps for the quadratic 2-side types, the CM j-invariant set,
  hyperelliptic search models, and example curves.
"""

from __future__ import annotations

import difflib
import json
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .modmatrix import Subgroup
from .modcurve import CurveProfile, genus_profile
from .ratq import Polynomial, RationalFunction

_DATA_FILE = os.path.join(os.path.dirname(__file__), "data", "catalog.json")

EXPECTED_LEVEL_COUNTS = {2: 3, 3: 4, 4: 2, 5: 9, 7: 6, 8: 2, 9: 1, 11: 1, 13: 6}
MAXIMAL_MOD_P = frozenset(
    {"2B", "2Cn", "3B", "3Nn", "5B", "5Nn", "5S4", "7B", "7Nn", "7Ns",
     "11Nn", "13B"})


class CatalogError(Exception):
    """Raised for unknown labels, missing fixtures, or a corrupt data file."""


@dataclass(frozen=True)
class GroupRecord:
    label: str
    level: int
    family: str  # mod_p | adic | fine | excluded | finite
    contains_minus_I: bool
    maximal: bool
    group: Optional[Subgroup] = None
    profile: Optional[CurveProfile] = None
    j_map: Optional[RationalFunction] = None
    j_list: Optional[tuple] = None
    example_curve: Optional[str] = None
    signature: Optional[tuple] = None
    pm_label: Optional[str] = None
    forced_isogeny: Optional[int] = None
    implied_torsion: Optional[int] = None

    @property
    def implied_isogeny(self):
        return self.forced_isogeny

    @property
    def stable_line_count(self):
        if self.group is None:
            return None
        g = self.group.adjoin_minus_identity()
        return min(len(g.stable_lines()), 2)


def _ratfun(rec):
    if rec is None:
        return None
    num = Polynomial([Fraction(c) for c in rec["num"]])
    den = Polynomial([Fraction(c) for c in rec["den"]])
    return RationalFunction(num, den)


class Catalog:
    """Validated, read-only view of the shipped data file."""

    def __init__(self, path=_DATA_FILE):
        with open(path) as f:
            self._raw = json.load(f)
        self._records = {}
        self._build()
        self._validate()

    # ------------------------------------------------------------ building
    def _build(self):
        for label, rec in self._raw["groups"].items():
            group = None
            profile = None
            if rec.get("generators") is not None:
                group = Subgroup(
                    rec["level"], [tuple(m) for m in rec["generators"]])
            if rec.get("profile") is not None:
                widths = tuple(rec.get("cusp_widths") or ())
                profile = CurveProfile(*rec["profile"], cusp_widths=widths)
            self._records[label] = GroupRecord(
                label=label,
                level=rec["level"],
                family=rec["family"],
                contains_minus_I=rec["contains_minus_I"],
                maximal=bool(rec.get("maximal")),
                group=group,
                profile=profile,
                j_map=_ratfun(rec.get("j_map")),
                j_list=tuple(Fraction(j) for j in rec["j_list"]) if rec.get("j_list") else None,
                example_curve=rec.get("example_curve"),
                signature=tuple(rec["signature"]) if rec.get("signature") else None,
                pm_label=rec.get("pm_label"),
                forced_isogeny=rec.get("forced_isogeny"),
                implied_torsion=rec.get("implied_torsion"),
            )

        self.pairs_mod_p = [(a, b, g) for a, b, g in self._raw["pairs"]["mod_p"]]
        self.pairs_adic = [(a, b, g) for a, b, g in self._raw["pairs"]["adic"]]
        self.part_a = {k: [tuple(p) for p in v]
                       for k, v in self._raw["part_a"].items()}
        self.posrank_genus1 = {k: [tuple(p) for p in v]
                               for k, v in self._raw["posrank_genus1"].items()}
        self.containment = {k: tuple(v)
                            for k, v in self._raw["containment"].items()}
        self.allowed_isogeny_degrees = frozenset(
            self._raw["allowed_isogeny_degrees"])
        self._cm = frozenset(Fraction(j)
                             for j in self._raw["cm_j_invariants"])
        self.pair_jmaps = {tuple(k.split(",")): _ratfun(v)
                           for k, v in self._raw["pair_jmaps"].items()}
        self.pair_jmap_lambdas = {
            tuple(k.split(",")): Fraction(v)
            for k, v in self._raw["pair_jmap_lambdas"].items()}
        self.phantoms = self._raw["phantoms"]
        self.examples = {k: tuple(v) for k, v in self._raw["examples"].items()}
        sm = self._raw["search_models"]
        self.triple_sextic = Polynomial(
            [Fraction(c) for c in sm["triple_sextic"]])
        self.s1_sextic = Polynomial([Fraction(c) for c in sm["s1_sextic"]])
        self.s1_points = [(x if x == "inf" else Fraction(x), Fraction(y))
                          for x, y in sm["s1_points"]]

    # ---------------------------------------------------------- validation
    def _validate(self):
        counts = {}
        for rec in self._records.values():
            if rec.family in ("mod_p", "adic"):
                counts[rec.level] = counts.get(rec.level, 0) + 1
        if counts != EXPECTED_LEVEL_COUNTS:
            raise CatalogError("level counts of the 34 infinite-family "
                               "groups are %r" % (counts,))
        maximal = {r.label for r in self._records.values()
                   if r.family == "mod_p" and r.maximal}
        if maximal != set(MAXIMAL_MOD_P):
            raise CatalogError("maximal mod-p labels are %r" % (maximal,))
        for rec in self._records.values():
            self._validate_record(rec)
        if len(self.pairs_mod_p) != 206:
            raise CatalogError("mod-p pair census has %d rows"
                               % len(self.pairs_mod_p))
        if len(self.pairs_adic) != 54:
            raise CatalogError("adic pair census has %d rows"
                               % len(self.pairs_adic))
        if len(self._cm) != 13:
            raise CatalogError("CM j-invariant set has %d elements"
                               % len(self._cm))

    def _validate_record(self, rec):
        g = rec.group
        if g is None:
            if rec.family not in ("finite",):
                raise CatalogError("%s: missing generators" % rec.label)
            return
        if g.contains_minus_identity() != rec.contains_minus_I:
            raise CatalogError("%s: -I flag does not match group" % rec.label)
        if not g.det_surjective():
            raise CatalogError("%s: determinant not surjective" % rec.label)
        if rec.profile is not None:
            prof = genus_profile(g)
            stored = rec.profile
            if (prof.d, prof.nu2, prof.nu3, prof.cusps, prof.genus) != (
                    stored.d, stored.nu2, stored.nu3, stored.cusps,
                    stored.genus):
                raise CatalogError("%s: stored profile %r != computed %r"
                                   % (rec.label, stored, prof))
        if rec.forced_isogeny is not None and rec.family in ("mod_p", "fine"):
            p = _level_prime(rec.level)
            expected = p ** rec.stable_line_count
            if rec.forced_isogeny != expected:
                raise CatalogError("%s: forced isogeny %r != %r"
                                   % (rec.label, rec.forced_isogeny, expected))
        if rec.implied_torsion is not None:
            if not g.fixed_points():
                raise CatalogError("%s: implied torsion without fixed points"
                                   % rec.label)

    # ------------------------------------------------------------- queries
    def lookup(self, label):
        try:
            return self._records[label]
        except KeyError:
            by_fold = {}
            for lab in self._records:
                by_fold.setdefault(lab.lower(), lab)
            near = [by_fold[m] for m in difflib.get_close_matches(
                label.lower(), by_fold, n=3)]
            raise CatalogError("unknown label %r; nearest: %s"
                               % (label, ", ".join(near) or "(none)"))

    def labels(self, family=None, level=None):
        out = []
        for lab, rec in self._records.items():
            if family is not None and rec.family != family:
                continue
            if level is not None and rec.level != level:
                continue
            out.append(lab)
        return sorted(out)

    def cm_j_invariants(self):
        return set(self._cm)

    def finite_j_list(self, label):
        rec = self.lookup(label)
        if rec.j_map is not None:
            raise CatalogError("%s is not a finite-list label (it has a "
                               "j-map)" % label)
        if rec.j_list is None:
            raise CatalogError("%s has no finite j-list" % label)
        return list(rec.j_list)

    def eleven_nn_membership(self, j):
        """Rational-section test for membership in the level-11 normalizer
        family.  The section polynomials A, B, C are an external fixture that
        is not shipped; without them the test cannot run."""
        raise CatalogError(
            "11Nn membership fixtures (section polynomials A, B, C) are "
            "missing from this build; classification at 11 falls back to "
            "trace fingerprinting")

    def contained_in(self, label):
        """Strictly larger stored labels at the same level (up to conjugacy,
        after adjoining -I)."""
        return self.containment.get(label, ())


_lock = threading.Lock()
_instance = None


def load():
    """The shared, validated catalog instance."""
    global _instance
    with _lock:
        if _instance is None:
            _instance = Catalog()
    return _instance


def _level_prime(n):
    for p in (2, 3, 5, 7, 11, 13, 17, 37):
        if n % p == 0:
            return p
    raise CatalogError("level %d has no small prime divisor" % n)

"""Command-line interface.

Commands: image, serre, type, genus, census, preimage, search, batch.
Exit codes: 0 success, 1 usage error, 2 math/domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import analysis, catalog, galimage
from .ecq import EllipticCurveQ, SingularCurveError
from .modcurve import genus_profile
from .modmatrix import full_group
from .ratq import INF, ratfun_preimages

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
MIN_SAMPLES = 32


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        raise SystemExit(EXIT_USAGE)


def parse_curve(spec):
    """'label,a1,a2,a3,a4,a6' or 'a1,a2,a3,a4,a6'."""
    parts = [p.strip() for p in spec.split(",")]
    label = None
    if len(parts) == 6:
        label, parts = parts[0], parts[1:]
    if len(parts) != 5:
        raise ValueError("curve spec needs 5 coefficients "
                         "(optionally preceded by a label)")
    return EllipticCurveQ(*[Fraction(p) for p in parts], label=label)


def _emit(obj):
    print(json.dumps(obj, indent=2, default=str))


def cmd_image(args):
    E = parse_curve(args.curve)
    rep = galimage.mod_p_image(E, args.p, assume=not args.no_assumptions)
    _emit({"curve": args.curve, "p": args.p, "label": rep.label,
           "method": rep.method, "confidence": rep.confidence,
           "assumptions": list(rep.assumptions)})
    return EXIT_OK


def cmd_serre(args):
    E = parse_curve(args.curve)
    rec = galimage.exceptional_type(E, assume=not args.no_assumptions)
    rec["value"] = rec["serre_constant"]
    _emit(rec)
    return EXIT_OK


def cmd_type(args):
    E = parse_curve(args.curve)
    _emit(galimage.exceptional_type(E, assume=not args.no_assumptions))
    return EXIT_OK


def cmd_genus(args):
    cat = catalog.load()
    if args.labels == "full":
        if not args.level:
            raise ValueError("'genus full' needs --level")
        prof = genus_profile(full_group(args.level))
    else:
        labels = [l.strip() for l in args.labels.split(",")]
        profs = []
        for lab in labels:
            rec = cat.lookup(lab)
            if rec.profile is None:
                raise catalog.CatalogError(
                    "%s has no stored curve profile" % lab)
            profs.append(rec.profile)
        from .modcurve import product_profile
        prof = profs[0] if len(profs) == 1 else product_profile(profs)
    _emit(prof.as_dict())
    return EXIT_OK


def cmd_census(args):
    if args.kind == "pairs":
        rows = analysis.enumerate_exceptional_pairs()
    elif args.kind == "adic-pairs":
        rows = analysis.enumerate_adic_pairs()
    elif args.kind == "triples":
        rows = analysis.triple_scan()
    else:
        raise ValueError("unknown census kind %r" % args.kind)
    rows = sorted(rows, key=lambda r: (r.level, r.labels))
    if args.histogram:
        _emit({str(k): v for k, v in
               sorted(analysis.genus_histogram(rows, cap=args.cap).items())})
    else:
        w = csv.writer(sys.stdout)
        w.writerow(["labels", "level", "genus", "index", "nu2", "nu3",
                    "cusps"])
        for r in rows:
            w.writerow(["|".join(r.labels), r.level, r.genus, *r.profile])
    return EXIT_OK


def cmd_preimage(args):
    cat = catalog.load()
    rec = cat.lookup(args.label)
    if rec.j_map is None:
        raise catalog.CatalogError("%s has no j-map" % args.label)
    j = INF if args.j == "inf" else Fraction(args.j)
    pres = ratfun_preimages(rec.j_map, j)
    _emit({"label": args.label, "j": str(args.j),
           "preimages": [str(t) for t in pres],
           "member": bool(pres)})
    return EXIT_OK


def cmd_search(args):
    if args.model == "triple":
        pts = analysis.search_triple_fixture(args.height)
    elif args.model == "s1":
        pts = analysis.search_s1_fixture(args.height)
    else:
        from .ratq import Polynomial
        coeffs = [Fraction(c) for c in args.model.split(",")]
        pts = analysis.bounded_point_search(Polynomial(coeffs), args.height)
    _emit([{"x": str(p.coordinates[0]), "y": str(p.coordinates[1]),
            "height": p.height, "cusp": p.cusp_flag, "cm": p.cm_flag}
           for p in pts])
    return EXIT_OK


def cmd_batch(args):
    try:
        lines = open(args.input).read().splitlines()
    except OSError as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_USAGE
    out = open(args.output, "w") if args.output != "-" else sys.stdout
    n = ok = 0
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        n += 1
        rec = {"input": line}
        try:
            E = parse_curve(line)
            rec.update(galimage.exceptional_type(
                E, assume=not args.no_assumptions))
            rec["status"] = "ok"
            ok += 1
        except SingularCurveError:
            rec["status"] = "singular"
        except galimage.CMCurveError:
            rec["status"] = "cm"
        except ValueError as e:
            rec["status"] = "error"
            rec["message"] = str(e)
        out.write(json.dumps(rec, sort_keys=True, default=str) + "\n")
    if out is not sys.stdout:
        out.close()
    sys.stderr.write("%d curves, %d classified\n" % (n, ok))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="gl2census",
                description="Galois image labels, Serre constants, and the "
                            "modular-curve pair census for elliptic curves "
                            "over Q")
    p.add_argument("--seed", type=int, default=0,
                   help="RNG seed (outputs are deterministic by default)")
    p.add_argument("--samples", type=int, default=120,
                   help="number of good primes used for fingerprinting")
    sub = p.add_subparsers(dest="command", required=True)

    def curve_cmd(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("--curve", required=True,
                        help="'label,a1,a2,a3,a4,a6' or 'a1,...,a6'")
        sp.add_argument("--no-assumptions", action="store_true")
        sp.set_defaults(fn=fn)
        return sp

    sp = curve_cmd("image", cmd_image, help="mod-p image label")
    sp.add_argument("-p", type=int, required=True)
    curve_cmd("serre", cmd_serre, help="Serre's constant A(E)")
    curve_cmd("type", cmd_type, help="full adically-exceptional type report")

    sp = sub.add_parser("genus", help="genus profile of a label list")
    sp.add_argument("labels", help="comma-separated labels, or 'full'")
    sp.add_argument("--level", type=int)
    sp.set_defaults(fn=cmd_genus)

    sp = sub.add_parser("census", help="pair/triple censuses")
    sp.add_argument("kind", choices=["pairs", "adic-pairs", "triples"])
    sp.add_argument("--histogram", action="store_true")
    sp.add_argument("--cap", type=int, default=20)
    sp.set_defaults(fn=cmd_census)

    sp = sub.add_parser("preimage", help="j-map membership")
    sp.add_argument("--label", required=True)
    sp.add_argument("-j", required=True)
    sp.set_defaults(fn=cmd_preimage)

    sp = sub.add_parser("search", help="bounded-height point search")
    sp.add_argument("--model", required=True,
                    help="'triple', 's1', or ascending sextic coefficients")
    sp.add_argument("-H", "--height", type=int, default=100)
    sp.set_defaults(fn=cmd_search)

    sp = sub.add_parser("batch", help="classify a CSV of curves")
    sp.add_argument("input")
    sp.add_argument("output", nargs="?", default="-")
    sp.add_argument("--no-assumptions", action="store_true")
    sp.set_defaults(fn=cmd_batch)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else EXIT_USAGE
    if args.samples < MIN_SAMPLES:
        sys.stderr.write("error: --samples must be >= %d\n" % MIN_SAMPLES)
        return EXIT_USAGE
    random.seed(args.seed)
    try:
        return args.fn(args)
    except (SingularCurveError, galimage.CMCurveError,
            catalog.CatalogError, ValueError, ZeroDivisionError) as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

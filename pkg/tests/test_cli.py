import json

import pytest

from gl2census import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCurveCommands:
    def test_image(self, capsys):
        code, out, _ = run(capsys, "image",
                           "--curve", "50a1,1,0,1,-126,-552", "-p", "3")
        assert code == 0
        rec = json.loads(out)
        assert rec["label"] == "3B.1.2"

    def test_serre_value(self, capsys):
        code, out, _ = run(capsys, "serre",
                           "--curve", "50a1,1,0,1,-126,-552")
        assert code == 0
        assert json.loads(out)["value"] == 120

    def test_type_assumptions_flagged(self, capsys):
        code, out, _ = run(capsys, "type", "--curve", "1,0,0,0,3")
        rec = json.loads(out)
        assert code == 0
        assert "strong-uniformity" in rec["assumptions"]

    def test_cm_curve_is_domain_error(self, capsys):
        code, _, err = run(capsys, "serre", "--curve", "0,0,0,0,1")
        assert code == cli.EXIT_DOMAIN
        assert "CM" in err

    def test_singular_curve_is_domain_error(self, capsys):
        code, _, _ = run(capsys, "serre", "--curve", "0,0,0,0,0")
        assert code == cli.EXIT_DOMAIN

    def test_usage_error(self, capsys):
        code, _, _ = run(capsys, "image", "--curve", "1,2,3", "-p", "3")
        assert code == cli.EXIT_DOMAIN  # parseable args, bad curve spec
        code, _, _ = run(capsys, "frobnicate")
        assert code == cli.EXIT_USAGE

    def test_samples_floor(self, capsys):
        code, _, err = run(capsys, "--samples", "4", "serre",
                           "--curve", "1,0,0,0,3")
        assert code == cli.EXIT_USAGE


class TestGenus:
    def test_label(self, capsys):
        code, out, _ = run(capsys, "genus", "13S4")
        assert code == 0 and json.loads(out)["genus"] == 3

    def test_product(self, capsys):
        code, out, _ = run(capsys, "genus", "3Nn,5B,2B")
        assert code == 0 and json.loads(out)["genus"] == 2

    def test_full(self, capsys):
        code, out, _ = run(capsys, "genus", "full", "--level", "7")
        assert code == 0 and json.loads(out)["genus"] == 0

    def test_unknown_label(self, capsys):
        code, _, err = run(capsys, "genus", "13S5")
        assert code == cli.EXIT_DOMAIN
        assert "13S4" in err  # nearest-label suggestion


class TestCensus:
    def test_pairs(self, capsys):
        code, out, _ = run(capsys, "census", "pairs")
        assert code == 0
        assert len(out.strip().splitlines()) == 207  # header + 206

    def test_adic(self, capsys):
        code, out, _ = run(capsys, "census", "adic-pairs")
        assert len(out.strip().splitlines()) == 55

    def test_triples(self, capsys):
        code, out, _ = run(capsys, "census", "triples")
        lines = out.strip().splitlines()
        assert len(lines) == 2 and "3Nn" in lines[1]

    def test_histogram(self, capsys):
        code, out, _ = run(capsys, "census", "pairs", "--histogram")
        hist = json.loads(out)
        assert hist["0"] == 12 and hist["20"] == 65


class TestPreimageSearch:
    def test_preimage_member(self, capsys):
        code, out, _ = run(capsys, "preimage", "--label", "3Nn", "-j", "-64")
        rec = json.loads(out)
        assert rec["member"] and "-4" in rec["preimages"]

    def test_preimage_nonmember(self, capsys):
        code, out, _ = run(capsys, "preimage", "--label", "3Nn",
                           "-j=-4096/11")
        assert not json.loads(out)["member"]

    def test_search_triple(self, capsys):
        code, out, _ = run(capsys, "search", "--model", "triple", "-H", "40")
        pts = json.loads(out)
        assert len(pts) == 4 and all(p["cusp"] for p in pts)


class TestBatch:
    def test_batch(self, tmp_path, capsys):
        inp = tmp_path / "curves.csv"
        inp.write_text("50a1,1,0,1,-126,-552\n"
                       "3891b1,1,0,0,0,3\n"
                       "bad,0,0,0,0,0\n"
                       "cm,0,0,0,0,1\n")
        outp = tmp_path / "out.jsonl"
        code, _, err = run(capsys, "batch", str(inp), str(outp))
        assert code == 0
        lines = [json.loads(l) for l in outp.read_text().splitlines()]
        assert len(lines) == 4
        by_status = {}
        for rec in lines:
            by_status.setdefault(rec["status"], []).append(rec)
        assert len(by_status["ok"]) == 2
        assert len(by_status["singular"]) == 1
        assert len(by_status["cm"]) == 1
        constants = {r["label"]: r["serre_constant"]
                     for r in by_status["ok"]}
        assert constants == {"50a1": 120, "3891b1": 1}
        assert "4 curves, 2 classified" in err

    def test_batch_deterministic(self, tmp_path, capsys):
        inp = tmp_path / "curves.csv"
        inp.write_text("t3n,1,0,1,0,0\n")
        outs = []
        for name in ("a.jsonl", "b.jsonl"):
            outp = tmp_path / name
            run(capsys, "batch", str(inp), str(outp))
            outs.append(outp.read_text())
        assert outs[0] == outs[1]

    def test_batch_empty(self, tmp_path, capsys):
        inp = tmp_path / "empty.csv"
        inp.write_text("")
        code, _, err = run(capsys, "batch", str(inp), "-")
        assert code == 0 and "0 curves" in err

    def test_batch_missing_input(self, tmp_path, capsys):
        code, _, _ = run(capsys, "batch", str(tmp_path / "nope.csv"), "-")
        assert code == cli.EXIT_USAGE

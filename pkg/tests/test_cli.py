from __future__ import annotations

import json

import pytest

from softtopo.cli import main
from softtopo.document import parse

from conftest import fixture_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- verify -------------------------------------------------------------------

def test_verify_valid(capsys):
    code, out, err = run(capsys, "verify", fixture_path("ex23.json"))
    assert (code, out, err) == (0, "valid topology\n", "")


def test_verify_invalid_topology(capsys):
    code, out, _ = run(capsys, "verify", fixture_path("not_closed.json"))
    assert code == 1
    assert out == (
        "not a valid topology:\n"
        "  - intersection-closure: (SoftSet(e1:{a}, e2:{a,b}), "
        "SoftSet(e1:{a,b}, e2:{a})) -> SoftSet(e1:{a}, e2:{a}) missing\n"
    )


def test_verify_document_error(capsys):
    code, out, err = run(capsys, "verify", fixture_path("invalid/missing_slice.json"))
    assert code == 2 and out == ""
    assert err == "error: $.sets.F: set 'F' is missing the slice for parameter 'e2'\n"


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json", fixture_path("ex23.json"))
    assert code == 0
    assert json.loads(out) == {"command": "verify", "valid": True, "violations": []}


def test_verify_needs_topology(capsys):
    code, out, err = run(capsys, "verify", fixture_path("ex22.json"))
    assert code == 2
    assert "document carries no topology" in err


# --- check --------------------------------------------------------------------

def test_check_hausdorff(capsys):
    code, out, _ = run(capsys, "check", "hausdorff", fixture_path("ex23.json"))
    assert code == 1
    assert out == "hausdorff: fails\n  counterexample: [(a,a), (b,b)]\n"

    code, out, _ = run(capsys, "check", "hausdorff", fixture_path("tau_full_2x2.json"))
    assert code == 0
    assert out == "hausdorff: holds\n  witness: [(a,a), (b,b), ({a},{a}), ({b},{b})]\n"


def test_check_regular_literal_flag(capsys):
    code, out, _ = run(capsys, "check", "regular", fixture_path("tau_full_2x2.json"))
    assert code == 0 and out.startswith("regular: holds")
    code, out, _ = run(
        capsys, "check", "regular", "--literal-disjointness",
        fixture_path("tau_full_2x2.json"),
    )
    assert code == 1
    assert out == "regular: fails\n  counterexample: [({b},{b}), (a,a)]\n"


def test_check_baire(capsys):
    code, out, _ = run(capsys, "check", "baire", fixture_path("ex23.json"))
    assert code == 0
    assert out == "baire: holds\n  rare_closed: 2\n  union_interior: ({},{})\n"


def test_check_compactness_family(capsys):
    code, out, _ = run(capsys, "check", "quasi-compact", fixture_path("ex23.json"))
    assert code == 0
    assert "every open cover is a subfamily" in out

    code, out, _ = run(capsys, "check", "compact", fixture_path("ex23.json"))
    assert code == 1
    assert out == "compact: fails\n  quasi_compact: True\n  hausdorff: False\n"

    code, out, _ = run(
        capsys, "check", "compact-set", fixture_path("tau_full_2x2.json"), "--set", "M1"
    )
    assert code == 0
    assert out == (
        "compact-set: holds\n  set: M1\n"
        "  admissible: True\n  complement_admissible: True\n"
    )

    code, out, _ = run(capsys, "check", "locally-compact", fixture_path("tau_full_2x2.json"))
    assert (code, out) == (0, "locally-compact: holds\n")


def test_check_set_scoped_requires_set(capsys):
    code, _, err = run(capsys, "check", "compact-set", fixture_path("tau_full_2x2.json"))
    assert code == 2
    assert err == "error: check compact-set requires --set NAME\n"


def test_check_category(capsys):
    code, out, _ = run(
        capsys, "check", "nowhere-dense", fixture_path("ex23.json"), "--set", "F"
    )
    assert code == 1 and out == "nowhere-dense: fails\n  set: F\n"

    code, out, _ = run(
        capsys, "check", "first-category", fixture_path("ex23.json"), "--set", "F"
    )
    assert code == 1
    assert out == "first-category: fails\n  set: F\n  verdict: second-category\n  pieces: 0\n"


# --- compute ------------------------------------------------------------------

def test_compute_closure_interior(capsys):
    code, out, _ = run(
        capsys, "compute", "closure", fixture_path("ex23.json"), "--set", "F"
    )
    assert (code, out) == (0, "closure(F) = ({b,c,d},{a,c,d})\n")
    code, out, _ = run(
        capsys, "compute", "interior", fixture_path("ex23.json"), "--set", "G"
    )
    assert (code, out) == (0, "interior(G) = ({a},{b})\n")


def test_compute_limiting_readings(capsys):
    code, out, _ = run(
        capsys, "compute", "limiting", fixture_path("ex23.json"), "--set", "F"
    )
    assert (code, out) == (0, "limiting(F) [per-parameter] = (b,a) (b,d) (d,a) (d,d)\n")
    code, out, _ = run(
        capsys, "compute", "limiting", fixture_path("ex23.json"), "--set", "F",
        "--reading", "whole-open",
    )
    assert code == 0
    assert out == (
        "limiting(F) [whole-open] = (a,a) (a,d) (b,a) (b,b) (b,d) (d,a) (d,b) (d,d)\n"
    )


# --- elements -----------------------------------------------------------------

def test_elements_listing(capsys):
    code, out, _ = run(capsys, "elements", fixture_path("ex23.json"), "--set", "F1")
    assert (code, out) == (0, "F1: 1 soft elements\n  (a,b)\n")


def test_elements_guard(capsys, tmp_path):
    # 40^4 soft elements sits past the million-element guard
    doc = {
        "format": "soft-space/1",
        "universe": {
            "points": [f"p{i}" for i in range(40)],
            "params": [f"e{i}" for i in range(4)],
        },
    }
    path = tmp_path / "big.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, err = run(capsys, "elements", str(path), "--set", "ABS")
    assert code == 2 and out == ""
    assert "exceeds the guard" in err and "--force" in err


# --- subspace -----------------------------------------------------------------

def test_subspace_text(capsys):
    code, out, _ = run(
        capsys, "subspace", fixture_path("ex31.json"), "--points", "a,c"
    )
    assert code == 0
    assert out == (
        "subspace on {a,c}:\n"
        "  PHI = ({},{})\n"
        "  ABS = ({a,c},{a,c})\n"
        "  F_Y = ({a},{c})\n"
        "  G_Y = ({c},{a})\n"
    )


def test_subspace_violation(capsys):
    code, out, _ = run(
        capsys, "subspace", fixture_path("ex31.json"), "--points", "b,c,d"
    )
    assert code == 1
    assert out == (
        "subspace preconditions violated: "
        "member 2 meets the carrier outside the admissible family; "
        "member 3 meets the carrier outside the admissible family\n"
    )


def test_subspace_json_reparses(capsys):
    code, out, _ = run(
        capsys, "subspace", "--format", "json", fixture_path("ex31.json"),
        "--points", "a,c",
    )
    assert code == 0
    doc = parse(out)
    assert doc.absolute_name == "Y"
    assert doc.topology_names == ("PHI", "ABS", "F_Y", "G_Y")
    assert doc.topology is not None
    u = doc.universe
    assert u.points == ("a", "b", "c", "d")
    assert doc.topology.absolute == doc.sets["Y"]


# --- map check ------------------------------------------------------------------

def test_map_check_divergence(capsys):
    code, out, _ = run(
        capsys, "map", "check", "--fn", "f",
        "--domain", fixture_path("map_domain.json"),
        "--codomain", fixture_path("map_codomain.json"),
    )
    assert code == 1
    assert out == (
        "definitional: continuous\n"
        "preimage:     not continuous\n"
        "criteria diverge\n"
    )


def test_map_check_agreement(capsys):
    code, out, _ = run(
        capsys, "map", "check", "--fn", "f",
        "--domain", fixture_path("map_domain.json"),
        "--codomain", fixture_path("map_domain.json"),
    )
    assert code == 0
    assert out.endswith("criteria agree\n")


def test_map_check_unknown_function(capsys):
    code, _, err = run(
        capsys, "map", "check", "--fn", "g",
        "--domain", fixture_path("map_domain.json"),
        "--codomain", fixture_path("map_codomain.json"),
    )
    assert code == 2 and "no function named 'g'" in err


# --- fuzz ---------------------------------------------------------------------

def test_fuzz_vacuity_detector(capsys):
    code, out, _ = run(
        capsys, "fuzz", "--case", "thm_4_6_vacuity", "--trials", "5", "--seed", "3"
    )
    assert code == 0
    assert out == (
        "case thm_4_6_vacuity: all-skipped\n"
        "  trials=5 confirmed=0 skipped=5 counterexamples=0\n"
        "  seed=3 points=4 params=2 algorithm=split-sha256/mt19937-v1\n"
        "  separated draws: 5 (sampled 0, fallbacks 5, attempts 10)\n"
    )


def test_fuzz_seed_env_default(capsys, monkeypatch):
    monkeypatch.setenv("SOFTTOPO_SEED", "3")
    code, out, _ = run(
        capsys, "fuzz", "--case", "thm_4_6_vacuity", "--trials", "5"
    )
    assert code == 0 and "seed=3" in out


def test_fuzz_unknown_case(capsys):
    code, _, err = run(capsys, "fuzz", "--case", "nope", "--trials", "1")
    assert code == 2
    assert err.startswith("error: unknown case 'nope'; known cases: ")


def test_fuzz_counterexample_sidecar(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    report_path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "fuzz", "--case", "prop_4_1a", "--trials", "100", "--seed", "23",
        "--points", "2", "--params", "2", "--out", str(report_path),
    )
    assert code == 1
    sidecar = tmp_path / "report.json.counterexample.json"
    assert f"minimal counterexample written to {sidecar}" in out
    assert report_path.exists() and sidecar.exists()
    payload = json.loads(report_path.read_text(encoding="utf-8"))
    assert payload["case"] == "prop_4_1a"
    assert payload["verdict"] == "counterexample"
    # the sidecar is itself a canonical space document
    parse(sidecar.read_text(encoding="utf-8"))

    # without --out the sidecar lands in the working directory, by case name
    code, out, _ = run(
        capsys, "fuzz", "--case", "prop_4_1a", "--trials", "100", "--seed", "23",
        "--points", "2", "--params", "2",
    )
    assert code == 1
    assert (tmp_path / "prop_4_1a.counterexample.json").exists()


def test_fuzz_json_report_matches_out_file(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run(
        capsys, "fuzz", "--format", "json", "--case", "thm_4_6_vacuity",
        "--trials", "5", "--seed", "3", "--out", str(out_path),
    )
    assert code == 0
    assert out == out_path.read_text(encoding="utf-8")
    payload = json.loads(out)
    assert payload["algorithm"] == "split-sha256/mt19937-v1"
    assert payload["verdict"] == "all-skipped"

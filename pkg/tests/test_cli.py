"""Problem-file parsing, run reports, exit codes, byte determinism."""

import json
from fractions import Fraction

import pytest

from hptmaster import cli

F = Fraction


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def report_of(out):
    doc = json.loads(out)
    assert doc["schema"] == "hptmaster/1"
    return doc


def test_validate_dgla_ok(fixture_dir, capsys):
    code, out, err = run(["validate", str(fixture_dir / "l3.json")], capsys)
    assert code == 0
    doc = report_of(out)
    assert doc["kind"] == "dgla"
    assert doc["verdict"]["passed"]
    assert "elapsed" in err


def test_validate_broken_jacobi_exit_one(fixture_dir, capsys):
    code, out, _ = run(
        ["validate", str(fixture_dir / "broken_jacobi.json")], capsys)
    assert code == 1
    doc = report_of(out)
    assert not doc["verdict"]["jacobi"]
    assert doc["verdict"]["jacobi_witness"]


def test_validate_bad_rational_exit_two(fixture_dir, capsys):
    code, out, err = run(
        ["validate", str(fixture_dir / "bad_rational.json")], capsys)
    assert code == 2
    assert out == ""
    assert "bad rational" in err


def test_parse_error_reports_location(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"basis": [\n  ["x", 0],,\n]}')
    code, out, err = run(["validate", str(path)], capsys)
    assert code == 2
    assert "line 2" in err


def test_missing_file_exit_two(tmp_path, capsys):
    code, _, err = run(["validate", str(tmp_path / "nope.json")], capsys)
    assert code == 2
    assert "cannot read" in err


def test_transfer_check_passes(fixture_dir, capsys):
    code, out, _ = run(
        ["transfer", str(fixture_dir / "l3.json"), "--check"], capsys)
    assert code == 0
    doc = report_of(out)
    assert doc["checks"]["master_equation"]
    assert doc["checks"]["sh_lie"]
    # the ternary operation survives on homology
    assert "arity_3" in doc["result"]["coderivation"]
    assert "l3" in doc["result"]["brackets"]
    assert "l2" not in doc["result"]["brackets"]


def test_transfer_rejects_truncation_and_kind(fixture_dir, capsys):
    code, _, err = run(
        ["transfer", str(fixture_dir / "l3.json"),
         "--max-word-length", "1"], capsys)
    assert code == 2
    code, _, err = run(
        ["transfer", str(fixture_dir / "kahler_bv.json")], capsys)
    assert code == 2
    assert "dg Lie" in err


def test_transfer_byte_determinism(fixture_dir, tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        code, _, _ = run(
            ["transfer", str(fixture_dir / "l3.json"), "--check",
             "--output", str(out)], capsys)
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cohomological_grading_flip(tmp_path, capsys):
    # same dg Lie algebra presented cohomologically must validate
    doc = {
        "grading": "cohomological",
        "basis": [["x", 0], ["u", -1], ["v", 0]],
        "differential": [["u", "v", "1"]],
        "bracket": [["x", "u", "u", "2"], ["x", "v", "v", "2"]],
    }
    path = tmp_path / "cohom.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(["validate", str(path)], capsys)
    assert code == 0
    assert report_of(out)["verdict"]["passed"]


def test_bracket_antisymmetry_canonicalized(tmp_path, capsys):
    # the same bracket entered in both orders must cancel out of order,
    # not double; entering only the swapped order must negate
    doc = {
        "basis": [["x", 0], ["y", 0], ["z", 0]],
        "bracket": [["y", "x", "z", "-1"]],
    }
    path = tmp_path / "swapped.json"
    path.write_text(json.dumps(doc))
    kind, g, _ = cli.load_problem(str(path))
    assert kind == "dgla"
    assert g.bracket_table == {(0, 1): {2: F(1)}}


def test_bv_full_pipeline(fixture_dir, capsys):
    code, out, _ = run(["bv", str(fixture_dir / "kahler_bv.json"),
                        "--max-word-length", "3"], capsys)
    assert code == 0
    doc = report_of(out)
    assert doc["axioms"]["passed"]
    assert doc["formality_predicate"]["passed"]
    assert doc["pipeline_report"]["passed"]
    assert doc["pipeline_report"]["tau_k_in_im_delta"]


def test_bv_flat_unit_pipeline(fixture_dir, capsys):
    code, out, _ = run(["bv", str(fixture_dir / "unit_bv.json"),
                        "--pipeline", "flat-unit"], capsys)
    assert code == 0
    doc = report_of(out)
    assert doc["pipeline_report"]["tau_k_avoids_unit"]


def test_bv_broken_axioms_exit_one(fixture_dir, capsys):
    code, out, _ = run(["bv", str(fixture_dir / "bad_bv.json")], capsys)
    assert code == 1
    doc = report_of(out)
    assert not doc["axioms"]["d_delta_commute"]
    assert "pipeline_report" not in doc


def test_massey_default_numbers(capsys):
    code, out, _ = run(["massey"], capsys)
    assert code == 0
    doc = report_of(out)
    assert doc["report"]["parameter_dimension"] == 6
    assert doc["report"]["automorphism_dimension"] == 5
    assert doc["report"]["witness"] == 4
    assert not doc["report"]["formal"]
    mc = doc["mc_equations"]
    assert mc["coordinates"] == ["a", "b"]
    assert any("*" in mono and len(mono.split("*")) == 5
               for poly in mc["equations"].values() for mono in poly)


def test_massey_zero_theta_formal(capsys):
    code, out, _ = run(["massey", "--theta", "zero"], capsys)
    assert code == 0
    doc = report_of(out)
    assert doc["report"]["formal"]
    assert doc["theta"] == {}


def test_massey_seeded_theta_deterministic(capsys):
    code, out1, _ = run(["massey", "--seed", "7"], capsys)
    assert code == 0
    _, out2, _ = run(["massey", "--seed", "7"], capsys)
    assert out1 == out2
    doc = report_of(out1)
    assert not doc["report"]["formal"]


def test_massey_general_wedge(capsys):
    code, out, _ = run(["massey", "--spheres", "3,3", "--order", "5"], capsys)
    assert code == 0
    doc = report_of(out)
    assert doc["free_lie"]["dimensions_by_length"]["5"] == 6
    assert not doc["free_lie"]["experimental_odd_generators"]


def test_massey_bad_input_exit_two(capsys):
    code, _, _ = run(["massey", "--spheres", "1,3"], capsys)
    assert code == 2
    code, _, _ = run(["massey", "--order", "4"], capsys)
    assert code == 2
    code, _, _ = run(["massey", "--spheres", "three"], capsys)
    assert code == 2

"""Command line surface: outputs, exit codes, and byte-stability."""

import copy
import json

import pytest

from orbicensus.cli import main
from orbicensus.golden import load_golden


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_text(capsys):
    code, out, _ = run(capsys, "check", "[2,6,6,6]", "--dim", "2")
    assert code == 0
    assert "uniformizable: yes" in out
    assert "p=2: exponents (1, 1, 1, 1)" in out
    assert "p=3: exponents (1, 1, 1, 0)" in out


def test_check_negative_with_witness(capsys):
    code, out, _ = run(capsys, "check", "[2,3,7,42]", "--dim", "2")
    assert code == 0
    assert "uniformizable: no" in out
    assert "witness" in out


def test_check_single_route(capsys):
    for route in ("prime-power", "lcm"):
        code, out, _ = run(capsys, "check", "[2,6,6,6]", "--dim", "2", "--route", route)
        assert code == 0
        assert "uniformizable: yes" in out


def test_group_text_and_json(capsys):
    code, out, _ = run(capsys, "group", "[2,6,6,6]", "--dim", "2")
    assert code == 0
    assert "Z/2 x Z/6 x Z/6" in out
    assert "72" in out
    code, out, _ = run(capsys, "group", "[2,6,6,6]", "--dim", "2", "--format", "json")
    data = json.loads(out)
    assert data["order"] == 72
    assert data["invariant_factors"] == [2, 6, 6]


def test_euler_routes(capsys):
    code, out, _ = run(capsys, "euler", "[2,6,6,6]", "--dim", "2")
    assert code == 0
    assert "1/3" in out and "24" in out
    code, out, _ = run(capsys, "euler", "[2,6,6,6]", "--dim", "2", "--route", "stratified")
    assert code == 0 and "1/3" in out


def test_cy_output(capsys):
    code, out, _ = run(capsys, "cy", "[2,6,6,6]", "--dim", "2")
    assert code == 0
    assert "defect = 0 (Calabi-Yau)" in out
    assert "delta (moduli) = 0" in out
    code, out, _ = run(
        capsys, "cy", "[2,6,6,6]", "--dim", "2", "--delta-convention", "linear-system"
    )
    assert "8" in out


def test_enumerate_text_total(capsys):
    code, out, _ = run(capsys, "enumerate", "2", "--jobs", "1")
    assert code == 0
    assert out.strip().endswith("total: 13")


def test_enumerate_json_and_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "2", "--jobs", "1", "--format", "json")
    data = json.loads(out)
    assert data["count"] == 13
    assert len(data["signatures"]) == 13
    code, out, _ = run(capsys, "enumerate", "2", "--jobs", "1", "--format", "csv")
    lines = out.strip().split("\n")
    assert len(lines) == 14  # header + 13 rows


def test_enumerate_jobs_byte_stability(capsys):
    _, a, _ = run(capsys, "enumerate", "3", "--jobs", "1")
    _, b, _ = run(capsys, "enumerate", "3", "--jobs", "2")
    assert a == b


def test_census_md_exit_zero_with_known_errata(capsys):
    code, out, _ = run(capsys, "census", "2", "--jobs", "1")
    assert code == 0
    assert "[known]" in out
    assert "[UNKNOWN]" not in out


def test_census_byte_stability(capsys):
    _, a, _ = run(capsys, "census", "3", "--jobs", "1")
    _, b, _ = run(capsys, "census", "3", "--jobs", "1")
    assert a == b


def test_census_json_payload(capsys):
    code, out, _ = run(capsys, "census", "2", "--jobs", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["rows"]) == 14
    assert all(e["known"] for e in data["errata"])
    row1 = data["rows"][0]
    assert row1["order"] == "infinite"


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "1", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("row,signature,degree,order")
    assert len(lines) == 7


def test_census_errata_only(capsys):
    code, out, _ = run(capsys, "census", "3", "--jobs", "1", "--errata-only")
    assert code == 0
    assert out.count("[known]") == 19


def test_census_no_golden(capsys):
    code, out, _ = run(capsys, "census", "2", "--jobs", "1", "--no-golden")
    assert code == 0
    assert "[known]" not in out


def test_census_tampered_golden_exits_three(tmp_path, capsys):
    data = copy.deepcopy(load_golden("dim2"))
    victim = next(r for r in data["rows"] if r["order"] == 72)
    victim["order"] = 71
    target = tmp_path / "dim2.json"
    target.write_text(json.dumps(data))
    code, out, _ = run(capsys, "census", "2", "--jobs", "1", "--golden", str(target))
    assert code == 3
    assert "[UNKNOWN]" in out


def test_lift_documented_example(capsys):
    code, out, _ = run(
        capsys, "lift", "[2_2,3,3,3]", "--dim", "2", "--branch", "2,3,4", "--c", "3"
    )
    assert code == 0
    assert "lift along c=3: [2_6]" in out
    assert "covering degree c^n = 9" in out


def test_lift_branch_indices_follow_the_written_order(capsys):
    # written component 1 is the conic here, so branching on it must fail
    code, _, err = run(
        capsys, "lift", "[2_2,3,3,3]", "--dim", "2", "--branch", "1,2,3", "--c", "3"
    )
    assert code == 1
    assert "linear" in err


def test_enriques_counts(capsys):
    code, out, _ = run(capsys, "enriques", "2")
    assert code == 0
    assert "valid index-2 quotients: 10" in out
    code, out, _ = run(capsys, "enriques", "3", "--extensions")
    assert code == 0
    for value in ("128", "1024", "24576"):
        assert value in out
    code, out, _ = run(capsys, "enriques", "2", "--paranoid", "--format", "json")
    assert json.loads(out)["count"] == 10


def test_exit_code_two_on_syntax(capsys):
    code, _, err = run(capsys, "check", "[1,2]", "--dim", "2")
    assert code == 2
    assert "column" in err


def test_exit_code_two_on_usage(capsys):
    assert run(capsys, "check")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_exit_code_one_on_domain_errors(capsys):
    code, _, err = run(capsys, "group", "[inf,inf,inf]", "--dim", "2")
    assert code == 1 and "finite" in err
    code, _, err = run(capsys, "check", "[2,3,6]", "--dim", "1")
    assert code == 1


def test_every_signature_subcommand_round_trips(capsys):
    # feeding each command its own rendering parses to the same signature
    for cmd in ("check", "group", "euler", "cy"):
        code, out, _ = run(capsys, cmd, "[6,6,2,6]", "--dim", "2", "--format", "json")
        assert code == 0
        assert json.loads(out)["signature"] == "[6,6,6,2]"


def test_version_flag(capsys):
    assert run(capsys, "--version")[0] == 0

import json
import subprocess
import sys

import jsonschema
import pytest

from diagaut.cli import OUTPUT_RECORD_SCHEMA, SCHEMAS, main
from diagaut.torus import InvariantViolation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, command, *argv):
    code, out, err = run(capsys, command, *argv, "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMAS[command])
    return code, payload


def test_invariants_row_twelve(capsys):
    code, out, _ = run(capsys, "invariants", "--order", "12", "--weights", "7,1", "--degree", "6")
    assert code == 0
    assert out.strip() == "X^6 + Y^5*Z + alpha*Y^3*Z^3 + Y*Z^5"


def test_invariants_class_and_weights3(capsys):
    code, out, _ = run(capsys, "invariants", "--order", "21", "--weights3", "0,4,5", "--class", "4")
    assert code == 0
    assert out.strip() == "X^5*Y + Y^5*Z + X*Z^5"


def test_verify_invariant(capsys):
    code, out, _ = run(capsys, "verify", "X^6+Y^6+Z^5X", "--order", "30", "--weights", "5,6")
    assert code == 0 and out.strip() == "invariant, class 0"


def test_verify_offender(capsys):
    code, payload = run_json(capsys, "verify", "X^6+Z^2X^4", "--order", "25", "--weights", "2,15")
    assert code == 1
    assert payload["offenders"] == [{"monomial": [4, 0, 2], "weight": 5}]


def test_bounds_genus_ten(capsys):
    code, payload = run_json(capsys, "bounds", "--genus", "10")
    assert code == 0
    assert [payload[k] for k in list(payload)[1:]] == [756, 42, 90, 21, 36, 88]
    code, out, _ = run(capsys, "bounds", "--degree", "6")
    assert "wiman_element: 42" in out


def test_bounds_small_genus_is_usage_error(capsys):
    code, _, err = run(capsys, "bounds", "--genus", "1")
    assert code == 2 and "genus" in err


def test_stabilizer(capsys):
    code, out, _ = run(capsys, "stabilizer", "X^5Y+Y^5Z+Z^5X")
    assert code == 0 and out.startswith("Z21 (order 21)")
    code, payload = run_json(capsys, "stabilizer", "X^6+Y^6+Z^6")
    assert payload["invariant_factors"] == [6, 6]


def test_stabilizer_infinite(capsys):
    code, _, err = run(capsys, "stabilizer", "X^6+Y^6")
    assert code == 1 and "infinite" in err


def test_smooth_commands(capsys):
    code, payload = run_json(capsys, "smooth", "X^6+Y^5Z+YZ^5+alpha Y^3Z^3")
    assert code == 0 and payload["status"] == "smooth"
    code, payload = run_json(capsys, "smooth", "X^6+Y^6")
    assert code == 1 and payload["status"] == "inconclusive"


def test_smooth_bad_prime_is_usage_error(capsys):
    code, _, err = run(capsys, "smooth", "X^6+Y^6+Z^6", "--primes", "3")
    assert code == 2 and "divide" in err


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "stabilizer", "X^6+Y^")
    assert code == 2 and out == "" and "offset" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["invariants", "--order", "12"],
        ["invariants", "--order", "12", "--weights", "1"],
        ["invariants", "--order", "12", "--weights", "1,x"],
        ["invariants", "--order", "12", "--weights", "1,2", "--class", "12"],
        ["classify", "--degree", "2"],
        ["classify", "--degree", "5", "--compare-paper"],
        ["nonsense"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_table_check(capsys):
    code, out, _ = run(capsys, "table-check")
    assert code == 0
    assert "15 of 17 rows verbatim" in out
    code, payload = run_json(capsys, "table-check")
    statuses = [r["status"] for r in payload["rows"]]
    assert statuses.count("agrees") == 15 and statuses.count("documented_correction") == 2


def test_classify_json_schema(capsys):
    code, payload = run_json(capsys, "classify", "--degree", "4")
    assert code == 0
    for rec in payload["records"]:
        jsonschema.validate(rec, OUTPUT_RECORD_SCHEMA)
    assert [r["order"] for r in payload["records"]][0] == 12


def test_classify_compare_paper_json(capsys):
    code, payload = run_json(capsys, "classify", "--degree", "6", "--compare-paper")
    assert code == 0
    disc = payload["discrepancies"]
    assert len(disc["matched"]) == 17
    assert len(disc["invariance_failures"]) == 2
    for rec in disc["absent_from_paper"]:
        jsonschema.validate(rec, OUTPUT_RECORD_SCHEMA)
        assert rec["smooth_witness"]["prime"]


def test_output_is_byte_identical(capsys):
    argv = ["classify", "--degree", "5", "--max-order", "16", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    _, a, _ = run(capsys, "smooth", "X^6+Y^5Z+YZ^5+alpha Y^3Z^3+beta X^2Y^2Z^2", "--seed", "5")
    _, b, _ = run(capsys, "smooth", "X^6+Y^5Z+YZ^5+alpha Y^3Z^3+beta X^2Y^2Z^2", "--seed", "5")
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ["invariants", "--order", "8", "--weights", "1,3"],
        ["invariants", "--order", "2", "--weights", "0,1", "--degree", "4"],
        ["invariants", "--order", "7", "--weights", "1,3", "--class", "1"],
        ["stabilizer", "X^3Y+Y^3Z+Z^3X"],
        ["stabilizer", "X^6+Y^6+Z^5X"],
        ["smooth", "X^3Y+Y^3Z+Z^3X", "--primes", "11"],
        ["smooth", "X^6+Y^6+Z^6+alpha X^2Y^2Z^2", "--samples", "3"],
        ["verify", "X^5Y+Y^5Z+Z^5X", "--order", "21", "--weights", "4,5"],
        ["bounds", "--degree", "4"],
    ],
)
def test_json_fuzz_corpus(capsys, argv):
    run_json(capsys, *argv)


def test_internal_violation_exit_code(capsys, monkeypatch):
    import diagaut.cli as cli

    def boom(args):
        raise InvariantViolation("synthetic")

    monkeypatch.setattr(cli, "cmd_bounds", boom)
    code, _, err = run(capsys, "bounds", "--genus", "10")
    assert code == 3 and "synthetic" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "diagaut", "bounds", "--genus", "10"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "hurwitz_group: 756" in proc.stdout

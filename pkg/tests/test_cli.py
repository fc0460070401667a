"""Command-line interface: envelope schema, exit codes, output formats,
and byte-level determinism."""

import json

import pytest

import matrix_census.cli as cli
from matrix_census import census as census_mod


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert err == ""
    lines = out.splitlines()
    assert len(lines) == 1, "exactly one envelope per invocation"
    return code, json.loads(lines[0])


def _check_envelope(doc, command):
    assert set(doc) == {"schema_version", "command", "params", "result",
                        "timing_ms"}
    assert doc["schema_version"] == "1"
    assert doc["command"] == command
    assert isinstance(doc["timing_ms"], int) and doc["timing_ms"] >= 0
    assert isinstance(doc["params"], dict)
    assert isinstance(doc["result"], dict)


def test_count_irreducible_poly(capsys):
    code, doc = run_json(capsys, "count", "--q", "2", "--n", "2",
                         "--poly", "x^2+x+1")
    assert code == 0
    _check_envelope(doc, "count")
    assert doc["result"]["count"] == "2"
    assert doc["result"]["formula"] == "theorem1"
    assert doc["result"]["factorization"] == [["x^2+x+1", 1]]
    assert doc["params"]["field"] == {"p": 2, "k": 1, "q": 2, "modulus": None}
    assert doc["params"]["poly"] == "x^2+x+1"


def test_count_reducible_poly(capsys):
    code, doc = run_json(capsys, "count", "--q", "2", "--n", "2",
                         "--poly", "x^2")
    assert code == 0
    assert doc["result"]["count"] == "4"
    assert doc["result"]["formula"] == "general"
    assert doc["result"]["factorization"] == [["x", 2]]


def test_count_without_poly_reports_irreducible_case(capsys):
    code, doc = run_json(capsys, "count", "--q", "2", "--n", "3")
    assert code == 0
    assert doc["result"]["count"] == "24"
    assert doc["result"]["formula"] == "theorem1"
    assert doc["result"]["factorization"] is None


def test_count_extension_field_params(capsys):
    code, doc = run_json(capsys, "count", "--q", "4", "--n", "2",
                         "--poly", "x^2+x")
    assert code == 0
    assert doc["params"]["field"] == {"p": 2, "k": 2, "q": 4,
                                      "modulus": "x^2+x+1"}
    assert doc["result"]["count"] == "20"
    code, doc = run_json(capsys, "count", "--q", "3", "--k", "2", "--n", "1",
                         "--poly", "x+5")
    assert code == 0
    assert doc["params"]["field"]["q"] == 9


def test_count_poly_dimension_mismatch(capsys):
    code, out, err = run_cli(capsys, "count", "--q", "2", "--n", "3",
                             "--poly", "x^2")
    assert code == 1
    assert out == ""
    assert err.startswith("error:domain:")


def test_verify_both_passes(capsys):
    code, doc = run_json(capsys, "verify", "--q", "2", "--n", "2",
                         "--mode", "both")
    assert code == 0
    _check_envelope(doc, "verify")
    assert doc["result"]["pass"] is True
    assert doc["result"]["mismatches"] == []
    assert doc["result"]["total"] == "16"
    assert doc["result"]["expected_total"] == "16"


def test_verify_formula_mode(capsys):
    code, doc = run_json(capsys, "verify", "--q", "3", "--n", "2",
                         "--mode", "formula")
    assert code == 0
    assert doc["result"]["pass"] is True
    assert doc["result"]["total"] == "81"


def test_verify_bruteforce_mode(capsys):
    code, doc = run_json(capsys, "verify", "--q", "2", "--n", "3",
                         "--mode", "bruteforce")
    assert code == 0
    assert doc["result"]["pass"] is True
    assert doc["result"]["total"] == "512"


def test_verify_budget_exceeded(capsys):
    code, out, err = run_cli(capsys, "verify", "--q", "2", "--n", "9",
                             "--mode", "bruteforce")
    assert code == 3
    assert out == ""
    assert err.startswith("error:budget:")
    assert err.count("\n") == 1


def test_verify_corrupted_formula_fails(capsys, monkeypatch):
    # the exit code must faithfully follow the pass flag
    monkeypatch.setattr(census_mod, "_TEST_FORMULA_OFFSET", 1)
    code, doc = run_json(capsys, "verify", "--q", "2", "--n", "2",
                         "--mode", "both")
    assert code == 1
    assert doc["result"]["pass"] is False
    assert doc["result"]["mismatches"]
    sample = doc["result"]["mismatches"][0]
    assert sample["census"] != sample["formula"]


def test_verify_corrupted_formula_mode_formula(capsys, monkeypatch):
    monkeypatch.setattr(census_mod, "_TEST_FORMULA_OFFSET", 1)
    code, doc = run_json(capsys, "verify", "--q", "2", "--n", "2",
                         "--mode", "formula")
    assert code == 1
    assert doc["result"]["pass"] is False


def test_verify_csv_output(capsys):
    code, out, err = run_cli(capsys, "verify", "--q", "2", "--n", "2",
                             "--mode", "both", "--format", "csv")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "charpoly,census,formula"
    assert lines[1:] == ["x^2,4,4", "x^2+x,6,6", "x^2+1,4,4", "x^2+x+1,2,2"]


def test_verify_csv_single_column_modes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--q", "2", "--n", "2",
                           "--mode", "formula", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "charpoly,formula"
    code, out, _ = run_cli(capsys, "verify", "--q", "2", "--n", "2",
                           "--mode", "bruteforce", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "charpoly,census"


def test_rcf_command(capsys):
    code, doc = run_json(capsys, "rcf", "--q", "2", "--matrix", "0,1;1,1")
    assert code == 0
    _check_envelope(doc, "rcf")
    assert doc["result"]["blocks"] == ["x^2+x+1"]
    assert doc["result"]["dimension"] == 2
    assert doc["params"]["matrix"] == "0,1;1,1"


def test_centralizer_command(capsys):
    code, doc = run_json(capsys, "centralizer", "--q", "2",
                         "--matrix", "0,1;1,1")
    assert code == 0
    _check_envelope(doc, "centralizer")
    assert doc["result"]["dimension"] == 2
    assert doc["result"]["order"] == "4"
    assert doc["result"]["unit_count"] == "3"
    assert doc["result"]["is_polynomial_centralizer"] is True
    assert len(doc["result"]["basis"]) == 2


def test_centralizer_unit_count_null_over_budget(capsys):
    code, doc = run_json(capsys, "centralizer", "--q", "3",
                         "--matrix", "1,0,0;0,1,0;0,0,1",
                         "--budget", "100")
    assert code == 0
    assert doc["result"]["unit_count"] is None
    assert doc["result"]["dimension"] == 9


def test_factor_command(capsys):
    code, doc = run_json(capsys, "factor", "--q", "2",
                         "--poly", "x^4+x^2+1")
    assert code == 0
    _check_envelope(doc, "factor")
    assert doc["result"]["factors"] == [["x^2+x+1", 2]]
    assert doc["result"]["leading"] == "1"


def test_orbit_command(capsys):
    code, doc = run_json(capsys, "orbit", "--q", "2", "--matrix", "0,1;1,1")
    assert code == 0
    _check_envelope(doc, "orbit")
    assert doc["result"]["gl_order"] == "6"
    assert doc["result"]["stabilizer_order"] == "3"
    assert doc["result"]["orbit_size"] == "2"
    assert doc["result"]["formula_count"] == "2"
    assert doc["result"]["consistent"] is True


def test_orbit_reducible_is_domain_error(capsys):
    code, out, err = run_cli(capsys, "orbit", "--q", "2",
                             "--matrix", "0,0;0,0")
    assert code == 1
    assert err.startswith("error:domain:")


def test_usage_errors(capsys):
    cases = [
        ("count", "--q", "6", "--n", "2"),            # not a prime power
        ("count", "--q", "4", "--k", "2", "--n", "1",
         "--poly", "x"),                              # q must be prime with k
        ("count", "--q", "2"),                        # missing --n and --poly
        ("verify", "--q", "2"),                       # missing --n
        ("verify", "--q", "2", "--n", "0"),
        ("verify", "--q", "2", "--n", "2", "--threads", "0"),
        ("count", "--q", "2", "--n", "2", "--poly", "x^2+"),   # parse error
        ("rcf", "--q", "2", "--matrix", "0,1;1"),              # ragged rows
        ("count", "--q", "2", "--n", "2", "--poly", "x^2+x+2"),  # bad index
    ]
    for argv in cases:
        code, out, err = run_cli(capsys, *argv)
        assert code == 2, argv
        assert out == ""
        assert err.startswith("error:usage:"), (argv, err)
        assert err.count("\n") == 1


def test_unknown_flag_and_command_are_usage_errors(capsys):
    code, _, err = run_cli(capsys, "count", "--q", "2", "--n", "2",
                           "--frobnicate")
    assert code == 2 and err.startswith("error:usage:")
    code, _, err = run_cli(capsys, "transmogrify")
    assert code == 2 and err.startswith("error:usage:")


def test_help_exits_zero(capsys):
    code = cli.run(["--help"])
    out = capsys.readouterr().out
    assert code == 0
    assert "matrix-census" in out


def test_field_budget_flag(capsys):
    code, out, err = run_cli(capsys, "count", "--q", "2", "--k", "21",
                             "--n", "1", "--poly", "x")
    assert code == 3
    assert err.startswith("error:budget:")
    code, doc = run_json(capsys, "count", "--q", "2", "--k", "21", "--n", "1",
                         "--poly", "x", "--field-budget", str(2 ** 22))
    assert code == 0
    assert doc["result"]["count"] == "1"


def test_repro_pins_timing_and_output_is_byte_stable(capsys):
    outputs = set()
    for _ in range(2):
        code, out, err = run_cli(capsys, "verify", "--q", "3", "--n", "2",
                                 "--mode", "both", "--seed", "7", "--repro")
        assert code == 0 and err == ""
        outputs.add(out)
    assert len(outputs) == 1
    doc = json.loads(out)
    assert doc["timing_ms"] == 0
    assert doc["params"]["seed"] == 7


def test_threads_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv(cli.ENV_THREADS, "3")
    code, doc = run_json(capsys, "verify", "--q", "2", "--n", "2",
                         "--mode", "bruteforce")
    assert code == 0
    assert doc["params"]["threads"] == 3
    monkeypatch.setenv(cli.ENV_THREADS, "zebra")
    code, out, err = run_cli(capsys, "verify", "--q", "2", "--n", "2")
    assert code == 2 and err.startswith("error:usage:")
    monkeypatch.setenv(cli.ENV_THREADS, "-1")
    code, out, err = run_cli(capsys, "verify", "--q", "2", "--n", "2")
    assert code == 2
    # explicit flag wins over the environment
    monkeypatch.setenv(cli.ENV_THREADS, "3")
    code, doc = run_json(capsys, "verify", "--q", "2", "--n", "2",
                         "--threads", "2")
    assert doc["params"]["threads"] == 2


def test_seed_is_echoed_and_respected(capsys):
    code, doc = run_json(capsys, "factor", "--q", "5",
                         "--poly", "x^4+x^2+3", "--seed", "11")
    assert code == 0
    assert doc["params"]["seed"] == 11
    code, doc2 = run_json(capsys, "factor", "--q", "5",
                          "--poly", "x^4+x^2+3", "--seed", "999")
    assert doc["result"] == doc2["result"]  # canonical order hides the seed


def test_envelope_is_compact_single_line_sorted(capsys):
    code, out, err = run_cli(capsys, "count", "--q", "2", "--n", "2",
                             "--poly", "x^2", "--repro")
    assert out.endswith("\n") and out.count("\n") == 1
    body = out[:-1]
    assert ": " not in body and ", " not in body
    doc = json.loads(body)
    assert list(doc) == sorted(doc)


def test_main_entry_point(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main()
    assert info.value.code == 2  # no argv supplied

import argparse
import json

import pandas as pd
import pytest

from modules.cli import EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE, build_parser, run


def test_poly_of_a_family(capsys):
    assert run(["poly", "K3,3*2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1,18,117,336,432,216,36"


def test_poly_of_a_graph_file(tmp_path, capsys):
    path = tmp_path / "square.txt"
    path.write_text("n 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n")
    assert run(["poly", str(path)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1,4,2"


def test_poly_bruteforce_agrees(capsys):
    assert run(["poly", "P3 + C5", "--bruteforce"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1,7,15,10"


def test_multigraph_double_edge(capsys):
    assert run(["poly", "C2*2", "--multi"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1,4,4"


def test_compare_incomparable_unions(capsys):
    assert run(["compare", "P8+P6+P3", "P7+P5+P5"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "Incomparable"


def test_compare_strict(capsys):
    assert run(["compare", "P4", "C4"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "StrictlyLess"


@pytest.mark.parametrize("argv", [
    ["poly", "X9"],
    ["poly"],
    ["bogus"],
    ["bound", "fg", "3", "0", "0.5"],
    ["expect", "e1", "5", "2", "2"],
    ["smallm", "2", "3", "1"],
])
def test_usage_and_domain_errors_exit_two(argv):
    assert run(argv) == EXIT_USAGE


def test_malformed_graph_file_exits_two(tmp_path, capsys):
    path = tmp_path / "broken.txt"
    path.write_text("n 3\ne 0 7\n")
    assert run(["poly", str(path)]) == EXIT_USAGE
    assert "line 2" in capsys.readouterr().err


def test_enum_regular_lists_named_graphs(tmp_path, capsys):
    csv_path = tmp_path / "cubic10.csv"
    assert run(["enum-regular", "10", "3", "--connected", "--csv", str(csv_path)]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert sorted(line.split("\t")[0] for line in lines) == ["G1", "M10"]
    frame = pd.read_csv(csv_path)
    assert list(frame.columns) == ["code", "family", "polynomial"]
    assert len(frame) == 2


def test_enum_omega(capsys):
    assert run(["enum-omega", "6", "1", "simple"]) == EXIT_OK
    assert len(capsys.readouterr().out.strip().splitlines()) == 3


def test_scan_writes_json(tmp_path, capsys):
    json_path = tmp_path / "scan.json"
    assert run(["--threads", "1", "scan", "two-regular", "8", "simple_bipartite", "--json", str(json_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "coefficientwise min: C8" in out
    assert "coefficientwise max: C4*2" in out
    payload = json.loads(json_path.read_text())
    assert payload["coefficientwise_min_unique"] is True
    assert payload["graph_count"] == 2


def test_verify_umc_report(tmp_path, capsys):
    report_path = tmp_path / "reports" / "umc10.json"
    assert run(["--threads", "1", "--report", str(report_path), "verify", "umc", "10", "3"]) == EXIT_OK
    report = json.loads(report_path.read_text())
    assert report["schema"] == 1
    assert report["command"] == "verify"
    assert report["parameters"]["two_n"] == 10
    assert report["seed"] is None
    assert report["payload"]["passed"] is True
    assert report["payload"]["notes"]["argmax"]["4"] == ["G1"]
    assert "umc: PASS" in capsys.readouterr().out


def test_verify_counterexample_exit_code(capsys):
    assert run(["--threads", "1", "verify", "lmc", "8", "2"]) == EXIT_COUNTEREXAMPLE
    captured = capsys.readouterr()
    assert "lmc: FAIL" in captured.out
    assert "[COUNTEREXAMPLE] lmc" in captured.err
    assert "n 6\n" in captured.err


def test_expect_prints_exact_fraction(capsys):
    assert run(["expect", "e1", "2", "2", "2", "--exhaustive"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "E = 3/1 (3)" in out
    assert "bounds: [1/1 (1), 3/1 (3)]" in out
    assert "exhaustive average = 3/1 (3)" in out
    assert run(["expect", "e2", "2", "2", "2"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("E = 8/3 ")


def test_seeded_runs_reproduce_payloads(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["expect", "e2", "2", "3", "2", "--mc", "300"]
    assert run(["--report", str(first)] + argv) == EXIT_OK
    assert run(["--report", str(second)] + argv) == EXIT_OK
    a, b = json.loads(first.read_text()), json.loads(second.read_text())
    assert a["payload"] == b["payload"]
    assert a["seed"] == b["seed"] is not None
    assert a["payload"]["exact"] == "48/5"


def test_bound_gh(capsys):
    assert run(["bound", "gh", "3", "1"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("gh: log = 0.14384103622589")


def test_bound_gurvits_exact(capsys):
    assert run(["bound", "gurvits", "3", "3"]) == EXIT_OK
    assert "gurvits: exact = 6/1 (6)" in capsys.readouterr().out


def test_smallm_command(capsys):
    assert run(["smallm", "4", "3", "4", "--a4", "6"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "9"


def test_sweep_to_csv(tmp_path):
    csv_path = tmp_path / "gh.csv"
    assert run(["sweep", "gh", "--r", "3", "--points", "5", "--csv", str(csv_path)]) == EXIT_OK
    frame = pd.read_csv(csv_path)
    assert len(frame) == 5
    assert list(frame.columns) == ["r", "p", "m", "n", "quantity", "value"]


def test_sweep_needs_n():
    assert run(["sweep", "lmc", "--r", "3"]) == EXIT_USAGE


def test_parser_lists_every_command():
    parser = build_parser()
    (commands,) = [action.choices for action in parser._actions if isinstance(action, argparse._SubParsersAction)]
    assert set(commands) == {"poly", "compare", "enum-omega", "enum-regular", "scan",
                             "verify", "expect", "bound", "smallm", "sweep"}


def test_expect_accepts_seed_after_the_command(tmp_path, capsys):
    local, global_ = tmp_path / "local.json", tmp_path / "global.json"
    assert run(["--report", str(local), "expect", "e1", "2", "3", "2", "--mc", "50", "--seed", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("E = 10/1 (10)")
    assert "bounds: [4/1 (4), 12/1 (12)]" in out
    assert run(["--report", str(global_), "--seed", "5", "expect", "e1", "2", "3", "2", "--mc", "50"]) == EXIT_OK
    a, b = json.loads(local.read_text()), json.loads(global_.read_text())
    assert a["seed"] == b["seed"] == 5
    assert a["payload"] == b["payload"]


def test_expect_skips_bounds_when_degree_exceeds_m(capsys):
    assert run(["expect", "e1", "1", "3", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("E = ")
    assert "bounds" not in out


def test_verify_two_regular_extremal_passes(capsys):
    assert run(["--threads", "1", "verify", "2reg-extremal", "10"]) == EXIT_OK
    assert "2reg-extremal: PASS" in capsys.readouterr().out

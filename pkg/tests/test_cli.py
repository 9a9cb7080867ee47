import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from arcverify.cli import main

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"
REGEN = os.environ.get("ARCVERIFY_REGEN_GOLDEN") == "1"

GRID = ["grid_topology.json", "grid_paths.json"]
SMALL = ["small_topology.json", "small_paths.json"]
SMALL_CLOSED = ["small_topology.json", "small_closure.json"]

CASES = {
    "validate_ok": (["validate", *GRID], 0),
    "validate_summary": (["validate", *GRID, "--format", "summary"], 0),
    "validate_bad_paths": (["validate", "grid_topology.json", "bad_paths.json"], 3),
    "validate_bad_topology": (["validate", "bad_topology.json", "grid_paths.json"], 3),
    "rules_grid": (["rules", *GRID], 0),
    "rules_summary": (["rules", *SMALL, "--format", "summary"], 0),
    "rules_not_edge_simple": (["rules", "grid_topology.json", "looping_path.json"], 3),
    "rules_not_edge_simple_allowed": (["rules", "grid_topology.json", "looping_path.json", "--allow-non-edge-simple"], 0),
    "rules_no_dot": (["rules", *GRID, "--format", "dot"], 3),
    "check_grid": (["check", *GRID], 2),
    "check_grid_summary": (["check", *GRID, "--format", "summary"], 2),
    "check_grid_dot": (["check", *GRID, "--format", "dot"], 2),
    "check_singleton": (["check", "grid_topology.json", "alpha.json"], 0),
    "check_small": (["check", *SMALL], 1),
    "check_small_budget": (["check", *SMALL, "--budget", "1"], 4),
    "check_two_traffic_types": (["check", "small_topology.json", "small_paths.json", "small_closure.json"], 1),
    "check_update_add": (["check", "grid_topology.json", "alpha.json", "--update", "add_beta.json"], 2),
    "check_update_remove": (["check", *SMALL_CLOSED, "--update", "remove_one.json"], 1),
    "check_not_json": (["check", "grid_topology.json", "not_json.json"], 3),
    "check_missing_file": (["check", "grid_topology.json", "missing.json"], 3),
    "closure_small": (["closure", *SMALL], 1),
    "closure_closed": (["closure", *SMALL_CLOSED], 0),
    "closure_grid": (["closure", *GRID], 2),
    "closure_grid_summary": (["closure", *GRID, "--format", "summary"], 2),
    "closure_budget": (["closure", *SMALL, "--budget", "3"], 4),
    "closure_invalid": (["closure", "grid_topology.json", "bad_paths.json"], 3),
    "simulate_grid": (["simulate", *GRID], 2),
    "simulate_grid_summary": (["simulate", *GRID, "--format", "summary"], 2),
    "simulate_small_h0": (["simulate", *SMALL, "--host", "h0"], 0),
    "simulate_unknown_host": (["simulate", *SMALL, "--host", "s1"], 3),
    "simulate_budget": (["simulate", *SMALL, "--budget", "1"], 4),
    "repair_subset": (["repair", *GRID], 0),
    "repair_subset_greedy": (["repair", *GRID, "--exact-threshold", "0", "--format", "summary"], 0),
    "repair_superset": (["repair", *SMALL, "--strategy", "superset"], 0),
    "repair_superset_infinite": (["repair", *GRID, "--strategy", "superset"], 2),
    "repair_superset_budget": (["repair", *SMALL, "--strategy", "superset", "--budget", "3"], 4),
    "repair_reroute": (["repair", "complete_topology.json", "grid_paths.json", "--strategy", "reroute"], 0),
    "repair_reroute_impossible": (["repair", *GRID, "--strategy", "reroute", "--try-rotations"], 2),
    "repair_reroute_no_spare": (["repair", "small_topology.json", "no_spare_links.json", "--strategy", "reroute"], 2),
    "repair_invalid": (["repair", "bad_topology.json", "grid_paths.json"], 3),
    "export_dot_topology": (["export-dot", *GRID], 0),
    "export_dot_topology_only": (["export-dot", "grid_topology.json"], 0),
    "export_dot_closure": (["export-dot", *GRID, "--graph", "closure"], 0),
    "export_dot_closure_needs_paths": (["export-dot", "grid_topology.json", "--graph", "closure"], 3),
}

# exit codes each command can produce
REACHABLE = {
    "validate": {0, 3},
    "rules": {0, 3},
    "check": {0, 1, 2, 3, 4},
    "closure": {0, 1, 2, 3, 4},
    "simulate": {0, 2, 3, 4},
    "repair": {0, 2, 3, 4},
    "export-dot": {0, 3},
}


def invoke(argv, capsys, monkeypatch):
    monkeypatch.chdir(FIXTURES)
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys, monkeypatch):
    argv, expected_code = CASES[name]
    code, out, err = invoke(argv, capsys, monkeypatch)
    again = invoke(argv, capsys, monkeypatch)
    assert (code, out, err) == again, "output differs between two runs"
    assert code == expected_code, err
    if expected_code == 0 or out:
        assert err == ""
    if expected_code >= 3 and name != "validate_bad_paths":
        # failures write diagnostics only; validate reports issues as its normal output
        assert out == ""
        assert "error" in json.loads(err)
    out_file, err_file = GOLDEN / f"{name}.out", GOLDEN / f"{name}.err"
    if REGEN:
        out_file.write_text(out, encoding="utf-8")
        err_file.write_text(err, encoding="utf-8")
    assert out == out_file.read_text(encoding="utf-8")
    assert err == err_file.read_text(encoding="utf-8")


def test_every_exit_code_is_covered():
    seen = {}
    for argv, code in CASES.values():
        seen.setdefault(argv[0], set()).add(code)
    assert seen == REACHABLE
    assert set().union(*seen.values()) == {0, 1, 2, 3, 4}


def test_grid_check_reports_cycle(capsys, monkeypatch):
    code, out, _ = invoke(CASES["check_grid"][0], capsys, monkeypatch)
    assert code == 2
    assert json.loads(out)["cycle"] == [["s2", "s3"], ["s3", "s4"], ["s4", "s5"], ["s5", "s2"]]


def test_reroute_reproduces_repaired_set(capsys, monkeypatch):
    code, out, _ = invoke(CASES["repair_reroute"][0], capsys, monkeypatch)
    assert code == 0
    assert json.loads(out)["paths"] == [
        ["h0", "s1", "s2", "s3", "s4", "s5", "s6", "h1"],
        ["h0", "s1", "s4", "s6", "s5", "s2", "s4", "s3", "s6", "h1"],
    ]


def test_closure_output_checks_clean(tmp_path, capsys, monkeypatch):
    code, out, _ = invoke(["closure", *SMALL], capsys, monkeypatch)
    assert code == 1
    body = json.loads(out)
    del body["status"]
    (tmp_path / "closed.json").write_text(json.dumps(body))
    code, _, _ = invoke(["check", "small_topology.json", str(tmp_path / "closed.json")], capsys, monkeypatch)
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "arcverify", "check", *GRID],
        cwd=FIXTURES,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["status"] == "infinite_closure"


def test_usage_error_exits_nonzero():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2

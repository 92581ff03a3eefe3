import json
from pathlib import Path

import pytest

from dqplan import load_path_export, load_scenario
from dqplan.cli import main

DATA_DIR = Path(__file__).parent / "data"
SUMMARY_KEYS = json.loads((DATA_DIR / "cli_summary_keys.json").read_text())


def _last_json(capsys):
    """Parse the final stdout line (each --json command prints one object)."""
    lines = [line for line in capsys.readouterr().out.splitlines() if line.strip()]
    return json.loads(lines[-1])


def _gen_free_scenario(tmp_path, goal=(3.0, 0.0, 0.0), name="free"):
    out = tmp_path / f"{name}.scenario.json"
    code = main([
        "gen-scenario", "--out", str(out), "--count", "0",
        "--bounds-min", "-10", "-10", "-10", "--bounds-max", "10", "10", "10",
        "--start", "0", "0", "0", "--goal", *[str(v) for v in goal],
        "--name", name,
    ])
    assert code == 0
    return out


# ---------------------------------------------------------------------------
# gen-scenario
# ---------------------------------------------------------------------------

def test_gen_scenario_count_zero(tmp_path):
    out = _gen_free_scenario(tmp_path)
    scenario = load_scenario(out)
    assert len(scenario.obstacles.zones) == 0


def test_gen_scenario_byte_identical_reruns(tmp_path):
    a = tmp_path / "a.scenario.json"
    b = tmp_path / "b.scenario.json"
    flags = ["--seed", "42", "--count", "6"]
    assert main(["gen-scenario", "--out", str(a), *flags]) == 0
    assert main(["gen-scenario", "--out", str(b), *flags]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_scenario_bad_radius_order(tmp_path, capsys):
    code = main([
        "gen-scenario", "--out", str(tmp_path / "x.json"),
        "--radius-min", "10", "--radius-max", "5",
    ])
    assert code == 2
    assert "radius" in capsys.readouterr().err


def test_gen_scenario_json_schema(tmp_path, capsys):
    out = tmp_path / "s.scenario.json"
    assert main(["gen-scenario", "--out", str(out), "--count", "2", "--json"]) == 0
    payload = _last_json(capsys)
    assert sorted(payload) == SUMMARY_KEYS["gen-scenario"]


# ---------------------------------------------------------------------------
# plan
# ---------------------------------------------------------------------------

def test_plan_free_space_adjacent_goal(tmp_path, capsys):
    scenario_file = _gen_free_scenario(tmp_path)
    out = tmp_path / "run.path.json"
    code = main([
        "plan", "--scenario", str(scenario_file), "--mode", "dq",
        "--seed", "1", "--max-iterations", "50", "--out", str(out), "--json",
    ])
    assert code == 0
    payload = _last_json(capsys)
    assert sorted(payload) == SUMMARY_KEYS["plan"]
    assert payload["success"] is True
    export = load_path_export(out)
    assert len(export.waypoints) == 2


def test_plan_forced_failure_exit_code(tmp_path, capsys):
    scenario_file = _gen_free_scenario(tmp_path, goal=(9.0, 9.0, 9.0), name="far")
    code = main([
        "plan", "--scenario", str(scenario_file), "--step-max", "1.0",
        "--max-iterations", "1", "--seed", "1", "--json",
    ])
    assert code == 4
    payload = _last_json(capsys)
    assert payload["success"] is False


def test_plan_unreadable_scenario(tmp_path, capsys):
    code = main(["plan", "--scenario", str(tmp_path / "missing.json")])
    assert code == 3


def test_plan_byte_identical_reruns(tmp_path):
    scenario_file = _gen_free_scenario(tmp_path, goal=(8.0, 6.0, 2.0), name="rerun")
    out_a = tmp_path / "a.path.json"
    out_b = tmp_path / "b.path.json"
    flags = [
        "--scenario", str(scenario_file), "--seed", "17",
        "--max-iterations", "300", "--step-max", "2.0", "--tree",
    ]
    assert main(["plan", *flags, "--out", str(out_a)]) == 0
    assert main(["plan", *flags, "--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_plan_unknown_flag_exits_two(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["plan", "--scenario", "demo", "--fancy-flag", "1"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

def test_compare_translation_only_identical_costs(tmp_path, capsys):
    scenario_file = _gen_free_scenario(tmp_path, goal=(9.0, 9.0, 0.0), name="cmp")
    prefix = tmp_path / "cmp"
    code = main([
        "compare", "--scenario", str(scenario_file), "--seed", "3",
        "--max-iterations", "400", "--step-max", "2.0",
        "--rotation-mode", "translation-only",
        "--out", str(prefix), "--json",
    ])
    assert code == 0
    payload = _last_json(capsys)
    assert sorted(payload) == SUMMARY_KEYS["compare"]
    dq_entry = payload["modes"]["dq"]
    se3_entry = payload["modes"]["se3_baseline"]
    assert sorted(dq_entry) == SUMMARY_KEYS["compare.mode_entry"]
    assert abs(dq_entry["cost"] - se3_entry["cost"]) <= 1e-9
    assert (tmp_path / "cmp.dq.path.json").exists()
    assert (tmp_path / "cmp.se3.path.json").exists()
    assert (tmp_path / "cmp.compare.json").exists()


def test_compare_rejects_per_mode_seeds():
    # one shared seed by construction: a second seed flag is a usage error
    with pytest.raises(SystemExit) as exc:
        main(["compare", "--scenario", "demo", "--seed", "1", "--seed-se3", "2"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def _plan_small(tmp_path):
    scenario_file = _gen_free_scenario(tmp_path, goal=(8.0, 0.0, 0.0), name="val")
    out = tmp_path / "val.path.json"
    code = main([
        "plan", "--scenario", str(scenario_file), "--seed", "2",
        "--max-iterations", "300", "--step-max", "2.0", "--out", str(out),
    ])
    assert code == 0
    return scenario_file, out


def test_validate_planner_output_passes(tmp_path, capsys):
    scenario_file, path_file = _plan_small(tmp_path)
    code = main([
        "validate", "--path", str(path_file), "--scenario", str(scenario_file),
        "--refine", "10", "--json",
    ])
    assert code == 0
    payload = _last_json(capsys)
    assert sorted(payload) == SUMMARY_KEYS["validate"]
    assert payload["passed"] is True


def test_validate_detects_hand_edited_violation(tmp_path):
    scenario_file, path_file = _plan_small(tmp_path)
    # drop a zone on top of the path midpoint
    scenario_doc = json.loads(scenario_file.read_text())
    scenario_doc["obstacles"].append({"center": [4.0, 0.0, 0.0], "radius": 1.0})
    edited = tmp_path / "edited.scenario.json"
    edited.write_text(json.dumps(scenario_doc))
    # matching hash is required, so re-embed it by re-planning is avoided:
    # instead edit the path file to carry the edited scenario's hash
    from dqplan import scenario_hash

    path_doc = json.loads(path_file.read_text())
    path_doc["scenario_hash"] = scenario_hash(load_scenario(edited))
    path_file.write_text(json.dumps(path_doc))
    code = main([
        "validate", "--path", str(path_file), "--scenario", str(edited), "--refine", "10",
    ])
    assert code == 5


def test_validate_wrong_scenario_hash(tmp_path):
    scenario_file, path_file = _plan_small(tmp_path)
    other = _gen_free_scenario(tmp_path, goal=(5.0, 5.0, 5.0), name="other")
    code = main([
        "validate", "--path", str(path_file), "--scenario", str(other),
    ])
    assert code == 3


# ---------------------------------------------------------------------------
# built-in demo scenario
# ---------------------------------------------------------------------------

def test_demo_scenario_file_matches_builtin():
    from dqplan import demo_scenario

    shipped = load_scenario(Path(__file__).parent.parent / "scenarios" / "demo.scenario.json")
    assert shipped == demo_scenario()

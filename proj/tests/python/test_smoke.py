import json
import os
import subprocess
from pathlib import Path

import pytest

import formtrack as ft

CLI = os.environ.get("FORMTRACK_CLI")

PAIR_DOC = {
    "agents": {"count": 2, "initial_positions": [[-1.095, 0.0], [1.095, 0.0]]},
    "formation": {"edges": [{"i": 0, "j": 1, "r": 2.0, "r_lo": 1.8, "r_hi": 2.2}]},
    "target": {"kind": "stationary", "position": [0.0, 0.0]},
    "control": {
        "law": "qlf",
        "K_T": 0.03,
        "K": 0.01,
        "u_max": 3.0,
        "standoffs": [2.0, 2.0],
    },
    "noise": {"sd_velocity": 0.0, "sd_distance": 0.0, "seed": 1},
    "integration": {"dt": 0.01, "scheme": "euler", "max_substeps": 8},
    "run": {"duration": 10.0, "name": "pair_pull"},
}


def run_cli(*args, cwd=None):
    assert CLI, "FORMTRACK_CLI must point at the built binary"
    return subprocess.run(
        [CLI, *map(str, args)], capture_output=True, text=True, cwd=cwd
    )


def test_module_exposes_core_operations():
    sc = ft.load_preset("paper_linear")
    assert sc.name == "paper_linear"
    assert sc.graph.agent_count() == 3
    assert [e.bounds.r for e in sc.graph.edges()] == [2.0, 4.0, 3.46]

    sc.duration = 1.0
    trace = ft.run(sc)
    assert len(trace.samples) == 101
    metrics = ft.summarize(trace, sc)
    assert metrics.bound_violation_samples == 0
    assert metrics.max_control_magnitude <= 3.0 + 1e-12


def test_gamma_metric_matches_design_value():
    sc = ft.load_preset("paper_linear")
    assert abs(ft.gamma_metric(sc.graph, sc.noise) - 7.0) <= 1e-12


def test_runs_are_deterministic():
    sc = ft.load_preset("paper_linear")
    sc.duration = 2.0
    a = ft.trace_csv(ft.run(sc), sc)
    b = ft.trace_csv(ft.run(sc), sc)
    assert a == b
    sc.noise.seed = 99
    c = ft.trace_csv(ft.run(sc), sc)
    assert a != c


def test_potentials_and_errors_translate():
    with pytest.raises(ft.OutOfDomain):
        ft.barrier_potential(ft.Vec2(2.5, 0.0), ft.EdgeBounds(2.0, 1.8, 2.2))
    v = ft.barrier_potential(ft.Vec2(2.1, 0.0), ft.EdgeBounds(2.0, 1.8, 2.2))
    assert v == pytest.approx(0.167064201947923, rel=1e-12)
    with pytest.raises(ft.ValidationError):
        ft.load_preset("nope")


def test_scenario_roundtrip_through_python():
    sc = ft.parse_scenario(json.dumps(PAIR_DOC), "inline")
    text = ft.write_scenario(sc)
    again = ft.parse_scenario(text, "inline")
    assert ft.write_scenario(again) == text


def test_cli_preset_listing():
    result = run_cli("preset", "list")
    assert result.returncode == 0
    assert "paper_linear" in result.stdout
    assert "paper_circular" in result.stdout


def test_cli_preset_run_writes_outputs(tmp_path):
    result = run_cli(
        "preset", "run", "paper_linear",
        "--duration", "1", "--out", tmp_path, "--no-plots",
    )
    assert result.returncode == 0, result.stderr
    assert (tmp_path / "paper_linear_trace.csv").is_file()
    assert (tmp_path / "paper_linear_metrics.txt").is_file()
    assert "gamma" in result.stdout


def test_cli_plots_and_compare(tmp_path):
    result = run_cli(
        "compare", scenario_file(tmp_path), "--duration", "2", "--out", tmp_path / "cmp"
    )
    assert result.returncode == 0, result.stderr
    names = {p.name for p in (tmp_path / "cmp").iterdir()}
    assert "pair_pull_comparison.txt" in names
    assert any(n.endswith("_distances.svg") for n in names)


def scenario_file(tmp_path, **overrides):
    doc = json.loads(json.dumps(PAIR_DOC))
    for key, value in overrides.items():
        section, field = key.split(".")
        doc[section][field] = value
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc))
    return path


def test_cli_exit_codes(tmp_path):
    # Invalid document: unknown key.
    bad = json.loads(json.dumps(PAIR_DOC))
    bad["control"]["K_t"] = 0.01
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(bad))
    assert run_cli("run", bad_path, "--out", tmp_path / "o1").returncode == 2

    # Unreadable input maps to the I/O failure code.
    assert run_cli("run", tmp_path / "missing.json").returncode == 4

    # The outward-pulled pair crosses its upper bound under the quadratic
    # law, so strict mode reports a runtime breach.
    qlf = scenario_file(tmp_path)
    strict = run_cli("run", qlf, "--strict-bounds", "--no-plots", "--out", tmp_path / "o2")
    assert strict.returncode == 3, strict.stdout + strict.stderr

    # The barrier law holds the bound from the same start: exit 0.
    blf = scenario_file(tmp_path, **{"control.law": "blf", "run.name": "pair_hold"})
    ok = run_cli("run", blf, "--strict-bounds", "--no-plots", "--out", tmp_path / "o3")
    assert ok.returncode == 0, ok.stdout + ok.stderr


def test_cli_seed_overrides_change_the_trace(tmp_path):
    noisy = scenario_file(tmp_path, **{"noise.sd_distance": 0.02, "noise.sd_velocity": 0.02,
                                       "control.law": "blf", "run.duration": 1.0})
    run_cli("run", noisy, "--out", tmp_path / "a", "--no-plots")
    run_cli("run", noisy, "--out", tmp_path / "b", "--no-plots")
    run_cli("run", noisy, "--seed", "7", "--out", tmp_path / "c", "--no-plots")
    a = (tmp_path / "a" / "pair_pull_trace.csv").read_text()
    b = (tmp_path / "b" / "pair_pull_trace.csv").read_text()
    c = (tmp_path / "c" / "pair_pull_trace.csv").read_text()
    assert a == b
    assert a != c


def test_cli_seed_panel(tmp_path):
    noisy = scenario_file(tmp_path, **{"noise.sd_distance": 0.02, "noise.sd_velocity": 0.02,
                                       "control.law": "blf", "run.duration": 1.0})
    result = run_cli("run", noisy, "--seed-panel", "3", "--out", tmp_path / "panel")
    assert result.returncode == 0, result.stderr
    assert (tmp_path / "panel" / "pair_pull_panel.txt").is_file()
    assert "seed" in result.stdout

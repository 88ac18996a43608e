"""Command-line surface: subcommands, CSV artifacts, exit codes and
bit-stable output."""

from __future__ import annotations

import csv
from pathlib import Path

import pytest

from arcmem.cli import main, run
from arcmem.scenario import preset

FAST_SWEEP = """
arc.g_min = 1e-8
arc.i0    = 4.8
arc.k     = 0.1
arc.u_c   = 30
arc.p_m   = 20
arc.theta = 4e-4
circuit.r   = 0.2
circuit.l   = 1e-3
circuit.e_m = 75
circuit.f   = 50
sweep.axis   = I0
sweep.values = 4.8, 9.6
"""


def _read_csv(path: Path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def _scenario_file(tmp_path, text, name="case.scn"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def test_simulate_writes_waveform_and_summary(tmp_path):
    code = main(["simulate", "--preset", "fig1", "--out", str(tmp_path)])
    assert code == 0
    header, rows = _read_csv(tmp_path / "waveform.csv")
    assert header == ["t", "i", "g", "u", "E"]
    assert len(rows) == 2000
    for row in rows[:50]:
        for cell in row:
            value = float(cell)          # parses...
            assert repr(value) == cell   # ...and round-trips exactly
    summary = (tmp_path / "summary.txt").read_text(encoding="utf-8")
    assert "settled: True" in summary
    assert not (tmp_path / "waveform_steps.csv").exists()


def test_simulate_raw_steps_flag(tmp_path):
    code = main(["simulate", "--preset", "fig1", "--out", str(tmp_path),
                 "--raw-steps"])
    assert code == 0
    header, rows = _read_csv(tmp_path / "waveform_steps.csv")
    assert header == ["t", "i", "g", "u"]
    assert len(rows) > 100
    times = [float(r[0]) for r in rows]
    assert times == sorted(times)


def test_simulate_byte_identical_reruns(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    assert main(["simulate", "--preset", "fig1", "--out", str(out_a)]) == 0
    assert main(["simulate", "--preset", "fig1", "--out", str(out_b)]) == 0
    for name in ("waveform.csv", "summary.txt"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------

def test_fingerprints_fig1_assert_passes(tmp_path):
    code = main(["fingerprints", "--preset", "fig1", "--out", str(tmp_path),
                 "--assert"])
    assert code == 0
    header, rows = _read_csv(tmp_path / "fingerprints.csv")
    assert header[:3] == ["f", "lobe_area", "loop_width_metric"]
    assert len(rows) == 1  # no frequency sweep on this preset
    header, rows = _read_csv(tmp_path / "pinch_points.csv")
    assert len(rows) == 2
    summary = (tmp_path / "summary.txt").read_text(encoding="utf-8")
    assert summary.count("pass") == 3
    assert "FAIL" not in summary


def test_fingerprints_exit_three_when_assert_fails(tmp_path):
    # Starve the settle budget so every sweep point fails its verdicts.
    sc = _scenario_file(tmp_path, FAST_SWEEP.replace(
        "sweep.axis   = I0", "# no sweep").replace(
        "sweep.values = 4.8, 9.6", "settle.min_periods = 1\n"
                                   "settle.max_periods = 1"))
    code = main(["fingerprints", "--scenario", sc, "--out",
                 str(tmp_path / "out")])
    assert code == 2  # every point failed numerically
    code = main(["fingerprints", "--preset", "fig1", "--out",
                 str(tmp_path / "out2")])
    assert code == 0  # without --assert the verdict is informative only


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def test_sweep_writes_metrics_and_waveforms(tmp_path):
    sc = _scenario_file(tmp_path, FAST_SWEEP)
    out = tmp_path / "out"
    code = main(["sweep", "--scenario", sc, "--out", str(out), "--jobs", "1"])
    assert code == 0
    header, rows = _read_csv(out / "metrics.csv")
    assert header[0] == "axis"
    assert len(rows) == 2
    assert all(r[2] == "True" for r in rows)  # converged column
    assert (out / "waveform_I0_4.8.csv").exists()
    assert (out / "waveform_I0_9.6.csv").exists()
    _, wrows = _read_csv(out / "waveform_I0_9.6.csv")
    assert len(wrows) == 2000


def test_sweep_requires_sweep_section(tmp_path):
    code = main(["sweep", "--preset", "fig1", "--out", str(tmp_path)])
    assert code == 1


def test_sweep_exit_two_when_all_points_fail(tmp_path):
    sc = _scenario_file(tmp_path, FAST_SWEEP + "settle.min_periods = 2\n"
                        "settle.max_periods = 2\n")
    out = tmp_path / "out"
    code = main(["sweep", "--scenario", sc, "--out", str(out)])
    assert code == 2
    header, rows = _read_csv(out / "metrics.csv")
    assert len(rows) == 2
    assert all(r[2] == "False" for r in rows)   # converged column
    assert all(r[-1] for r in rows)             # error annotation present


# ---------------------------------------------------------------------------
# table1
# ---------------------------------------------------------------------------

def test_table1_rows_and_values(tmp_path):
    code = main(["table1", "--preset", "table1", "--out", str(tmp_path)])
    assert code == 0
    header, rows = _read_csv(tmp_path / "table1.csv")
    assert header == ["f_kHz", "I_m", "g_mean", "hf_estimate", "rel_error"]
    assert [float(r[0]) for r in rows] == [3.0, 5.0, 7.0, 9.0, 11.0]
    reference = [0.3650, 0.1281, 0.0615, 0.0332, 0.0156]
    for row, expected in zip(rows, reference):
        assert float(row[3]) == pytest.approx(expected, abs=5e-4)


# ---------------------------------------------------------------------------
# exit codes and validation
# ---------------------------------------------------------------------------

def test_unknown_preset_is_validation_error(tmp_path, capsys):
    assert main(["simulate", "--preset", "fig9", "--out",
                 str(tmp_path)]) == 1
    assert "unknown preset" in capsys.readouterr().err


def test_missing_scenario_file(tmp_path):
    assert main(["simulate", "--scenario", str(tmp_path / "nope.scn")]) == 1


def test_invalid_scenario_file(tmp_path):
    sc = _scenario_file(tmp_path, FAST_SWEEP.replace(
        "arc.p_m   = 20", "arc.p_m = -20"))
    assert main(["simulate", "--scenario", sc, "--out", str(tmp_path)]) == 1


def test_numeric_failure_exit_code(tmp_path):
    sc = _scenario_file(tmp_path, FAST_SWEEP + "settle.min_periods = 2\n"
                        "settle.max_periods = 2\n")
    assert main(["simulate", "--scenario", sc,
                 "--out", str(tmp_path / "out")]) == 2


def test_run_rejects_unknown_subcommand(tmp_path):
    with pytest.raises(ValueError):
        run("render", preset("fig1"), out_dir=tmp_path)

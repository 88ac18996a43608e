"""Command-line front end: ``arcmem <subcommand>``.

Subcommands
-----------
simulate      settle the scenario's operating point and write the steady
              waveform (t, i, g, u, E) plus a settle summary
fingerprints  grade all three memristive fingerprints and write the
              report; with ``--assert`` a failed verdict sets exit code 3
sweep         run the scenario's parameter sweep, write per-value loop
              metrics and waveforms
table1        frequency sweep comparing measured cycle-mean conductance
              against the high-frequency estimate g_min + I_m**2/(2 p_m)

Every run reads one scenario, either ``--scenario FILE`` or a bundled
``--preset NAME``.  All numeric CSV fields use round-trip decimal
formatting, so re-parsing reproduces the values bit for bit; repeated runs
produce byte-identical files.  Exit codes: 0 success, 1 validation error,
2 numeric failure, 3 fingerprint-check failure under ``--assert``.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .analysis import (
    FingerprintReport,
    SweepPoint,
    fingerprint_report,
    parameter_sweep,
    table1_reproduction,
)
from .errors import ArcmemError, ParseError, ValidationError
from .integrator import Trajectory, settle_to_periodic
from .model import ArcState, CircuitParameters, source_voltage
from .scenario import Scenario, load_scenario, preset, preset_names

__all__ = ["main", "run"]

_WAVEFORM_POINTS = 2000
_START_STATE = ArcState(0.0, 1.0)


def _fmt(value) -> str:
    """Shortest decimal that round-trips to the same float."""
    return repr(float(value))


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _waveform_rows(traj: Trajectory, circuit: CircuitParameters):
    span = traj.t1 - traj.t0
    ts = traj.t0 + np.arange(_WAVEFORM_POINTS) * (span / _WAVEFORM_POINTS)
    vals = traj.sample(ts)
    i_s, g_s = vals[:, 0], vals[:, 1]
    u_s = i_s / g_s
    e_s = source_voltage(circuit, ts)
    return [tuple(_fmt(x) for x in row)
            for row in zip(ts, i_s, g_s, u_s, e_s)]


def _write_waveform(path: Path, traj: Trajectory,
                    circuit: CircuitParameters) -> None:
    _write_csv(path, ["t", "i", "g", "u", "E"], _waveform_rows(traj, circuit))


def _write_raw_steps(path: Path, traj: Trajectory) -> None:
    rows = [(_fmt(t), _fmt(i), _fmt(g), _fmt(i / g))
            for t, (i, g) in zip(traj.times, traj.states)]
    _write_csv(path, ["t", "i", "g", "u"], rows)


def _settle_scenario(scenario: Scenario):
    return settle_to_periodic(
        scenario.arc, scenario.circuit, _START_STATE, scenario.integrator,
        settle_tol=scenario.settle.tol,
        min_periods=scenario.settle.min_periods,
        max_periods=scenario.settle.max_periods,
    )


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_simulate(scenario: Scenario, out: Path, raw_steps: bool) -> int:
    steady, report = _settle_scenario(scenario)
    _write_waveform(out / "waveform.csv", steady, scenario.circuit)
    if raw_steps:
        _write_raw_steps(out / "waveform_steps.csv", steady)
    i_s, g_s = steady.sample(
        steady.t0 + np.arange(_WAVEFORM_POINTS)
        * ((steady.t1 - steady.t0) / _WAVEFORM_POINTS)).T
    lines = [
        f"scenario: {scenario.name}",
        f"operating frequency: {_fmt(scenario.circuit.f)} Hz",
        f"settled: {report.converged}",
        f"periods integrated: {report.periods_integrated}",
        f"period-map residual: {_fmt(report.period_map_residual)}",
        f"steps in steady period: {steady.n_steps}",
        f"peak current: {_fmt(np.max(np.abs(i_s)))} A",
        f"conductance range: [{_fmt(g_s.min())}, {_fmt(g_s.max())}] S",
        "",
    ]
    (out / "summary.txt").write_text("\n".join(lines), encoding="utf-8")
    return 0


def _sweep_frequencies(scenario: Scenario) -> list[float]:
    if scenario.sweep is not None and scenario.sweep.axis == "f":
        return list(scenario.sweep.values)
    return [scenario.circuit.f]


def _cmd_fingerprints(scenario: Scenario, out: Path,
                      assert_pass: bool) -> int:
    report = fingerprint_report(
        scenario.arc, scenario.circuit, _sweep_frequencies(scenario),
        cfg=scenario.integrator, settle_tol=scenario.settle.tol,
        min_periods=scenario.settle.min_periods,
        max_periods=scenario.settle.max_periods,
    )
    _write_csv(
        out / "fingerprints.csv",
        ["f", "lobe_area", "loop_width_metric", "converged", "error"],
        [(
            _fmt(e.f),
            "" if e.lobe_area is None else _fmt(e.lobe_area),
            "" if e.loop_width_metric is None else _fmt(e.loop_width_metric),
            str(e.converged),
            e.error or "",
        ) for e in report.fp3_evidence],
    )
    _write_csv(
        out / "pinch_points.csv",
        ["t_star", "g_at", "slope", "concavity_sign", "di_dt_at", "dg_dt_at"],
        [(_fmt(p.t_star), _fmt(p.g_at), _fmt(p.slope),
          str(p.concavity_sign), _fmt(p.di_dt_at), _fmt(p.dg_dt_at))
         for p in report.pinch_points],
    )
    lines = [
        f"scenario: {scenario.name}",
        f"pinched hysteresis (equal slopes, opposite concavity): "
        f"{'pass' if report.fp1_pass else 'FAIL'}",
        f"coincident zero crossings: "
        f"{'pass' if report.fp2_pass else 'FAIL'}",
        f"  max |u(t*)| / max|u| = {_fmt(report.fp2_max_voltage_ratio)}",
        f"  min g(t*) = {_fmt(report.fp2_min_g)} S",
        f"high-frequency loop collapse: "
        f"{'pass' if report.fp3_pass else 'FAIL'}",
        "",
    ]
    (out / "summary.txt").write_text("\n".join(lines), encoding="utf-8")
    if all(e.error is not None for e in report.fp3_evidence):
        return 2
    if assert_pass and not (report.fp1_pass and report.fp2_pass
                            and report.fp3_pass):
        return 3
    return 0


def _cmd_sweep(scenario: Scenario, out: Path, jobs: int) -> int:
    if scenario.sweep is None:
        raise ValidationError("scenario has no sweep section")
    points = parameter_sweep(
        scenario.arc, scenario.circuit, scenario.sweep.axis,
        scenario.sweep.values, cfg=scenario.integrator,
        settle_tol=scenario.settle.tol,
        min_periods=scenario.settle.min_periods,
        max_periods=scenario.settle.max_periods, jobs=jobs,
    )
    rows = []
    for p in points:
        if p.ok:
            m = p.metrics
            rows.append((
                p.axis, _fmt(p.value), str(p.settle.converged),
                str(p.settle.periods_integrated),
                _fmt(p.settle.period_map_residual),
                _fmt(m.lobe_area), _fmt(m.loop_width_metric),
                _fmt(m.i_peak), _fmt(m.g_mean),
                _fmt(m.g_min_observed), _fmt(m.g_max_observed), "",
            ))
        else:
            rows.append((p.axis, _fmt(p.value), "False", "", "", "", "",
                         "", "", "", "", p.error))
    _write_csv(
        out / "metrics.csv",
        ["axis", "value", "converged", "periods", "residual", "lobe_area",
         "loop_width_metric", "i_peak", "g_mean", "g_min_observed",
         "g_max_observed", "error"],
        rows,
    )
    circuit = scenario.circuit
    for p in points:
        if p.ok:
            if p.axis == "f":
                run_circuit = CircuitParameters(
                    r=circuit.r, l=circuit.l, e_m=circuit.e_m, f=p.value)
            elif p.axis == "L":
                run_circuit = CircuitParameters(
                    r=circuit.r, l=p.value, e_m=circuit.e_m, f=circuit.f)
            else:
                run_circuit = circuit
            _write_waveform(
                out / f"waveform_{p.axis}_{_fmt(p.value)}.csv",
                p.trajectory, run_circuit)
    return 2 if all(not p.ok for p in points) else 0


def _cmd_table1(scenario: Scenario, out: Path) -> int:
    freqs = _sweep_frequencies(scenario)
    if len(freqs) == 1:
        freqs = [3e3, 5e3, 7e3, 9e3, 11e3]
    rows = table1_reproduction(
        scenario.arc, scenario.circuit, freqs, cfg=scenario.integrator,
        settle_tol=scenario.settle.tol,
        min_periods=scenario.settle.min_periods,
        max_periods=scenario.settle.max_periods,
    )
    _write_csv(
        out / "table1.csv",
        ["f_kHz", "I_m", "g_mean", "hf_estimate", "rel_error"],
        [(_fmt(r.f / 1000.0), _fmt(r.i_m), _fmt(r.g_mean),
          _fmt(r.hf_estimate), _fmt(r.rel_error)) for r in rows],
    )
    return 0


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def run(subcommand: str, scenario: Scenario, out_dir=".",
        assert_fingerprints: bool = False, jobs: Optional[int] = None,
        raw_steps: bool = False) -> int:
    """Execute one subcommand against a validated scenario.

    Returns the process exit code; output files land in ``out_dir``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    jobs = jobs if jobs is not None else (os.cpu_count() or 1)
    try:
        if subcommand == "simulate":
            return _cmd_simulate(scenario, out, raw_steps)
        if subcommand == "fingerprints":
            return _cmd_fingerprints(scenario, out, assert_fingerprints)
        if subcommand == "sweep":
            return _cmd_sweep(scenario, out, jobs)
        if subcommand == "table1":
            return _cmd_table1(scenario, out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ArcmemError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    raise ValueError(f"unknown subcommand {subcommand!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcmem",
        description="Simulate a dynamic-conductance arc in a driven RL "
                    "loop and analyze its memristive fingerprints.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_text in (
        ("simulate", "settle one operating point and write the waveform"),
        ("fingerprints", "grade the three fingerprints"),
        ("sweep", "run the scenario's parameter sweep"),
        ("table1", "frequency sweep against the high-frequency estimate"),
    ):
        p = sub.add_parser(name, help=help_text)
        source = p.add_mutually_exclusive_group(required=True)
        source.add_argument("--scenario", metavar="PATH",
                            help="scenario file to load")
        source.add_argument("--preset", metavar="NAME",
                            help=f"bundled preset: {', '.join(preset_names())}")
        p.add_argument("--out", metavar="DIR", default=None,
                       help="output directory (default: scenario's)")
        p.add_argument("--assert", dest="assert_fingerprints",
                       action="store_true",
                       help="exit 3 when a fingerprint check fails")
        p.add_argument("--jobs", type=int, default=None, metavar="N",
                       help="sweep worker processes (default: CPU count)")
        p.add_argument("--raw-steps", action="store_true",
                       help="also write raw accepted integration steps")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.scenario is not None:
            scenario = load_scenario(args.scenario)
        else:
            scenario = preset(args.preset)
    except (ParseError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out_dir = args.out if args.out is not None else scenario.output.directory
    return run(args.subcommand, scenario, out_dir=out_dir,
               assert_fingerprints=args.assert_fingerprints, jobs=args.jobs,
               raw_steps=args.raw_steps)


if __name__ == "__main__":
    sys.exit(main())

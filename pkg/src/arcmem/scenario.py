"""Scenario files and bundled presets.

A scenario bundles everything one run needs: arc constants, drive circuit,
integrator tolerances, settle policy and an optional one-axis parameter
sweep.  Scenarios load from flat text files with one ``section.key =
value`` assignment per line and ``#`` comments::

    # 50 Hz operating point
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
    sweep.axis   = f          # optional
    sweep.values = 50, 400    # comma separated

Recognized keys
---------------
arc:        g_min, i0, k, u_c, p_m, theta (constant law) or
            theta0/theta1/alpha (current-dependent law), sigma
            (gaussian | power_exp | shielded_exp | logistic),
            sigma_a, sigma_delta, sigma_beta
circuit:    r, l, e_m, f
integrator: abs_tol, rel_tol, max_step, initial_step, max_steps
settle:     tol, min_periods, max_periods
sweep:      axis (K | L | U_C | I0 | f), values
output:     directory, formats (csv)

Unknown keys are hard errors.  Named presets cover the operating points
used throughout the regression and acceptance suites.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Union

from .analysis import _apply_axis
from .errors import ParseError, ValidationError
from .integrator import IntegratorConfig
from .model import (
    ArcParameters,
    CircuitParameters,
    ConstantTheta,
    CurrentDependentTheta,
    GaussianSigma,
    LogisticSigma,
    PowerExpSigma,
    ShieldedExpSigma,
)

__all__ = ["SettleConfig", "SweepSpec", "OutputConfig", "Scenario",
           "load_scenario", "preset", "preset_names"]


@dataclass(frozen=True)
class SettleConfig:
    tol: float = 1e-8
    min_periods: int = 2
    max_periods: int = 1000

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"settle.tol must be > 0, got {self.tol}")
        if self.min_periods < 1:
            raise ValueError(
                f"settle.min_periods must be >= 1, got {self.min_periods}")
        if self.max_periods < self.min_periods:
            raise ValueError(
                f"settle.max_periods must be >= min_periods, got "
                f"{self.max_periods}")


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "."
    formats: tuple[str, ...] = ("csv",)

    def __post_init__(self):
        unknown = set(self.formats) - {"csv"}
        if unknown:
            raise ValueError(f"unsupported output formats: {sorted(unknown)}")


@dataclass(frozen=True)
class Scenario:
    """A fully validated run description."""

    name: str
    arc: ArcParameters
    circuit: CircuitParameters
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    settle: SettleConfig = field(default_factory=SettleConfig)
    sweep: Optional[SweepSpec] = None
    output: OutputConfig = field(default_factory=OutputConfig)


# ---------------------------------------------------------------------------
# File parsing
# ---------------------------------------------------------------------------

_FLOAT_KEYS = {
    ("arc", "g_min"), ("arc", "i0"), ("arc", "k"), ("arc", "u_c"),
    ("arc", "p_m"), ("arc", "theta"), ("arc", "theta0"), ("arc", "theta1"),
    ("arc", "alpha"), ("arc", "sigma_a"), ("arc", "sigma_delta"),
    ("arc", "sigma_beta"),
    ("circuit", "r"), ("circuit", "l"), ("circuit", "e_m"), ("circuit", "f"),
    ("integrator", "abs_tol"), ("integrator", "rel_tol"),
    ("integrator", "max_step"), ("integrator", "initial_step"),
    ("settle", "tol"),
}
_INT_KEYS = {
    ("integrator", "max_steps"),
    ("settle", "min_periods"), ("settle", "max_periods"),
}
_STR_KEYS = {("arc", "sigma"), ("sweep", "axis"), ("output", "directory")}
_LIST_KEYS = {("sweep", "values"), ("output", "formats")}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | _LIST_KEYS

_REQUIRED = [
    ("arc", "g_min"), ("arc", "i0"), ("arc", "k"), ("arc", "u_c"),
    ("arc", "p_m"),
    ("circuit", "r"), ("circuit", "l"), ("circuit", "e_m"), ("circuit", "f"),
]

_SIGMA_NAMES = {"gaussian", "power_exp", "shielded_exp", "logistic"}


def _parse_lines(text: str) -> dict[tuple[str, str], tuple[str, int]]:
    entries: dict[tuple[str, str], tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'section.key = value'", line=lineno)
        key_part, value_part = line.split("=", 1)
        key_part = key_part.strip()
        if key_part.count(".") != 1:
            raise ParseError(f"malformed key {key_part!r}", line=lineno)
        section, key = (p.strip() for p in key_part.split("."))
        if (section, key) not in _ALL_KEYS:
            raise ParseError(f"unknown key {section}.{key!r}", line=lineno)
        if (section, key) in entries:
            raise ParseError(f"duplicate key {section}.{key}", line=lineno)
        entries[(section, key)] = (value_part.strip(), lineno)
    return entries


def _take_float(entries, section, key):
    if (section, key) not in entries:
        return None
    text, lineno = entries.pop((section, key))
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"{section}.{key}: not a number: {text!r}",
                         line=lineno) from None


def _take_int(entries, section, key):
    if (section, key) not in entries:
        return None
    text, lineno = entries.pop((section, key))
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{section}.{key}: not an integer: {text!r}",
                         line=lineno) from None


def _take_str(entries, section, key):
    if (section, key) not in entries:
        return None
    return entries.pop((section, key))[0]


def _take_float_list(entries, section, key):
    if (section, key) not in entries:
        return None
    text, lineno = entries.pop((section, key))
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise ParseError(f"{section}.{key}: not a number list: {text!r}",
                         line=lineno) from None


def _build_theta(entries) -> ConstantTheta | CurrentDependentTheta:
    theta = _take_float(entries, "arc", "theta")
    theta0 = _take_float(entries, "arc", "theta0")
    theta1 = _take_float(entries, "arc", "theta1")
    alpha = _take_float(entries, "arc", "alpha")
    current_parts = [theta0, theta1, alpha]
    if theta is not None:
        if any(p is not None for p in current_parts):
            raise ValidationError(
                "arc.theta and arc.theta0/theta1/alpha are mutually exclusive")
        return ConstantTheta(theta)
    if all(p is not None for p in current_parts):
        return CurrentDependentTheta(theta0, theta1, alpha)
    raise ValidationError(
        "either arc.theta or all of arc.theta0/theta1/alpha must be given")


def _build_sigma(entries):
    name = _take_str(entries, "arc", "sigma") or "gaussian"
    a = _take_float(entries, "arc", "sigma_a")
    delta = _take_float(entries, "arc", "sigma_delta")
    beta = _take_float(entries, "arc", "sigma_beta")
    if name not in _SIGMA_NAMES:
        raise ValidationError(
            f"arc.sigma must be one of {sorted(_SIGMA_NAMES)}, got {name!r}")
    if name == "gaussian":
        if any(v is not None for v in (a, delta, beta)):
            raise ValidationError("gaussian sigma takes no extra parameters")
        return GaussianSigma()
    if name == "power_exp":
        if a is None or delta is not None or beta is not None:
            raise ValidationError("power_exp sigma requires exactly sigma_a")
        return PowerExpSigma(a)
    if name == "shielded_exp":
        if a is None or delta is None or beta is not None:
            raise ValidationError(
                "shielded_exp sigma requires sigma_a and sigma_delta")
        return ShieldedExpSigma(a, delta)
    if beta is None or a is not None or delta is not None:
        raise ValidationError("logistic sigma requires exactly sigma_beta")
    return LogisticSigma(beta)


def _scenario_from_entries(name: str, entries) -> Scenario:
    for section, key in _REQUIRED:
        if (section, key) not in entries:
            raise ValidationError(f"missing required key {section}.{key}")

    try:
        theta_law = _build_theta(entries)
        sigma_law = _build_sigma(entries)
        arc = ArcParameters(
            g_min=_take_float(entries, "arc", "g_min"),
            i0=_take_float(entries, "arc", "i0"),
            k=_take_float(entries, "arc", "k"),
            u_c=_take_float(entries, "arc", "u_c"),
            p_m=_take_float(entries, "arc", "p_m"),
            theta_law=theta_law,
            sigma_law=sigma_law,
        )
        circuit = CircuitParameters(
            r=_take_float(entries, "circuit", "r"),
            l=_take_float(entries, "circuit", "l"),
            e_m=_take_float(entries, "circuit", "e_m"),
            f=_take_float(entries, "circuit", "f"),
        )
        abs_tol = _take_float(entries, "integrator", "abs_tol")
        rel_tol = _take_float(entries, "integrator", "rel_tol")
        max_steps = _take_int(entries, "integrator", "max_steps")
        integ = IntegratorConfig(
            abs_tol=1e-10 if abs_tol is None else abs_tol,
            rel_tol=1e-10 if rel_tol is None else rel_tol,
            max_step=_take_float(entries, "integrator", "max_step"),
            initial_step=_take_float(entries, "integrator", "initial_step"),
            max_steps=1_000_000 if max_steps is None else max_steps,
        )
        settle_kwargs = {}
        if (tol := _take_float(entries, "settle", "tol")) is not None:
            settle_kwargs["tol"] = tol
        if (mp := _take_int(entries, "settle", "min_periods")) is not None:
            settle_kwargs["min_periods"] = mp
        if (xp := _take_int(entries, "settle", "max_periods")) is not None:
            settle_kwargs["max_periods"] = xp
        settle = SettleConfig(**settle_kwargs)

        axis = _take_str(entries, "sweep", "axis")
        values = _take_float_list(entries, "sweep", "values")
        if (axis is None) != (values is None):
            raise ValidationError(
                "sweep.axis and sweep.values must be given together")
        sweep = None
        if axis is not None:
            if not values:
                raise ValidationError("sweep.values must be nonempty")
            for v in values:
                _apply_axis(arc, circuit, axis, v)  # positivity via types
            sweep = SweepSpec(axis=axis, values=values)

        out_kwargs = {}
        if (d := _take_str(entries, "output", "directory")) is not None:
            out_kwargs["directory"] = d
        if ("output", "formats") in entries:
            text, _ = entries.pop(("output", "formats"))
            out_kwargs["formats"] = tuple(
                p.strip() for p in text.split(",") if p.strip())
        output = OutputConfig(**out_kwargs)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None

    return Scenario(name=name, arc=arc, circuit=circuit, integrator=integ,
                    settle=settle, sweep=sweep, output=output)


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Parse and validate a scenario file.

    Raises :class:`ParseError` (with line number) for malformed or unknown
    lines and :class:`ValidationError` when a value violates a parameter
    invariant.
    """
    path = Path(path)
    entries = _parse_lines(path.read_text(encoding="utf-8"))
    return _scenario_from_entries(path.stem, entries)


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

_BASE_ARC = ArcParameters(g_min=1e-8, i0=4.8, k=0.1, u_c=30.0, p_m=20.0,
                          theta_law=ConstantTheta(4e-4))
_BASE_CIRCUIT = CircuitParameters(r=0.2, l=1e-3, e_m=75.0, f=50.0)
# Faster arc and stronger radiation loss used by the frequency-collapse
# and high-frequency-limit studies.
_FAST_ARC = replace(_BASE_ARC, k=0.5, theta_law=ConstantTheta(2e-4))


def _presets() -> dict[str, Scenario]:
    return {
        "fig1": Scenario(
            name="fig1", arc=_BASE_ARC, circuit=_BASE_CIRCUIT),
        "fig2a": Scenario(
            name="fig2a", arc=_BASE_ARC, circuit=_BASE_CIRCUIT,
            sweep=SweepSpec("I0", (2.4, 4.8, 9.6, 16.8))),
        "fig3": Scenario(
            name="fig3", arc=_FAST_ARC,
            circuit=replace(_BASE_CIRCUIT, f=400.0),
            sweep=SweepSpec("f", (400.0, 3000.0, 5000.0, 7000.0, 9000.0,
                                  11000.0))),
        "fig4a": Scenario(
            name="fig4a", arc=_BASE_ARC, circuit=_BASE_CIRCUIT,
            sweep=SweepSpec("K", (0.0, 0.3, 1.0, 2.0, 5.0))),
        "fig4b": Scenario(
            name="fig4b", arc=_BASE_ARC, circuit=_BASE_CIRCUIT,
            sweep=SweepSpec("L", (5e-5, 1e-4, 5e-4, 1e-3, 5e-3))),
        "fig4c": Scenario(
            name="fig4c", arc=_BASE_ARC, circuit=_BASE_CIRCUIT,
            sweep=SweepSpec("U_C", (1.0, 5.0, 10.0, 25.0, 50.0))),
        "table1": Scenario(
            name="table1", arc=_FAST_ARC,
            circuit=replace(_BASE_CIRCUIT, f=3000.0),
            sweep=SweepSpec("f", (3000.0, 5000.0, 7000.0, 9000.0, 11000.0))),
    }


def preset(name: str) -> Scenario:
    """Bundled named operating point used by the reproduction suites."""
    presets = _presets()
    if name not in presets:
        raise ValidationError(
            f"unknown preset {name!r}; available: {sorted(presets)}")
    return presets[name]


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(_presets()))

"""Adaptive embedded Runge-Kutta integration of the two-state arc system.

Dormand-Prince 5(4) pair with the standard free quartic interpolant, a
per-component mixed absolute/relative error test, sign-change event
location on the dense output, and period-map settling to the periodic
steady state of the driven circuit.

The propagating solution is 5th order; the embedded 4th-order solution
provides the local error estimate.  A step is accepted only when every
component satisfies ``|err_c| <= abs_tol + rel_tol * |x_c|`` with ``|x_c|``
the larger state magnitude at the step ends.  Integration is strictly
sequential and bit-deterministic for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import (
    MaxStepsExceeded,
    NonPositiveConductance,
    NotConverged,
    StepUnderflow,
)
from .model import ArcParameters, ArcState, CircuitParameters, arc_rhs

__all__ = [
    "IntegratorConfig",
    "Trajectory",
    "SettleReport",
    "integrate",
    "find_zero_crossings",
    "settle_to_periodic",
]

RhsFunction = Callable[[float, ArcState], tuple[float, float]]

# Dormand-Prince 5(4) tableau.  Stage 7 evaluates the right-hand side at the
# accepted endpoint (FSAL), so it doubles as stage 1 of the next step.
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

# Interpolation matrix of the free 4th-order continuous extension:
# y(t0 + x*h) = y0 + h * sum_i k_i * sum_j P[i][j] * x**(j+1).
_P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608,
     -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933,
     87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304,
     -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408,
     701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883,
     -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
# Fraction of machine epsilon below which a step cannot advance time.
_UNDERFLOW_ULPS = 16.0


@dataclass(frozen=True)
class IntegratorConfig:
    """Tolerances and step limits for :func:`integrate`.

    ``max_step`` and ``initial_step`` may be left as None, in which case
    they are derived from the integration span: max_step = span/10 and
    initial_step = min(max_step, span/1000).  ``max_steps`` bounds the
    number of attempted (accepted plus rejected) steps.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_step: Optional[float] = None
    initial_step: Optional[float] = None
    max_steps: int = 1_000_000

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be > 0, got {self.abs_tol}")
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.max_step is not None and not self.max_step > 0:
            raise ValueError(f"max_step must be > 0, got {self.max_step}")
        if self.initial_step is not None:
            if not self.initial_step > 0:
                raise ValueError(
                    f"initial_step must be > 0, got {self.initial_step}")
            if self.max_step is not None and self.initial_step > self.max_step:
                raise ValueError(
                    f"initial_step {self.initial_step} exceeds max_step "
                    f"{self.max_step}")
        if not self.max_steps > 0:
            raise ValueError(f"max_steps must be > 0, got {self.max_steps}")

    def resolve(self, span: float) -> tuple[float, float]:
        """Concrete (max_step, initial_step) for an integration span."""
        max_step = self.max_step if self.max_step is not None else span / 10.0
        if self.initial_step is not None:
            initial = min(self.initial_step, max_step)
        else:
            initial = min(max_step, span / 1000.0)
        return max_step, initial


@dataclass(frozen=True)
class SettleReport:
    """Outcome of period-map settling.

    periods_integrated counts the settling periods only, excluding the
    final steady period returned to the caller.  The residual is the mixed
    norm max_c |x_new_c - x_old_c| / (1 + |x_new_c|) over the last pair of
    period boundaries.
    """

    periods_integrated: int
    converged: bool
    period_map_residual: float


class Trajectory:
    """Densely interpolable solution of one integration run.

    Stores the accepted nodes, all seven stage derivatives per step and the
    per-step error ratios, which is enough to evaluate the continuous
    4th-order extension (and its time derivative) anywhere in the span.
    Values are immutable after construction and safe to share between
    threads.
    """

    def __init__(self, times, states, stages, error_ratios,
                 n_rejected: int, n_rhs_evals: int):
        self._t = np.asarray(times, dtype=float)
        self._y = np.asarray(states, dtype=float)
        self._k = np.asarray(stages, dtype=float)
        self._err = np.asarray(error_ratios, dtype=float)
        self._n_rejected = int(n_rejected)
        self._n_rhs_evals = int(n_rhs_evals)
        if self._t.ndim != 1 or len(self._t) < 2:
            raise ValueError("trajectory needs at least one accepted step")
        if np.any(np.diff(self._t) <= 0):
            raise ValueError("node times must be strictly increasing")
        self._h = np.diff(self._t)
        # Per-segment dense coefficients: Q[s] = K[s].T @ P, shape (2, 4).
        self._q = np.einsum("sic,ij->scj", self._k, _P)

    # -- metadata ----------------------------------------------------------

    @property
    def t0(self) -> float:
        return float(self._t[0])

    @property
    def t1(self) -> float:
        return float(self._t[-1])

    @property
    def times(self) -> np.ndarray:
        """Accepted node times (read-only view)."""
        v = self._t.view()
        v.flags.writeable = False
        return v

    @property
    def states(self) -> np.ndarray:
        """Accepted node states, shape (n_nodes, 2) for (i, g)."""
        v = self._y.view()
        v.flags.writeable = False
        return v

    @property
    def error_ratios(self) -> np.ndarray:
        """Estimated local error over mixed tolerance for each accepted step."""
        v = self._err.view()
        v.flags.writeable = False
        return v

    @property
    def n_steps(self) -> int:
        return len(self._h)

    @property
    def n_rejected(self) -> int:
        return self._n_rejected

    @property
    def n_rhs_evals(self) -> int:
        return self._n_rhs_evals

    # -- evaluation --------------------------------------------------------

    def _locate(self, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        slack = 1e-12 * (self.t1 - self.t0)
        if np.any(ts < self.t0 - slack) or np.any(ts > self.t1 + slack):
            raise ValueError(
                f"evaluation time outside span [{self.t0}, {self.t1}]")
        idx = np.clip(np.searchsorted(self._t, ts, side="right") - 1,
                      0, len(self._h) - 1)
        x = (ts - self._t[idx]) / self._h[idx]
        return idx, np.clip(x, 0.0, None)

    def sample(self, ts) -> np.ndarray:
        """Interpolated states at times ts; shape (..., 2) for (i, g).

        Node times reproduce the stored node states exactly.
        """
        ts_arr = np.asarray(ts, dtype=float)
        flat = np.atleast_1d(ts_arr).ravel()
        idx, x = self._locate(flat)
        xp = np.stack([x, x**2, x**3, x**4], axis=-1)
        vals = self._y[idx] + self._h[idx, None] * np.einsum(
            "mcj,mj->mc", self._q[idx], xp)
        # The polynomial hits left nodes exactly (x == 0); pin the final
        # node, where x == 1 only reproduces it to roundoff.
        at_end = flat == self._t[-1]
        if np.any(at_end):
            vals[at_end] = self._y[-1]
        return vals.reshape(ts_arr.shape + (2,))

    def derivative(self, ts) -> np.ndarray:
        """Time derivative (di/dt, dg/dt) of the interpolant at ts."""
        ts_arr = np.asarray(ts, dtype=float)
        flat = np.atleast_1d(ts_arr).ravel()
        idx, x = self._locate(flat)
        xp = np.stack([np.ones_like(x), 2 * x, 3 * x**2, 4 * x**3], axis=-1)
        vals = np.einsum("mcj,mj->mc", self._q[idx], xp)
        return vals.reshape(ts_arr.shape + (2,))

    def state(self, t: float) -> ArcState:
        i, g = self.sample(float(t))
        return ArcState(float(i), float(g))

    def current(self, ts):
        return self.sample(ts)[..., 0]

    def conductance(self, ts):
        return self.sample(ts)[..., 1]

    def voltage(self, ts):
        vals = self.sample(ts)
        return vals[..., 0] / vals[..., 1]

    def current_derivative(self, ts):
        return self.derivative(ts)[..., 0]

    def conductance_derivative(self, ts):
        return self.derivative(ts)[..., 1]

    def breakpoints(self, window: Optional[tuple[float, float]] = None
                    ) -> np.ndarray:
        """Node times inside the window, including its endpoints."""
        if window is None:
            return self.times.copy()
        ta, tb = window
        inner = self._t[(self._t > ta) & (self._t < tb)]
        return np.concatenate([[ta], inner, [tb]])


def _step_floor(t: float, t_end: float) -> float:
    return _UNDERFLOW_ULPS * np.finfo(float).eps * max(abs(t), abs(t_end), 1e-300)


def integrate(system: RhsFunction, s0: ArcState,
              t_span: tuple[float, float], cfg: IntegratorConfig) -> Trajectory:
    """Integrate ``d(i, g)/dt = system(t, state)`` over t_span.

    Raises :class:`NonPositiveConductance` if the initial or an accepted
    state has g <= 0 (a g <= 0 probe inside a trial step only rejects that
    step), :class:`StepUnderflow` when error control demands a step below
    the machine floor, and :class:`MaxStepsExceeded` when the attempt
    budget runs out.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError(f"t_span must satisfy t1 > t0, got {t_span}")
    if not s0.g > 0:
        raise NonPositiveConductance(f"initial conductance {s0.g} <= 0")

    max_step, h = cfg.resolve(t1 - t0)
    atol, rtol = cfg.abs_tol, cfg.rel_tol

    t = t0
    yi, yg = float(s0.i), float(s0.g)
    f_i, f_g = system(t, ArcState(yi, yg))
    n_evals = 1
    n_rejected = 0
    attempts = 0

    times = [t]
    states = [(yi, yg)]
    stages = []
    err_ratios = []

    while t < t1:
        if attempts >= cfg.max_steps:
            raise MaxStepsExceeded(
                f"exceeded {cfg.max_steps} attempted steps at t = {t}")
        attempts += 1

        h = min(h, max_step)
        clipped = h >= t1 - t
        if clipped:
            h = t1 - t
        if h < _step_floor(t, t1):
            raise StepUnderflow(f"step size {h} underflowed at t = {t}")

        # Stage evaluations; a g <= 0 probe marks the trial as failed.
        k = [(f_i, f_g)]
        failed = False
        for s in range(1, 6):
            a = _A[s]
            di = dg = 0.0
            for j in range(s):
                di += a[j] * k[j][0]
                dg += a[j] * k[j][1]
            si, sg = yi + h * di, yg + h * dg
            try:
                k.append(system(t + _C[s] * h, ArcState(si, sg)))
            except NonPositiveConductance:
                failed = True
                break
            finally:
                n_evals += 1
        if not failed:
            ni = ng = 0.0
            for j in range(6):
                ni += _B[j] * k[j][0]
                ng += _B[j] * k[j][1]
            yi_new, yg_new = yi + h * ni, yg + h * ng
            try:
                k.append(system(t + h, ArcState(yi_new, yg_new)))
            except NonPositiveConductance:
                failed = True
            finally:
                n_evals += 1
        if failed:
            n_rejected += 1
            h *= 0.5
            continue

        err_i = err_g = 0.0
        for j in range(7):
            err_i += _E[j] * k[j][0]
            err_g += _E[j] * k[j][1]
        scale_i = atol + rtol * max(abs(yi), abs(yi_new))
        scale_g = atol + rtol * max(abs(yg), abs(yg_new))
        ratio = max(abs(h * err_i) / scale_i, abs(h * err_g) / scale_g)

        if not math.isfinite(ratio):
            n_rejected += 1
            h *= 0.5
            continue
        if ratio > 1.0:
            n_rejected += 1
            h *= max(_MIN_FACTOR, _SAFETY * ratio ** -0.2)
            continue

        # Accepted.
        if yg_new <= 0.0:
            raise NonPositiveConductance(
                f"conductance collapsed to {yg_new} at t = {t + h}")
        t = t1 if clipped else t + h
        yi, yg = yi_new, yg_new
        f_i, f_g = k[6]          # FSAL reuse
        times.append(t)
        states.append((yi, yg))
        stages.append(k)
        err_ratios.append(ratio)
        factor = _MAX_FACTOR if ratio == 0.0 \
            else min(_MAX_FACTOR, _SAFETY * ratio ** -0.2)
        h *= factor

    return Trajectory(times, states, stages, err_ratios, n_rejected, n_evals)


# ---------------------------------------------------------------------------
# Zero-crossing location
# ---------------------------------------------------------------------------

# Extra sample points inside each accepted step when scanning for sign
# changes; the interpolant is quartic, so four interior probes cannot miss
# a transversal crossing pair.
_SCAN_SUBDIVISIONS = 4


def find_zero_crossings(traj: Trajectory, component: str = "current",
                        window: Optional[tuple[float, float]] = None
                        ) -> list[float]:
    """Times where the selected signal changes sign, sorted ascending.

    Crossings are bracketed on a subdivided node grid of the dense output
    and refined by root finding until |signal| <= 1e-12 * max|signal| over
    the window.  Tangential zeros (no sign change) are excluded.  component
    is "current" or "voltage"; since u = i/g with g > 0, both share the
    same crossing set.
    """
    if component not in ("current", "voltage"):
        raise ValueError(f"component must be 'current' or 'voltage', "
                         f"got {component!r}")
    if window is None:
        window = (traj.t0, traj.t1)
    ta, tb = float(window[0]), float(window[1])
    slack = 1e-12 * (traj.t1 - traj.t0)
    if ta < traj.t0 - slack or tb > traj.t1 + slack or not tb > ta:
        raise ValueError(f"window {window} outside trajectory span "
                         f"[{traj.t0}, {traj.t1}]")

    if component == "current":
        signal = traj.current

        def slope(t: float) -> float:
            return float(traj.current_derivative(t))
    else:
        signal = traj.voltage

        def slope(t: float) -> float:
            i, g = traj.sample(t)
            di, dg = traj.derivative(t)
            return float((di * g - i * dg) / (g * g))

    nodes = traj.breakpoints((ta, tb))
    offsets = np.linspace(0.0, 1.0, _SCAN_SUBDIVISIONS + 1)[:-1]
    grid = np.unique(np.concatenate([
        (nodes[:-1, None] + np.diff(nodes)[:, None] * offsets).ravel(),
        [tb],
    ]))
    values = np.asarray(signal(grid), dtype=float)
    scale = float(np.max(np.abs(values)))
    if scale == 0.0:
        return []

    def f(t: float) -> float:
        return float(signal(t))

    roots: list[float] = []
    min_gap = 1e-9 * (tb - ta)
    for j in range(len(grid) - 1):
        va, vb = values[j], values[j + 1]
        if va == 0.0:
            # Node zero: count it only if the signal actually flips around it.
            prev = values[j - 1] if j > 0 else 0.0
            if prev * vb < 0.0:
                roots.append(float(grid[j]))
            continue
        if va * vb < 0.0:
            root = brentq(f, grid[j], grid[j + 1],
                          xtol=1e-15 * max(abs(tb), abs(ta), 1.0),
                          rtol=4 * np.finfo(float).eps)
            # One Newton polish pushes |signal| to the refinement target.
            fr, sr = f(root), slope(root)
            if sr != 0.0:
                polished = root - fr / sr
                if grid[j] <= polished <= grid[j + 1] and \
                        abs(f(polished)) < abs(fr):
                    root = polished
            roots.append(float(root))
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > min_gap:
            deduped.append(r)
    return deduped


# ---------------------------------------------------------------------------
# Periodic steady state
# ---------------------------------------------------------------------------

def _period_config(cfg: IntegratorConfig, period: float) -> IntegratorConfig:
    """Cap the step size at period/200 so the waveform is resolved."""
    cap = period / 200.0
    max_step = cap if cfg.max_step is None else min(cfg.max_step, cap)
    initial = cfg.initial_step
    if initial is not None and initial > max_step:
        initial = max_step
    return IntegratorConfig(abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol,
                            max_step=max_step, initial_step=initial,
                            max_steps=cfg.max_steps)


def settle_to_periodic(arc: ArcParameters, circuit: CircuitParameters,
                       s0: ArcState, cfg: IntegratorConfig,
                       settle_tol: float = 1e-8, min_periods: int = 2,
                       max_periods: int = 200
                       ) -> tuple[Trajectory, SettleReport]:
    """Integrate period by period until the period map has a fixed point,
    then return one further full period as the steady trajectory.

    Convergence is declared when the states at successive period boundaries
    agree to ``settle_tol`` in the mixed norm |delta| / (1 + |x|), per
    component, after at least ``min_periods`` periods.  Raises
    :class:`NotConverged` (with the report attached) if ``max_periods``
    periods pass without convergence.
    """
    if min_periods < 1:
        raise ValueError(f"min_periods must be >= 1, got {min_periods}")
    if max_periods < min_periods:
        raise ValueError(f"max_periods {max_periods} < min_periods "
                         f"{min_periods}")
    period = circuit.period
    run_cfg = _period_config(cfg, period)
    rhs = partial(arc_rhs, arc, circuit)

    state = s0
    residual = math.inf
    for n in range(1, max_periods + 1):
        leg = integrate(rhs, state, ((n - 1) * period, n * period), run_cfg)
        new_state = leg.state(leg.t1)
        residual = max(
            abs(new_state.i - state.i) / (1.0 + abs(new_state.i)),
            abs(new_state.g - state.g) / (1.0 + abs(new_state.g)),
        )
        state = new_state
        if n >= min_periods and residual <= settle_tol:
            steady = integrate(rhs, state, (n * period, (n + 1) * period),
                               run_cfg)
            return steady, SettleReport(n, True, residual)

    report = SettleReport(max_periods, False, residual)
    raise NotConverged(
        f"period map residual {residual:.3e} above {settle_tol:.3e} after "
        f"{max_periods} periods", report)

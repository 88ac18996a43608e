"""Memristive-fingerprint evidence extracted from settled trajectories.

Three behavioral signatures are quantified on one settled drive period:

1. Pinch geometry: both branches of the voltage-current loop pass through
   the origin with the same slope 1/g(t*) but opposite concavity
   (d2u/di2 = -(1/g**2) * (dg/dt)/(di/dt) flips sign between the two
   crossings half a period apart).
2. Crossing coincidence: voltage and current cross zero at the same
   instants because u = i/g with g bounded away from zero.
3. High-frequency collapse: the loop area per half period, computable
   either as the line integral of u di on the dense interpolant or by
   assembling closed-form products of Fourier coefficients, carries a 1/f
   factor in every term and therefore shrinks toward a single-valued
   resistor line as the drive frequency grows.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .errors import ArcmemError, DegenerateRange, NoCrossings
from .integrator import (
    IntegratorConfig,
    SettleReport,
    Trajectory,
    find_zero_crossings,
    settle_to_periodic,
)
from .model import (
    ArcParameters,
    ArcState,
    CircuitParameters,
    hf_limit_conductance,
)

__all__ = [
    "PinchPoint",
    "FourierSpectrum",
    "LoopMetrics",
    "FingerprintTolerances",
    "FrequencyEvidence",
    "FingerprintReport",
    "SweepPoint",
    "Table1Row",
    "pinch_points",
    "lobe_area",
    "fourier_coefficients",
    "half_period_product_integral",
    "area_from_fourier",
    "single_valuedness_metric",
    "fingerprint_report",
    "table1_reproduction",
    "parameter_sweep",
]

# Sampling depth for cycle statistics, Fourier projection and binned
# single-valuedness; one fixed grid keeps every run deterministic.
_N_SAMPLES = 8192
_N_BINS = 128
# Conductance change per period (relative) below which a crossing counts as
# memoryless rather than carrying a concavity sign.
_DEGENERATE_CONCAVITY = 1e-9

# 8-point Gauss-Legendre rule applied piecewise between trajectory nodes.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PinchPoint:
    """Loop geometry at one sign-changing current zero.

    slope is du/di = 1/g(t*) by construction; concavity_sign is the sign
    of d2u/di2 = -(1/g**2)(dg/dt)/(di/dt) at the crossing, or 0 when the
    conductance is static enough to count as memoryless.
    """

    t_star: float
    g_at: float
    slope: float
    concavity_sign: int
    di_dt_at: float
    dg_dt_at: float


@dataclass(frozen=True)
class FourierSpectrum:
    """Harmonic content of one settled period.

    a/b are the voltage cosine/sine coefficients and c/d the current ones,
    index 0 holding harmonic k=1.  The phase reference is the start of the
    period, where the drive source crosses zero upward.  dc_* report the
    (near zero) constant projections and recon_rms_* the relative RMS
    residual of resynthesizing the waveform from k_max harmonics.
    """

    f: float
    k_max: int
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    dc_u: float
    dc_i: float
    recon_rms_u: float
    recon_rms_i: float


@dataclass(frozen=True)
class LoopMetrics:
    """Scalar summary of one settled voltage-current loop."""

    lobe_area: float            # |integral of u di| over one half period
    loop_width_metric: float    # 0 for a single-valued graph
    i_peak: float
    g_mean: float
    g_min_observed: float
    g_max_observed: float


@dataclass(frozen=True)
class FingerprintTolerances:
    """Thresholds the verdict flags are computed against."""

    slope_match_rtol: float = 0.01
    crossing_voltage_ratio: float = 1e-3
    degenerate_concavity: float = _DEGENERATE_CONCAVITY


@dataclass(frozen=True)
class FrequencyEvidence:
    """One frequency of the collapse sweep: loop size versus f."""

    f: float
    lobe_area: Optional[float]
    loop_width_metric: Optional[float]
    converged: bool
    error: Optional[str] = None


@dataclass(frozen=True)
class FingerprintReport:
    """Verdicts and metrics for all three fingerprints at one operating
    point, with the frequency sweep backing the collapse verdict.

    All flags are recomputable from the stored evidence and tolerances.
    """

    pinch_points: tuple[PinchPoint, ...]
    fp1_pass: bool
    fp2_pass: bool
    fp2_max_voltage_ratio: float
    fp2_min_g: float
    fp3_evidence: tuple[FrequencyEvidence, ...]
    fp3_pass: bool
    tolerances: FingerprintTolerances


@dataclass(frozen=True)
class SweepPoint:
    """Outcome of the settle-and-measure pipeline at one parameter value."""

    axis: str
    value: float
    metrics: Optional[LoopMetrics]
    settle: Optional[SettleReport]
    trajectory: Optional[Trajectory]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class Table1Row:
    """Measured cycle quantities against the high-frequency estimate."""

    f: float
    i_m: float
    g_mean: float
    hf_estimate: float
    rel_error: float


# ---------------------------------------------------------------------------
# Pinch geometry
# ---------------------------------------------------------------------------

def pinch_points(traj: Trajectory, arc: ArcParameters,
                 circuit: CircuitParameters) -> list[PinchPoint]:
    """Pinch points of a settled full period.

    One per sign-changing current zero; on a settled period they come in
    half-period pairs, so the list has even length.  Raises
    :class:`NoCrossings` when the current never crosses zero.
    """
    crossings = find_zero_crossings(traj, "current")
    if not crossings:
        raise NoCrossings("current has no sign-changing zeros on the period")
    period = traj.t1 - traj.t0
    points = []
    for t_star in crossings:
        g_at = float(traj.conductance(t_star))
        di_dt, dg_dt = (float(v) for v in traj.derivative(t_star))
        # Memoryless when g barely moves over a period relative to itself.
        if abs(dg_dt) * period <= _DEGENERATE_CONCAVITY * g_at or di_dt == 0.0:
            sign = 0
        else:
            sign = 1 if -dg_dt / di_dt > 0 else -1
        points.append(PinchPoint(
            t_star=t_star,
            g_at=g_at,
            slope=1.0 / g_at,
            concavity_sign=sign,
            di_dt_at=di_dt,
            dg_dt_at=dg_dt,
        ))
    return points


# ---------------------------------------------------------------------------
# Loop area, time domain
# ---------------------------------------------------------------------------

def _wrap_times(ts: np.ndarray, t0: float, t1: float) -> np.ndarray:
    """Map times beyond the period end back into [t0, t1]."""
    period = t1 - t0
    out = ts.copy()
    over = out > t1
    out[over] -= period
    return out


def lobe_area(traj: Trajectory, t_star: float) -> float:
    """Signed loop area integral of u di over [t_star, t_star + T/2].

    T is the trajectory span (one settled period); the window may wrap
    around the period end, in which case the orbit is treated as periodic.
    Piecewise Gauss-Legendre quadrature of u * di/dt on the dense
    interpolant between trajectory nodes.
    """
    t0, t1 = traj.t0, traj.t1
    period = t1 - t0
    slack = 1e-9 * period
    if not (t0 - slack <= t_star <= t1 + slack):
        raise ValueError(f"t_star {t_star} outside the settled period "
                         f"[{t0}, {t1}]")
    end = t_star + 0.5 * period

    # Breakpoints in virtual (unwrapped) time.
    if end <= t1:
        bps = traj.breakpoints((t_star, end))
    else:
        left = traj.breakpoints((t_star, t1))
        right = traj.breakpoints((t0, end - period)) + period
        bps = np.concatenate([left, right[1:]])

    mids = 0.5 * (bps[1:] + bps[:-1])
    half = 0.5 * np.diff(bps)
    nodes = (mids[:, None] + half[:, None] * _GL_NODES).ravel()
    weights = (half[:, None] * _GL_WEIGHTS).ravel()

    eval_ts = _wrap_times(nodes, t0, t1)
    u = traj.voltage(eval_ts)
    di_dt = traj.current_derivative(eval_ts)
    return float(np.dot(weights, u * di_dt))


# ---------------------------------------------------------------------------
# Fourier route
# ---------------------------------------------------------------------------

def fourier_coefficients(traj: Trajectory, k_max: int = 25) -> FourierSpectrum:
    """Project one settled period onto cos/sin harmonics of 1/T.

    Uniform sampling plus an FFT implements the trapezoidal projection
    integrals, which converge spectrally for the smooth periodic
    interpolant.  The constant (DC) projections are reported rather than
    dropped so the caller can confirm they sit at the settle-residual
    level.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    t0, t1 = traj.t0, traj.t1
    period = t1 - t0
    ts = t0 + np.arange(_N_SAMPLES) * (period / _N_SAMPLES)
    vals = traj.sample(ts)
    i_s = vals[:, 0]
    u_s = vals[:, 0] / vals[:, 1]

    spec_u = np.fft.rfft(u_s)
    spec_i = np.fft.rfft(i_s)
    a = 2.0 * spec_u.real[1:k_max + 1] / _N_SAMPLES
    b = -2.0 * spec_u.imag[1:k_max + 1] / _N_SAMPLES
    c = 2.0 * spec_i.real[1:k_max + 1] / _N_SAMPLES
    d = -2.0 * spec_i.imag[1:k_max + 1] / _N_SAMPLES

    k = np.arange(1, k_max + 1)
    phases = 2.0 * np.pi * k[:, None] * (ts[None, :] - t0) / period
    cos_kt, sin_kt = np.cos(phases), np.sin(phases)
    u_rec = a @ cos_kt + b @ sin_kt
    i_rec = c @ cos_kt + d @ sin_kt

    def rel_rms(err, ref):
        return float(np.sqrt(np.mean(err**2)) / np.sqrt(np.mean(ref**2)))

    return FourierSpectrum(
        f=1.0 / period,
        k_max=k_max,
        a=a, b=b, c=c, d=d,
        dc_u=float(spec_u.real[0] / _N_SAMPLES),
        dc_i=float(spec_i.real[0] / _N_SAMPLES),
        recon_rms_u=rel_rms(u_s - u_rec, u_s),
        recon_rms_i=rel_rms(i_s - i_rec, i_s),
    )


def half_period_product_integral(p: float, k: int, q: float, l: int,
                                 f: float, kind: str) -> float:
    """Closed-form integral of a harmonic product over half a period.

    With the integration window phase-aligned to the source period::

        int p*sin(2 pi f k t) * q*sin(2 pi f l t) dt = p*q/(4f)   if k == l
                                                     = 0          if k != l
        (identical right-hand side for cos x cos)

        int p*cos(2 pi f k t) * q*sin(2 pi f l t) dt
            = 0                                          if k == l
            = p*q*l*(1 - cos(pi k) cos(pi l)) / (2 pi f (l**2 - k**2))
                                                         otherwise

    kind is one of "sin_sin", "cos_cos", "cos_sin" (cosine carries (p, k),
    sine carries (q, l)).
    """
    if k < 1 or l < 1:
        raise ValueError(f"harmonic indices must be >= 1, got k={k}, l={l}")
    if f <= 0:
        raise ValueError(f"f must be > 0, got {f}")
    if kind in ("sin_sin", "cos_cos"):
        return p * q / (4.0 * f) if k == l else 0.0
    if kind == "cos_sin":
        if k == l:
            return 0.0
        cos_pi_k = -1.0 if k % 2 else 1.0     # cos(pi k) for integer k
        cos_pi_l = -1.0 if l % 2 else 1.0
        return (p * q * l * (1.0 - cos_pi_k * cos_pi_l)
                / (2.0 * math.pi * f * (l * l - k * k)))
    raise ValueError(f"kind must be sin_sin, cos_cos or cos_sin, got {kind!r}")


def area_from_fourier(spec: FourierSpectrum,
                      circuit: CircuitParameters) -> float:
    """Half-period loop area assembled from harmonic products.

    Expands integral of u * (E - u - R i)/L over the phase-aligned half
    period into pairwise harmonic products and sums their closed forms.
    Every nonzero product carries a 1/f factor, which is why the loop
    collapses at high frequency.  Independent of the time-domain
    quadrature in :func:`lobe_area` apart from the shared trajectory.
    """
    k_max = spec.k_max
    f = spec.f
    cc = np.zeros((k_max, k_max))
    ss = np.zeros((k_max, k_max))
    cs = np.zeros((k_max, k_max))
    for k in range(1, k_max + 1):
        for l in range(1, k_max + 1):
            cc[k - 1, l - 1] = half_period_product_integral(
                1.0, k, 1.0, l, f, "cos_cos")
            ss[k - 1, l - 1] = half_period_product_integral(
                1.0, k, 1.0, l, f, "sin_sin")
            cs[k - 1, l - 1] = half_period_product_integral(
                1.0, k, 1.0, l, f, "cos_sin")

    a, b, c, d = spec.a, spec.b, spec.c, spec.d
    # u x E: source is a pure fundamental sine.
    t_source = circuit.e_m * (a @ cs[:, 0] + b @ ss[:, 0])
    # u x u and u x R i: diagonal same-kind products plus cos x sin cross
    # terms (both orderings of u x u collapse onto the same matrix).
    t_self = a @ cc @ a + b @ ss @ b + 2.0 * (a @ cs @ b)
    t_resistive = circuit.r * (a @ cc @ c + b @ ss @ d
                               + a @ cs @ d + c @ cs @ b)
    return float((t_source - t_self - t_resistive) / circuit.l)


# ---------------------------------------------------------------------------
# Loop width
# ---------------------------------------------------------------------------

def single_valuedness_metric(traj: Trajectory) -> float:
    """How far the voltage-current graph is from a function of current.

    The period is sampled uniformly, samples are binned by current, and
    each bin's voltage spread is measured about its least-squares secant
    (so any single-valued graph scores 0 up to curvature); the metric is
    the largest spread over the global voltage range.  Raises
    :class:`DegenerateRange` when the current range is numerically nil.
    """
    t0, t1 = traj.t0, traj.t1
    ts = t0 + np.arange(_N_SAMPLES) * ((t1 - t0) / _N_SAMPLES)
    vals = traj.sample(ts)
    i_s = vals[:, 0]
    u_s = vals[:, 0] / vals[:, 1]

    i_lo, i_hi = float(i_s.min()), float(i_s.max())
    i_span = i_hi - i_lo
    if i_span <= 1e-12 * max(1.0, abs(i_hi), abs(i_lo)):
        raise DegenerateRange(f"current range {i_span} is below the "
                              "numeric floor")
    u_span = float(u_s.max() - u_s.min())
    if u_span == 0.0:
        return 0.0

    bins = np.clip(((i_s - i_lo) / i_span * _N_BINS).astype(int),
                   0, _N_BINS - 1)
    worst = 0.0
    for bin_id in range(_N_BINS):
        mask = bins == bin_id
        if np.count_nonzero(mask) < 2:
            continue
        x = i_s[mask]
        y = u_s[mask]
        x0 = x - x.mean()
        denom = float(np.dot(x0, x0))
        slope = float(np.dot(x0, y - y.mean()) / denom) if denom > 0 else 0.0
        resid = y - (y.mean() + slope * x0)
        worst = max(worst, float(resid.max() - resid.min()))
    return worst / u_span


# ---------------------------------------------------------------------------
# Cycle statistics and pipelines
# ---------------------------------------------------------------------------

def _cycle_samples(traj: Trajectory) -> tuple[np.ndarray, np.ndarray]:
    ts = traj.t0 + np.arange(_N_SAMPLES) * ((traj.t1 - traj.t0) / _N_SAMPLES)
    vals = traj.sample(ts)
    return vals[:, 0], vals[:, 1]


def _loop_metrics(traj: Trajectory) -> LoopMetrics:
    i_s, g_s = _cycle_samples(traj)
    crossings = find_zero_crossings(traj, "current")
    if not crossings:
        raise NoCrossings("current has no sign-changing zeros on the period")
    area = abs(lobe_area(traj, crossings[0]))
    return LoopMetrics(
        lobe_area=area,
        loop_width_metric=single_valuedness_metric(traj),
        i_peak=float(np.max(np.abs(i_s))),
        g_mean=float(np.mean(g_s)),
        g_min_observed=float(g_s.min()),
        g_max_observed=float(g_s.max()),
    )


def _settle(arc: ArcParameters, circuit: CircuitParameters,
            cfg: IntegratorConfig, settle_tol: float, min_periods: int,
            max_periods: int, s0: ArcState
            ) -> tuple[Trajectory, SettleReport]:
    return settle_to_periodic(arc, circuit, s0, cfg, settle_tol=settle_tol,
                              min_periods=min_periods,
                              max_periods=max_periods)


_DEFAULT_S0 = ArcState(0.0, 1.0)


def fingerprint_report(arc: ArcParameters, circuit: CircuitParameters,
                       sweep_freqs: Sequence[float],
                       tolerances: Optional[FingerprintTolerances] = None,
                       cfg: Optional[IntegratorConfig] = None,
                       settle_tol: float = 1e-8, min_periods: int = 2,
                       max_periods: int = 1000,
                       s0: ArcState = _DEFAULT_S0) -> FingerprintReport:
    """Run the full settle/measure pipeline and grade all three
    fingerprints.

    sweep_freqs must contain the operating frequency circuit.f, which is
    where the pinch geometry (fingerprint 1) is graded; crossing
    coincidence (fingerprint 2) is graded at every sweep frequency and the
    loop-collapse trend (fingerprint 3) over the whole ascending sweep.
    A failing sweep point is recorded and excluded without aborting the
    others, but any failure vetoes the collapse verdict.
    """
    freqs = [float(f) for f in sweep_freqs]
    if not freqs:
        raise ValueError("sweep_freqs must be nonempty")
    if not any(math.isclose(f, circuit.f, rel_tol=1e-12) for f in freqs):
        raise ValueError(f"sweep_freqs must include the operating "
                         f"frequency {circuit.f}")
    tol = tolerances if tolerances is not None else FingerprintTolerances()
    cfg = cfg if cfg is not None else IntegratorConfig()

    evidence: list[FrequencyEvidence] = []
    operating_points: list[PinchPoint] = []
    max_u_ratio = 0.0
    min_g = math.inf
    fp2_ok = True
    any_failed = False

    for f in sorted(freqs):
        circ_f = replace(circuit, f=f)
        try:
            steady, report = _settle(arc, circ_f, cfg, settle_tol,
                                     min_periods, max_periods, s0)
            points = pinch_points(steady, arc, circ_f)
            metrics = _loop_metrics(steady)
        except ArcmemError as exc:
            any_failed = True
            evidence.append(FrequencyEvidence(
                f=f, lobe_area=None, loop_width_metric=None,
                converged=False, error=str(exc)))
            continue

        ts_dense = steady.t0 + np.arange(_N_SAMPLES) * (
            (steady.t1 - steady.t0) / _N_SAMPLES)
        u_scale = float(np.max(np.abs(steady.voltage(ts_dense))))
        for p in points:
            u_at = abs(float(steady.voltage(p.t_star)))
            ratio = u_at / u_scale if u_scale > 0 else 0.0
            max_u_ratio = max(max_u_ratio, ratio)
            min_g = min(min_g, p.g_at)
            if ratio > tol.crossing_voltage_ratio or p.g_at < arc.g_min:
                fp2_ok = False
        if math.isclose(f, circuit.f, rel_tol=1e-12):
            operating_points = points
        evidence.append(FrequencyEvidence(
            f=f, lobe_area=metrics.lobe_area,
            loop_width_metric=metrics.loop_width_metric,
            converged=report.converged, error=None))

    fp1_ok = _grade_pinch(operating_points, tol)
    fp3_ok = (not any_failed) and _strictly_decreasing(
        [e.lobe_area for e in evidence]) and _strictly_decreasing(
        [e.loop_width_metric for e in evidence])

    return FingerprintReport(
        pinch_points=tuple(operating_points),
        fp1_pass=fp1_ok,
        fp2_pass=fp2_ok and not any_failed,
        fp2_max_voltage_ratio=max_u_ratio,
        fp2_min_g=min_g if min_g < math.inf else math.nan,
        fp3_evidence=tuple(evidence),
        fp3_pass=fp3_ok,
        tolerances=tol,
    )


def _grade_pinch(points: Sequence[PinchPoint],
                 tol: FingerprintTolerances) -> bool:
    """Equal slopes, alternating (nonzero) concavity signs."""
    if len(points) < 2 or len(points) % 2 != 0:
        return False
    slopes = [p.slope for p in points]
    ref = slopes[0]
    if any(abs(s - ref) > tol.slope_match_rtol * ref for s in slopes[1:]):
        return False
    signs = [p.concavity_sign for p in points]
    if any(s == 0 for s in signs):
        return False
    return all(signs[j] == -signs[j - 1] for j in range(1, len(signs)))


def _strictly_decreasing(values: Sequence[Optional[float]]) -> bool:
    if any(v is None for v in values):
        return False
    return all(b < a for a, b in zip(values, values[1:]))


def table1_reproduction(arc: ArcParameters, circuit_base: CircuitParameters,
                        freqs: Sequence[float] = (3e3, 5e3, 7e3, 9e3, 11e3),
                        cfg: Optional[IntegratorConfig] = None,
                        settle_tol: float = 1e-8, min_periods: int = 2,
                        max_periods: int = 1000,
                        s0: ArcState = _DEFAULT_S0) -> list[Table1Row]:
    """Measure cycle peak current and mean conductance over a frequency
    sweep and compare the mean against the high-frequency estimate
    g_min + I_m**2 / (2 p_m) built from the measured peak."""
    cfg = cfg if cfg is not None else IntegratorConfig()
    rows = []
    for f in freqs:
        circ = replace(circuit_base, f=float(f))
        steady, _ = _settle(arc, circ, cfg, settle_tol, min_periods,
                            max_periods, s0)
        i_s, g_s = _cycle_samples(steady)
        i_m = float(np.max(np.abs(i_s)))
        g_mean = float(np.mean(g_s))
        hf = hf_limit_conductance(arc, i_m)
        rows.append(Table1Row(
            f=float(f), i_m=i_m, g_mean=g_mean, hf_estimate=hf,
            rel_error=abs(g_mean - hf) / hf,
        ))
    return rows


# -- parameter sweeps -------------------------------------------------------

_AXIS_TARGETS = {
    "K": ("arc", "k"),
    "L": ("circuit", "l"),
    "U_C": ("arc", "u_c"),
    "I0": ("arc", "i0"),
    "f": ("circuit", "f"),
}


def _apply_axis(arc: ArcParameters, circuit: CircuitParameters, axis: str,
                value: float) -> tuple[ArcParameters, CircuitParameters]:
    if axis not in _AXIS_TARGETS:
        raise ValueError(f"axis must be one of {sorted(_AXIS_TARGETS)}, "
                         f"got {axis!r}")
    target, field_name = _AXIS_TARGETS[axis]
    if target == "arc":
        return replace(arc, **{field_name: value}), circuit
    return arc, replace(circuit, **{field_name: value})


def _sweep_one(args) -> SweepPoint:
    (arc, circuit, axis, value, cfg, settle_tol, min_periods,
     max_periods, s0) = args
    try:
        arc_v, circ_v = _apply_axis(arc, circuit, axis, value)
        steady, report = _settle(arc_v, circ_v, cfg, settle_tol,
                                 min_periods, max_periods, s0)
        metrics = _loop_metrics(steady)
    except (ArcmemError, ValueError) as exc:
        return SweepPoint(axis=axis, value=value, metrics=None,
                          settle=None, trajectory=None, error=str(exc))
    return SweepPoint(axis=axis, value=value, metrics=metrics,
                      settle=report, trajectory=steady, error=None)


def parameter_sweep(arc_base: ArcParameters, circuit_base: CircuitParameters,
                    axis: str, values: Sequence[float],
                    cfg: Optional[IntegratorConfig] = None,
                    settle_tol: float = 1e-8, min_periods: int = 2,
                    max_periods: int = 1000, s0: ArcState = _DEFAULT_S0,
                    jobs: int = 1) -> list[SweepPoint]:
    """Settle and measure the loop at each value along one parameter axis.

    axis is one of K, L, U_C, I0 or f.  A failing point is isolated in its
    :class:`SweepPoint` instead of aborting the sweep.  With jobs > 1 the
    points run in a process pool; results keep the input order and are
    identical to a serial run.
    """
    if not values:
        raise ValueError("values must be nonempty")
    cfg = cfg if cfg is not None else IntegratorConfig()
    work = [(arc_base, circuit_base, axis, float(v), cfg, settle_tol,
             min_periods, max_periods, s0) for v in values]
    if jobs <= 1 or len(work) == 1:
        return [_sweep_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=min(jobs, len(work))) as pool:
        return list(pool.map(_sweep_one, work))

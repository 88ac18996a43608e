"""Hybrid Cassie-Mayr arc model and its drive circuit.

The arc is represented by a single dynamic conductance ``g(t)`` relaxing
toward a current- and voltage-dependent target::

    theta(i) * dg/dt = g_target(i, u) - g
    g_target(i, u)   = g_min + (1 - sigma(i)) * (u*i - k*i**2) / u_c**2
                             + sigma(i) * i**2 / p_m

The weight ``sigma(i)`` is 1 near zero current (low-current power-balance
branch, target ``i**2 / p_m``) and falls toward 0 for ``|i| >> i0``
(high-current branch, target ``(u*i - k*i**2) / u_c**2`` with radiation
loss ``k*i**2``).  The arc voltage is always derived as ``u = i / g``.

The arc loads a series RL loop driven by a sinusoidal source::

    l * di/dt + r*i + u = e_m * sin(2*pi*f*t)

All quantities are SI (A, V, S, s, Hz, Ohm, H, W).

Everything in this module is a pure function of value-type inputs; there is
no integration logic here (see :mod:`arcmem.integrator`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from .errors import NonPositiveConductance, UnsupportedThetaLaw

__all__ = [
    "ConstantTheta",
    "CurrentDependentTheta",
    "ThetaLaw",
    "GaussianSigma",
    "PowerExpSigma",
    "ShieldedExpSigma",
    "LogisticSigma",
    "SigmaLaw",
    "ArcParameters",
    "CircuitParameters",
    "ArcState",
    "sigma",
    "theta",
    "source_voltage",
    "target_conductance",
    "arc_rhs",
    "mayr_rhs",
    "cassie_rhs",
    "mayr_sinusoidal_g",
    "hf_limit_conductance",
]


# ---------------------------------------------------------------------------
# Parameter types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantTheta:
    """Fixed arc time constant (s)."""

    theta: float

    def __post_init__(self):
        if not self.theta > 0:
            raise ValueError(f"theta must be > 0, got {self.theta}")


@dataclass(frozen=True)
class CurrentDependentTheta:
    """Time constant theta0 + theta1 * exp(-alpha*|i|).

    Large at small current (theta0 + theta1) and relaxing to theta0 at
    large current; requires theta0 < theta1 so the two regimes are distinct.
    """

    theta0: float
    theta1: float
    alpha: float

    def __post_init__(self):
        if not self.theta0 > 0:
            raise ValueError(f"theta0 must be > 0, got {self.theta0}")
        if not self.theta1 > 0:
            raise ValueError(f"theta1 must be > 0, got {self.theta1}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not self.theta0 < self.theta1:
            raise ValueError(
                f"theta0 must be < theta1, got {self.theta0} >= {self.theta1}"
            )


ThetaLaw = Union[ConstantTheta, CurrentDependentTheta]


@dataclass(frozen=True)
class GaussianSigma:
    """sigma = exp(-i**2 / i0**2)."""


@dataclass(frozen=True)
class PowerExpSigma:
    """sigma = exp(-(|i|/i0)**a)."""

    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"a must be > 0, got {self.a}")


@dataclass(frozen=True)
class ShieldedExpSigma:
    """sigma = exp(-(|i|/i0)**(a / (delta + |i|))).

    Monotone on the working current range only while the shielding scale
    ``delta`` dominates |i|; for small delta the exponent itself decays and
    sigma turns back up beyond a few i0.
    """

    a: float
    delta: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"a must be > 0, got {self.a}")
        if not self.delta > 0:
            raise ValueError(f"delta must be > 0, got {self.delta}")


@dataclass(frozen=True)
class LogisticSigma:
    """sigma = 1 / (1 + exp(beta * (|i| - i0)))."""

    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")


SigmaLaw = Union[GaussianSigma, PowerExpSigma, ShieldedExpSigma, LogisticSigma]


@dataclass(frozen=True)
class ArcParameters:
    """Arc-model constants.

    g_min : residual inter-electrode conductance with no arc (S), > 0
    i0    : transition current between the two branches (A), > 0
    k     : radiation-loss coefficient (Ohm), >= 0
    u_c   : high-current branch voltage constant (V), > 0
    p_m   : low-current branch power constant (W), > 0
    """

    g_min: float
    i0: float
    k: float
    u_c: float
    p_m: float
    theta_law: ThetaLaw
    sigma_law: SigmaLaw = field(default_factory=GaussianSigma)

    def __post_init__(self):
        if not self.g_min > 0:
            raise ValueError(f"g_min must be > 0, got {self.g_min}")
        if not self.i0 > 0:
            raise ValueError(f"i0 must be > 0, got {self.i0}")
        if not self.k >= 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if not self.u_c > 0:
            raise ValueError(f"u_c must be > 0, got {self.u_c}")
        if not self.p_m > 0:
            raise ValueError(f"p_m must be > 0, got {self.p_m}")


@dataclass(frozen=True)
class CircuitParameters:
    """Series RL drive loop with sinusoidal source e_m * sin(2*pi*f*t)."""

    r: float
    l: float
    e_m: float
    f: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"r must be > 0, got {self.r}")
        if not self.l > 0:
            raise ValueError(f"l must be > 0, got {self.l}")
        if not self.e_m > 0:
            raise ValueError(f"e_m must be > 0, got {self.e_m}")
        if not self.f > 0:
            raise ValueError(f"f must be > 0, got {self.f}")

    @property
    def period(self) -> float:
        return 1.0 / self.f


class ArcState(NamedTuple):
    """Instantaneous circuit state: current i (A) and arc conductance g (S).

    g must stay positive; the arc voltage is always derived as u = i/g and
    never stored.
    """

    i: float
    g: float

    @property
    def u(self) -> float:
        return self.i / self.g


# ---------------------------------------------------------------------------
# Pointwise evaluations
# ---------------------------------------------------------------------------

def sigma(law: SigmaLaw, i0: float, i: float) -> float:
    """Blend weight in (0, 1]: 1 selects the low-current branch.

    Even in i and non-increasing in |i| on the working range (see
    :class:`ShieldedExpSigma` for the caveat at large |i|).
    """
    x = abs(i)
    if isinstance(law, GaussianSigma):
        return math.exp(-(i * i) / (i0 * i0))
    if isinstance(law, PowerExpSigma):
        return math.exp(-((x / i0) ** law.a))
    if isinstance(law, ShieldedExpSigma):
        return math.exp(-((x / i0) ** (law.a / (law.delta + x))))
    if isinstance(law, LogisticSigma):
        return 1.0 / (1.0 + math.exp(law.beta * (x - i0)))
    raise TypeError(f"unknown sigma law: {law!r}")


def theta(law: ThetaLaw, i: float) -> float:
    """Arc time constant (s) at current i."""
    if isinstance(law, ConstantTheta):
        return law.theta
    if isinstance(law, CurrentDependentTheta):
        return law.theta0 + law.theta1 * math.exp(-law.alpha * abs(i))
    raise TypeError(f"unknown theta law: {law!r}")


def source_voltage(circuit: CircuitParameters, t):
    """Drive voltage e_m * sin(2*pi*f*t); accepts scalar or ndarray t."""
    if isinstance(t, np.ndarray):
        return circuit.e_m * np.sin(2.0 * np.pi * circuit.f * t)
    return circuit.e_m * math.sin(2.0 * math.pi * circuit.f * t)


def target_conductance(arc: ArcParameters, i: float, u: float) -> float:
    """Equilibrium conductance the arc relaxes toward at fixed (i, u).

    g_min + (1-sigma)*(u*i - k*i**2)/u_c**2 + sigma*i**2/p_m; returns
    exactly g_min at i = 0.
    """
    if i == 0.0:
        return arc.g_min
    s = sigma(arc.sigma_law, arc.i0, i)
    cassie = (u * i - arc.k * i * i) / (arc.u_c * arc.u_c)
    mayr = i * i / arc.p_m
    return arc.g_min + (1.0 - s) * cassie + s * mayr


def arc_rhs(arc: ArcParameters, circuit: CircuitParameters,
            t: float, s: ArcState) -> tuple[float, float]:
    """Coupled derivatives (di/dt, dg/dt) of the driven arc.

    di/dt = (e_m*sin(2*pi*f*t) - r*i - i/g) / l
    dg/dt = (g_target(i, i/g) - g) / theta(i)

    Pure and deterministic.  Raises :class:`NonPositiveConductance` for
    g <= 0, which callers must treat as a fatal state.
    """
    i, g = s
    if g <= 0.0:
        raise NonPositiveConductance(f"g = {g} at t = {t}")
    u = i / g
    e = circuit.e_m * math.sin(2.0 * math.pi * circuit.f * t)
    di_dt = (e - circuit.r * i - u) / circuit.l
    dg_dt = (target_conductance(arc, i, u) - g) / theta(arc.theta_law, i)
    return di_dt, dg_dt


def mayr_rhs(arc: ArcParameters, i: float, g: float) -> float:
    """dg/dt of the pure low-current (power-balance) arc branch.

    (g_min + i**2/p_m - g) / theta(i); with i held at zero the solution
    decays as g_min + C*exp(-t/theta).
    """
    return (arc.g_min + i * i / arc.p_m - g) / theta(arc.theta_law, i)


def cassie_rhs(arc: ArcParameters, i: float, u: float, g: float) -> float:
    """dg/dt of the pure high-current (constant-voltage) arc branch.

    (g_min + (u*i - k*i**2)/u_c**2 - g) / theta(i).
    """
    tgt = arc.g_min + (u * i - arc.k * i * i) / (arc.u_c * arc.u_c)
    return (tgt - g) / theta(arc.theta_law, i)


def mayr_sinusoidal_g(arc: ArcParameters, i_m: float, f: float, t):
    """Periodic steady state of the low-current branch under a sinusoidal
    current drive i(t) = i_m * sin(2*pi*f*t).

    Closed form for constant theta::

        g(t) = g_min + i_m**2/(2*p_m) * (1 - cos(4*pi*f*t - phi) / sqrt(1 + (4*pi*f*theta)**2))
        phi  = atan(4*pi*f*theta)

    The mean over one period is g_min + i_m**2/(2*p_m) and the oscillation
    amplitude shrinks as 1/f, so the conductance flattens to the mean at
    high frequency.  The minus sign in front of the cosine places the
    conductance maxima just after the current maxima, which is what direct
    integration of :func:`mayr_rhs` under the sine drive produces.

    Accepts scalar or ndarray t.  Raises :class:`UnsupportedThetaLaw`
    unless the theta law is :class:`ConstantTheta`.
    """
    if not isinstance(arc.theta_law, ConstantTheta):
        raise UnsupportedThetaLaw(
            "closed form requires a constant theta law, got "
            f"{type(arc.theta_law).__name__}"
        )
    th = arc.theta_law.theta
    w2 = 4.0 * np.pi * f          # double frequency: i**2 oscillates at 2f
    phi = np.arctan(w2 * th)
    envelope = 1.0 / np.sqrt(1.0 + (w2 * th) ** 2)
    swing = i_m * i_m / (2.0 * arc.p_m)
    return arc.g_min + swing * (1.0 - envelope * np.cos(w2 * t - phi))


def hf_limit_conductance(arc: ArcParameters, i_m: float) -> float:
    """High-frequency limit g_min + i_m**2 / (2*p_m) of the cycle-averaged
    conductance under sinusoidal current of amplitude i_m >= 0."""
    if i_m < 0:
        raise ValueError(f"i_m must be >= 0, got {i_m}")
    return arc.g_min + i_m * i_m / (2.0 * arc.p_m)

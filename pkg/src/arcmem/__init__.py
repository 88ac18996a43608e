"""arcmem: hybrid Cassie-Mayr electric-arc simulation and memristive-
fingerprint analysis.

The package splits into four layers:

- :mod:`arcmem.model` -- arc/circuit parameter types and pure right-hand
  side / closed-form evaluations,
- :mod:`arcmem.integrator` -- adaptive embedded Runge-Kutta integration
  with dense output, zero-crossing location and periodic settling,
- :mod:`arcmem.analysis` -- pinch geometry, loop areas (time-domain and
  Fourier-domain), high-frequency limits, fingerprint verdicts and sweeps,
- :mod:`arcmem.scenario` / :mod:`arcmem.cli` -- scenario files, bundled
  presets and the ``arcmem`` command-line front end.
"""

from .errors import (
    ArcmemError,
    DegenerateRange,
    MaxStepsExceeded,
    NoCrossings,
    NonPositiveConductance,
    NotConverged,
    ParseError,
    StepUnderflow,
    UnsupportedThetaLaw,
    ValidationError,
)
from .model import (
    ArcParameters,
    ArcState,
    CircuitParameters,
    ConstantTheta,
    CurrentDependentTheta,
    GaussianSigma,
    LogisticSigma,
    PowerExpSigma,
    ShieldedExpSigma,
    arc_rhs,
    cassie_rhs,
    hf_limit_conductance,
    mayr_rhs,
    mayr_sinusoidal_g,
    sigma,
    source_voltage,
    target_conductance,
    theta,
)
from .integrator import (
    IntegratorConfig,
    SettleReport,
    Trajectory,
    find_zero_crossings,
    integrate,
    settle_to_periodic,
)
from .analysis import (
    FingerprintReport,
    FingerprintTolerances,
    FourierSpectrum,
    LoopMetrics,
    PinchPoint,
    SweepPoint,
    area_from_fourier,
    fingerprint_report,
    fourier_coefficients,
    half_period_product_integral,
    lobe_area,
    parameter_sweep,
    pinch_points,
    single_valuedness_metric,
    table1_reproduction,
)
from .scenario import Scenario, load_scenario, preset, preset_names

__version__ = "1.0.0"

__all__ = [
    "ArcmemError",
    "DegenerateRange",
    "MaxStepsExceeded",
    "NoCrossings",
    "NonPositiveConductance",
    "NotConverged",
    "ParseError",
    "StepUnderflow",
    "UnsupportedThetaLaw",
    "ValidationError",
    "ArcParameters",
    "ArcState",
    "CircuitParameters",
    "ConstantTheta",
    "CurrentDependentTheta",
    "GaussianSigma",
    "LogisticSigma",
    "PowerExpSigma",
    "ShieldedExpSigma",
    "arc_rhs",
    "cassie_rhs",
    "hf_limit_conductance",
    "mayr_rhs",
    "mayr_sinusoidal_g",
    "sigma",
    "source_voltage",
    "target_conductance",
    "theta",
    "IntegratorConfig",
    "SettleReport",
    "Trajectory",
    "find_zero_crossings",
    "integrate",
    "settle_to_periodic",
    "FingerprintReport",
    "FingerprintTolerances",
    "FourierSpectrum",
    "LoopMetrics",
    "PinchPoint",
    "SweepPoint",
    "area_from_fourier",
    "fingerprint_report",
    "fourier_coefficients",
    "half_period_product_integral",
    "lobe_area",
    "parameter_sweep",
    "pinch_points",
    "single_valuedness_metric",
    "table1_reproduction",
    "Scenario",
    "load_scenario",
    "preset",
    "preset_names",
]

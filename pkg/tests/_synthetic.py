"""Hand-built trajectory stand-ins for oracle tests.

The analysis functions only consume the sampling protocol (t0/t1,
breakpoints, current/voltage/conductance and their derivatives), so
closed-form curves can be injected without running the integrator.
"""

from __future__ import annotations

import numpy as np


class SyntheticTrajectory:
    """Trajectory-shaped wrapper around analytic callables of time."""

    def __init__(self, t0, t1, i_fn, u_fn=None, g_fn=None, di_fn=None,
                 dg_fn=None, n_breakpoints=64):
        self._t0 = float(t0)
        self._t1 = float(t1)
        self._i = i_fn
        self._u = u_fn
        self._g = g_fn
        self._di = di_fn
        self._dg = dg_fn
        self._n = int(n_breakpoints)

    @property
    def t0(self):
        return self._t0

    @property
    def t1(self):
        return self._t1

    def breakpoints(self, window=None):
        ta, tb = window if window is not None else (self._t0, self._t1)
        full = np.linspace(self._t0, self._t1, self._n + 1)
        inner = full[(full > ta) & (full < tb)]
        return np.concatenate([[ta], inner, [tb]])

    def current(self, ts):
        return self._i(np.asarray(ts, dtype=float))

    def voltage(self, ts):
        if self._u is None:
            ts = np.asarray(ts, dtype=float)
            return self._i(ts) / self._g(ts)
        return self._u(np.asarray(ts, dtype=float))

    def conductance(self, ts):
        ts = np.asarray(ts, dtype=float)
        if self._g is None:
            return self._i(ts) / self._u(ts)
        return self._g(ts)

    def sample(self, ts):
        ts = np.asarray(ts, dtype=float)
        return np.stack([self.current(ts), self.conductance(ts)], axis=-1)

    def _diff(self, fn, ts):
        h = 1e-7 * (self._t1 - self._t0)
        ts = np.asarray(ts, dtype=float)
        return (fn(ts + h) - fn(ts - h)) / (2.0 * h)

    def current_derivative(self, ts):
        if self._di is None:
            return self._diff(self._i, ts)
        return self._di(np.asarray(ts, dtype=float))

    def conductance_derivative(self, ts):
        if self._dg is None:
            return self._diff(self.conductance, ts)
        return self._dg(np.asarray(ts, dtype=float))

    def derivative(self, ts):
        ts = np.asarray(ts, dtype=float)
        return np.stack([self.current_derivative(ts),
                         self.conductance_derivative(ts)], axis=-1)

"""Settle the 50 Hz operating point and draw the pinched hysteresis.

The arc conductance g(t) lags the current, so the voltage u = i/g traces
two different branches for rising and falling current.  Both branches pass
through the origin with the same slope 1/g(t*) but opposite curvature:
the loop is pinched.

Run:  python demos/01_pinched_hysteresis.py
Writes PNG figures next to this script under demos/output/.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from arcmem import ArcState, pinch_points, settle_to_periodic
from arcmem.scenario import preset

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

scenario = preset("fig1")
steady, report = settle_to_periodic(
    scenario.arc, scenario.circuit, ArcState(0.0, 1.0), scenario.integrator)
print(f"settled after {report.periods_integrated} periods "
      f"(residual {report.period_map_residual:.2e})")

ts = np.linspace(steady.t0, steady.t1, 4001)
i = steady.current(ts)
g = steady.conductance(ts)
u = i / g

# The two origin crossings and their local geometry.
for p in pinch_points(steady, scenario.arc, scenario.circuit):
    print(f"pinch at t*={p.t_star:.6f}s: slope du/di = {p.slope:.4f} ohm, "
          f"concavity {'+' if p.concavity_sign > 0 else '-'}")

fig, axes = plt.subplots(1, 3, figsize=(15, 4.2))
axes[0].plot(i, u, lw=0.8)
axes[0].set_xlabel("current i (A)")
axes[0].set_ylabel("arc voltage u (V)")
axes[0].set_title("pinched hysteresis, 50 Hz")

tau = (ts - steady.t0) / (steady.t1 - steady.t0)
axes[1].plot(tau, u / np.max(np.abs(u)), "r", lw=0.9, label="u / max|u|")
axes[1].plot(tau, i / np.max(np.abs(i)), "b", lw=0.9, label="i / max|i|")
axes[1].set_xlabel("fraction of period")
axes[1].set_title("normalized waveforms share zero crossings")
axes[1].legend()

axes[2].plot(u, g, lw=0.8)
axes[2].set_xlabel("arc voltage u (V)")
axes[2].set_ylabel("conductance g (S)")
axes[2].set_title("conductance-voltage orbit")

fig.tight_layout()
fig.savefig(OUT / "pinched_hysteresis.png", dpi=150)
print(f"wrote {OUT / 'pinched_hysteresis.png'}")

"""How the loop shape responds to each arc and circuit constant.

Four one-axis sweeps, each settled to the periodic steady state: the
radiation-loss coefficient K squeezes the loop, the inductance L filters
the current, the branch voltage constant U_C rescales the arc's operating
voltage, and the transition current I0 moves the blend between the
low-current and high-current branches.

Run:  python demos/04_parameter_studies.py [--jobs N]
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from arcmem import parameter_sweep
from arcmem.scenario import preset

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

args = argparse.ArgumentParser()
args.add_argument("--jobs", type=int, default=1)
jobs = args.parse_args().jobs

fig, axes = plt.subplots(2, 2, figsize=(13, 9))
for ax, name in zip(axes.ravel(), ("fig4a", "fig4b", "fig4c", "fig2a")):
    scenario = preset(name)
    axis = scenario.sweep.axis
    points = parameter_sweep(scenario.arc, scenario.circuit, axis,
                             scenario.sweep.values,
                             cfg=scenario.integrator, jobs=jobs)
    print(f"{name}: sweep over {axis}")
    for p in points:
        if not p.ok:
            print(f"  {axis}={p.value:g}: FAILED ({p.error})")
            continue
        m = p.metrics
        print(f"  {axis}={p.value:<8g} lobe_area={m.lobe_area:10.4f} "
              f"width={m.loop_width_metric:.4f} i_peak={m.i_peak:8.3f}")
        ts = np.linspace(p.trajectory.t0, p.trajectory.t1, 3001)
        i = p.trajectory.current(ts)
        u = p.trajectory.voltage(ts)
        # First-quadrant half of the loop; the third quadrant mirrors it.
        keep = i >= 0
        ax.plot(np.where(keep, i, np.nan), np.where(keep, u, np.nan),
                lw=0.8, label=f"{axis}={p.value:g}")
    ax.set_xlabel("current i (A)")
    ax.set_ylabel("arc voltage u (V)")
    ax.set_title(f"loops while {axis} varies")
    ax.legend(fontsize=8)

fig.tight_layout()
fig.savefig(OUT / "parameter_studies.png", dpi=150)
print(f"\nwrote {OUT / 'parameter_studies.png'}")

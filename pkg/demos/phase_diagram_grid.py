# Small census over the (delta_2, omega_2) plane.  Every grid point runs a
# batch of random initial conditions to long times and clusters the
# attractors; regions are labeled by which attractors coexist.  This demo
# uses a coarse 9 x 7 grid and reduced settings so it finishes in a couple
# of minutes on one core -- production runs use ics_per_point=100,
# t_end=200, dt=1e-3 and a worker pool (about half a minute per grid point
# per core).

import time
from collections import Counter

import numpy as np
import matplotlib.pyplot as plt

from trikerr.params import SystemParams
from trikerr.phasediagram import overlay_closed_boundary, sweep

delta2_grid = np.linspace(-5.0, 5.0, 9)
omega2_grid = np.linspace(0.5, 4.5, 7)
template = SystemParams.pumped_ladder(0.0, 0.0)

tic = time.perf_counter()
results = sweep(template, delta2_grid, omega2_grid,
                ics_per_point=10, t_end=50.0, dt=4e-3, seed=0, workers=1)
print(f"{len(results)} grid points in {time.perf_counter() - tic:.1f} s")

tally = Counter(r.region for r in results)
print(f"region tally: {dict(tally)}")

REGION_CODES = {"I": 0, "EP_band": 1, "II": 2, "III": 3, "IV": 4,
                "unresolved": 5}
codes = np.array([REGION_CODES[r.region] for r in results])
codes = codes.reshape(omega2_grid.size, delta2_grid.size)

plt.figure(figsize=(6.4, 4.4))
plt.pcolormesh(delta2_grid, omega2_grid, codes, cmap="viridis",
               vmin=0, vmax=5, shading="nearest")
cbar = plt.colorbar(ticks=range(6))
cbar.ax.set_yticklabels(list(REGION_CODES))
d2_dense = np.linspace(delta2_grid[0], delta2_grid[-1], 200)
plt.plot(d2_dense, overlay_closed_boundary(d2_dense, template.u0),
         c="w", lw=1.2, label="lossless 3->1 boundary")
plt.ylim(omega2_grid[0], omega2_grid[-1])
plt.xlabel("delta_2")
plt.ylabel("omega_2")
plt.title("attractor regions (coarse census)")
plt.legend(loc="upper left", fontsize=8)
plt.tight_layout()
plt.savefig("phase_diagram_coarse.png", dpi=150)
print("wrote phase_diagram_coarse.png")

# points worth a closer look: anything multistable
for r in results:
    kinds = sorted({a.kind for a in r.attractors})
    if len(kinds) > 1:
        print(f"  ({r.delta2:+.1f}, {r.omega2:.1f}): region {r.region}, "
              f"attractors {kinds}, counts {dict(r.counts)}")

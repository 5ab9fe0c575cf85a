# Lossless, undriven-side picture of the cavity: restrict the fields to the
# uniform section (alpha_1 = alpha_3 = 0, alpha_2 real) and look at the
# energy landscape e(alpha_2).  Below the critical pump there are three
# extrema (two of them elliptic), above it only one survives.

import numpy as np
import matplotlib.pyplot as plt

from trikerr.closed import (boundary_pump, landscape_energy,
                            landscape_extrema, n_real_roots)
from trikerr.params import SystemParams

U0 = -1.0
D2 = 3.0


def closed_ladder(d2, omega2):
    return SystemParams(delta=[d2 - 1.0, d2, d2 + 1.0], gamma=[0.0] * 3,
                        u0=U0, omega2=omega2)


wc = boundary_pump(D2, U0)
print(f"critical pump at delta2 = {D2}: omega2_c = {wc:.6f}")

# landscape cuts on both sides of the critical pump
x = np.linspace(-3.2, 3.2, 801)
fig, axes = plt.subplots(1, 2, figsize=(9, 3.6), sharex=True)
for ax, frac in zip(axes, (0.6, 1.4)):
    p = closed_ladder(D2, frac * wc)
    ax.plot(x, landscape_energy(p, x), lw=1.2)
    for e in landscape_extrema(p):
        marker = {"minimum": "v", "maximum": "^", "unphysical": "x"}[e.kind]
        ax.plot(e.re_alpha2, e.energy, marker, ms=7, label=e.kind)
    ax.set_title(f"omega2 = {frac:.1f} omega2_c "
                 f"({n_real_roots(p)} extrema)")
    ax.set_xlabel("Re alpha_2")
    ax.legend(fontsize=8)
axes[0].set_ylabel("energy")
fig.tight_layout()
fig.savefig("closed_landscape_cuts.png", dpi=150)
print("wrote closed_landscape_cuts.png")

# extrema details just below the merger
for frac in (0.5, 0.9, 0.99, 1.01, 1.5):
    p = closed_ladder(D2, frac * wc)
    ex = landscape_extrema(p)
    tags = ", ".join(f"{e.kind} at n2 = {e.re_alpha2 ** 2:.3f}" for e in ex)
    print(f"  omega2 = {frac:4.2f} wc: {tags}")

# the 3 -> 1 merger line across detunings: bisect the root-count flip and
# compare with the analytic boundary
d2_grid = np.linspace(0.3, 5.0, 48)
scanned = []
for d2 in d2_grid:
    lo, hi = 0.0, 3.0 * boundary_pump(d2, U0)
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        if n_real_roots(closed_ladder(d2, mid)) == 3:
            lo = mid
        else:
            hi = mid
    scanned.append(0.5 * (lo + hi))
scanned = np.array(scanned)
analytic = np.array([boundary_pump(d2, U0) for d2 in d2_grid])
print(f"scan vs analytic boundary: max |diff| = "
      f"{np.abs(scanned - analytic).max():.2e}")

plt.figure(figsize=(5, 3.6))
plt.plot(d2_grid, analytic, label="analytic")
plt.plot(d2_grid, scanned, ".", ms=4, label="root-count scan")
plt.xlabel("delta_2")
plt.ylabel("omega_2")
plt.title("3 -> 1 extremum merger line")
plt.legend()
plt.tight_layout()
plt.savefig("closed_boundary.png", dpi=150)
print("wrote closed_boundary.png")

# How far does a Gaussian (second-cumulant) description of a single lossy
# Kerr mode carry?  Sweep the drive through the mean-field bistable window
# and compare the closure's steady population against the exact steady state
# of the truncated-number-basis master equation.

import numpy as np
import matplotlib.pyplot as plt

from trikerr.cumulant import single_mode_sweep
from trikerr.dynamics import uniform_branch
from trikerr.oracle import FockSpace, moment_vector, steady_state
from trikerr.params import SystemParams
from trikerr.stability import turning_points

DELTA, GAMMA, U0 = 5.0, 1.0, -1.0
omega_grid = np.linspace(0.0, 6.0, 121)

# mean-field roots for reference (nan-padded to three)
mf = np.full((omega_grid.size, 3), np.nan)
for k, w in enumerate(omega_grid):
    n2, _ = uniform_branch(SystemParams.pumped_ladder(DELTA, w))
    mf[k, :len(n2)] = n2

tp = turning_points(SystemParams.pumped_ladder(DELTA, 1.0))
window = sorted(np.sqrt(n * ((DELTA - n) ** 2 + GAMMA ** 2)) for n in tp)
print(f"mean-field bistable window: omega2 in "
      f"({window[0]:.4f}, {window[1]:.4f})")

moments, failed = single_mode_sweep(DELTA, GAMMA, U0, omega_grid,
                                    t_end=400.0, dt=2e-3)
n_closure = moments[1].real
print(f"closure sweep: {failed.sum()} of {failed.size} points failed")

# exact steady states, one sparse solve per drive
space = FockSpace(n_modes=1, n_max=30)
n_exact = np.empty_like(omega_grid)
for k, w in enumerate(omega_grid):
    p = SystemParams(delta=[0.0, DELTA, 0.0], gamma=[1.0, GAMMA, 1.0],
                     u0=U0, omega2=w)
    rho = steady_state(p, space)
    n_exact[k] = moment_vector(space, rho)[1].real

rel = np.abs(n_closure - n_exact) / np.maximum(n_exact, 1e-12)
outside = (omega_grid < window[0]) | (omega_grid > window[1])
print(f"relative deviation outside the window: max "
      f"{rel[outside].max():.2%}, median {np.median(rel[outside]):.2%}")
print(f"inside the window it grows to {rel[~outside].max():.0%}: the exact "
      f"state there is a bimodal mixture of the two branches, which no "
      f"Gaussian ansatz can represent")

fig, axes = plt.subplots(2, 1, figsize=(6, 5.6), sharex=True,
                         height_ratios=[2.2, 1])
axes[0].plot(omega_grid, mf, c="lightgray", lw=1, label=None)
axes[0].plot(omega_grid, n_closure, lw=1.4, label="second-cumulant closure")
axes[0].plot(omega_grid, n_exact, "--", lw=1.4, label="exact (n_max = 30)")
axes[0].axvspan(*window, color="orange", alpha=0.15)
axes[0].set_ylabel("steady n")
axes[0].legend(fontsize=8)
axes[0].set_title("single lossy Kerr mode, delta = +5")
axes[1].semilogy(omega_grid, rel, lw=1)
axes[1].axvspan(*window, color="orange", alpha=0.15)
axes[1].set_ylabel("rel. deviation")
axes[1].set_xlabel("omega_2")
fig.tight_layout()
fig.savefig("closure_vs_exact.png", dpi=150)
print("wrote closure_vs_exact.png")

np.savetxt("closure_vs_exact.csv",
           np.column_stack([omega_grid, n_closure, n_exact, rel]),
           delimiter=",", header="omega2,n_closure,n_exact,rel_deviation",
           comments="")
print("wrote closure_vs_exact.csv")

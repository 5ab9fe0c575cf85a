# The uniform branch n_2(omega_2) folds into an S-curve once the pump-mode
# detuning exceeds sqrt(3) gamma_2.  Trace the branch, mark linear stability
# of every root, and locate the turning points; then scan the detuning cut
# where the oscillation frequencies of the unique attractor collapse onto the
# imaginary axis (the exceptional band).

import numpy as np
import matplotlib.pyplot as plt

from trikerr.dynamics import uniform_branch
from trikerr.params import SystemParams
from trikerr.phasediagram import ep_band
from trikerr.stability import turning_points, uniform_eigenvalues

D2 = 5.0
omega_grid = np.linspace(0.05, 6.0, 400)

branch = []   # (omega2, n2, stable)
for w in omega_grid:
    p = SystemParams.pumped_ladder(D2, w)
    n2, _ = uniform_branch(p)
    for n in n2:
        lam = uniform_eigenvalues(p, n)
        branch.append((w, n, lam.real.max() < 1e-9))
branch = np.array(branch)

p_ref = SystemParams.pumped_ladder(D2, 1.0)
tp = turning_points(p_ref)
print(f"turning points of the branch at delta2 = {D2}: n2 = "
      f"{tp[0]:.4f}, {tp[1]:.4f}")
w_fold = sorted(np.sqrt(n * ((D2 - n) ** 2 + 1.0)) for n in tp)
print(f"  corresponding drives: omega2 = {w_fold[0]:.4f} .. {w_fold[1]:.4f} "
      f"(the bistable window)")

stable = branch[:, 2] > 0.5
plt.figure(figsize=(5.6, 4))
plt.plot(branch[stable, 0], branch[stable, 1], ".", ms=2, label="stable")
plt.plot(branch[~stable, 0], branch[~stable, 1], ".", ms=2, c="crimson",
         label="unstable")
for w in w_fold:
    plt.axvline(w, c="gray", lw=0.6, ls=":")
plt.xlabel("omega_2")
plt.ylabel("n_2")
plt.title(f"uniform branch at delta_2 = {D2}")
plt.legend()
plt.tight_layout()
plt.savefig("uniform_branch_s_curve.png", dpi=150)
print("wrote uniform_branch_s_curve.png")

# note: instability of the middle branch is against *uniform* perturbations;
# outer branches can still lose stability to side-mode (pair) fluctuations,
# which is what opens the limit-cycle region at larger drive.

# exceptional band on a detuning cut at fixed weak drive
template = SystemParams.pumped_ladder(0.0, 0.5)
d2_cut = np.linspace(-1.0, 4.0, 201)
bands = ep_band(template, delta2_values=d2_cut)
for lo, hi in bands:
    print(f"eigenfrequency-collapse band at omega2 = 0.5: "
          f"delta2 in ({lo:.6f}, {hi:.6f})")

# eigenvalues of the unique attractor across the cut, to see the collapse
re_parts, im_parts = [], []
for d2 in d2_cut:
    p = SystemParams.pumped_ladder(d2, 0.5)
    n2, _ = uniform_branch(p)
    lam = uniform_eigenvalues(p, n2[np.argmax(n2)])
    pick = lam[np.argsort(np.abs(lam.imag))][:2]   # the pump-mode pair
    re_parts.append(sorted(pick.real))
    im_parts.append(sorted(pick.imag))
re_parts, im_parts = np.array(re_parts), np.array(im_parts)

fig, axes = plt.subplots(2, 1, figsize=(5.6, 5), sharex=True)
axes[0].plot(d2_cut, im_parts, lw=1)
axes[0].set_ylabel("Im lambda (pump pair)")
axes[1].plot(d2_cut, re_parts, lw=1)
axes[1].set_ylabel("Re lambda (pump pair)")
axes[1].set_xlabel("delta_2")
for ax in axes:
    for lo, hi in bands:
        ax.axvspan(lo, hi, color="orange", alpha=0.2)
fig.suptitle("eigenvalue pair across the exceptional band")
fig.tight_layout()
fig.savefig("exceptional_band.png", dpi=150)
print("wrote exceptional_band.png")

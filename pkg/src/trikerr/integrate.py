"""Fixed-step classical RK4 driver shared by the mean-field, cumulant and
density-matrix integrators.

All systems in this package are autonomous, so the right-hand side is a
function of the state only.  The driver is deterministic: fixed inputs give
bit-identical trajectories.
"""

from dataclasses import dataclass, field

import numpy as np


class DivergenceError(RuntimeError):
    """State norm exceeded the divergence guard during integration."""

    def __init__(self, t_blowup, norm):
        self.t_blowup = t_blowup
        self.norm = norm
        super().__init__(f"state diverged at t = {t_blowup:.6g} (max |y| = {norm:.3g})")


@dataclass
class Trajectory:
    """Sampled solution: times (T,), states (T, ...), step dt actually used."""

    times: np.ndarray
    states: np.ndarray
    dt: float
    diverged: list = field(default_factory=list)  # (flat batch index, t) pairs

    def __len__(self):
        return len(self.times)


def rk4_step(f, y, dt):
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(f, y0, t_end, dt, store_every=1, guard=None, guard_axis=None,
              callback=None):
    """Integrate dy/dt = f(y) from 0 to t_end with classical RK4.

    store_every : keep every k-th step (plus the initial and final state).
    guard : max allowed |y| element magnitude; exceeding it raises
        DivergenceError, unless guard_axis is given, in which case only the
        offending batch slices (indexed along axes *other* than guard_axis)
        are frozen at zero and recorded in Trajectory.diverged.
    callback : optional f(step_index, y) called after each stored sample.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    n_steps = int(round(t_end / dt))
    if n_steps < 1:
        raise ValueError("t_end must be at least one step")

    y = np.array(y0, dtype=complex)
    times = [0.0]
    states = [y.copy()]
    diverged = []
    alive = None
    if guard is not None and guard_axis is not None:
        guard_axis = guard_axis % y.ndim
        batch_shape = tuple(s for ax, s in enumerate(y.shape) if ax != guard_axis)
        alive = np.ones(batch_shape, dtype=bool)

    for k in range(1, n_steps + 1):
        y = rk4_step(f, y, dt)
        t = k * dt
        if guard is not None:
            bad = ~np.isfinite(y) | (np.abs(y) > guard)
            if bad.any():
                if alive is None:
                    finite = np.abs(y[np.isfinite(y)])
                    norm = float(finite.max()) if finite.size else float("inf")
                    raise DivergenceError(t, norm)
                bad_batch = bad.any(axis=guard_axis) & alive
                for idx in np.argwhere(bad_batch):
                    diverged.append((tuple(idx), t))
                alive &= ~bad_batch
                y = np.where(np.expand_dims(alive, guard_axis), y, 0.0)
        if k % store_every == 0 or k == n_steps:
            times.append(t)
            states.append(y.copy())
            if callback is not None:
                callback(k, y)

    return Trajectory(times=np.array(times), states=np.array(states), dt=dt,
                      diverged=diverged)

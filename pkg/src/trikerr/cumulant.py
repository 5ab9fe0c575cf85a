"""Second-cumulant (Gaussian) moment dynamics.

The state is the 15-component complex moment vector defined in
cumulant_algebra (3 means, 6 normal pair moments, 6 anomalous pair moments).
Truncating third and fourth cumulants closes the hierarchy; the closure is
exact for Gaussian states and for the quadratic pieces of the generator, so
deviations from a matched exact solution measure the non-Gaussianity of the
true state.

A single-mode driven Kerr oscillator (the pumped mode alone, no pair
conversion) is included as a hand-written system for cross-checks against
the generated table and the exact density-matrix solver.
"""

import numpy as np

from .cumulant_algebra import MODE_PAIRS, TermTable
from .integrate import integrate

NEGATIVITY_TOL = 1e-9
NORMAL_DIAG = (3, 6, 8)  # indices of <am^dag am> in the moment vector

_TABLE = None


def term_table():
    """Shared generated equation table (built once per process)."""
    global _TABLE
    if _TABLE is None:
        _TABLE = TermTable()
    return _TABLE


class ClosureBreakdown(RuntimeError):
    """A mode population went negative: the Gaussian closure has failed."""

    def __init__(self, t, worst):
        self.t = t
        self.worst = worst
        super().__init__(
            f"closure produced negative population {worst:.3e} at t = {t:.6g}")


def coherent_moments(alpha):
    """Moment vector of the product coherent state |alpha_1,alpha_2,alpha_3>.

    alpha: (3,) or (3, B); returns (15,) or (15, B).
    """
    alpha = np.asarray(alpha, dtype=complex)
    out = np.zeros((15,) + alpha.shape[1:], dtype=complex)
    out[0:3] = alpha
    for k, (m, n) in enumerate(MODE_PAIRS):
        out[3 + k] = np.conj(alpha[m]) * alpha[n]
        out[9 + k] = alpha[m] * alpha[n]
    return out


def populations(moments):
    """Real mode populations <am^dag am> from a moment vector (15, ...)."""
    return np.real(moments[list(NORMAL_DIAG)])


def three_mode_rhs(p, moments):
    return term_table().rhs(moments, term_table().param_values(p))


def integrate_cumulant(p, moments0, t_end, dt=1e-3, store_every=100,
                       pvals=None):
    """RK4 trajectory of the moment vector; raises ClosureBreakdown if any
    population drops below -NEGATIVITY_TOL (moments0 may be (15,) or
    (15, B) with matching pvals columns)."""
    table = term_table()
    if pvals is None:
        pvals = table.param_values(p)

    def rhs(y):
        return table.rhs(y, pvals)

    def check(step, y):
        pops = populations(y)
        worst = pops.min()
        if worst < -NEGATIVITY_TOL:
            raise ClosureBreakdown(step * dt, float(worst))

    return integrate(rhs, moments0, t_end, dt, store_every=store_every,
                     guard=1e9, callback=check)


def cumulant_sweep(p, omega2_values, t_end=200.0, dt=1e-3, moments0=None):
    """Steady moments along a drive sweep, integrated as one batch.

    Columns whose closure breaks down (negative population) are frozen and
    flagged instead of aborting the sweep.  Returns (moments (15, B),
    failed (B,) bool).
    """
    omega2_values = np.asarray(omega2_values, dtype=float)
    b = omega2_values.size
    table = term_table()
    pvals = np.repeat(table.param_values(p)[:, None], b, axis=1)
    pvals[8] = omega2_values
    y = (np.zeros((15, b), dtype=complex) if moments0 is None
         else np.array(moments0, dtype=complex))
    failed = np.zeros(b, dtype=bool)

    n_steps = int(round(t_end / dt))
    check_every = max(1, int(round(0.1 / dt)))
    for k in range(1, n_steps + 1):
        k1 = table.rhs(y, pvals)
        k2 = table.rhs(y + 0.5 * dt * k1, pvals)
        k3 = table.rhs(y + 0.5 * dt * k2, pvals)
        k4 = table.rhs(y + dt * k3, pvals)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if k % check_every == 0:
            failed |= ((populations(y) < -NEGATIVITY_TOL).any(axis=0)
                       | ~np.isfinite(y).all(axis=0))
            if failed.any():
                y[:, failed] = 0.0  # keep failed columns pinned
    return y, failed


# -- single-mode validation system ------------------------------------------

def single_mode_rhs(delta, gamma, u0, omega2, y):
    """Closed equations for one driven Kerr mode.

    y = (<a>, <a^dag a>, <a^2>), possibly (3, B).  The population equation
    is exact; the mean and anomalous equations carry the closure terms.
    """
    a, n, s = y
    ad = np.conj(a)
    da = (-1j * (delta - 1j * gamma + 2.0 * u0 * n - 2.0 * u0 * ad * a) * a
          - 1j * u0 * s * ad - 1j * omega2)
    dn = -2.0 * gamma * n + 1j * omega2 * (a - ad)
    ds = (-2j * omega2 * a
          - 2j * (delta - 1j * gamma + 0.5 * u0 + 3.0 * u0 * n) * s
          + 4j * u0 * a ** 3 * ad)
    return np.stack([da, dn, ds])


def single_mode_sweep(delta, gamma, u0, omega2_values, t_end=200.0, dt=1e-3):
    """Long-time single-mode moments across a drive sweep (batched).

    Returns (moments (3, B), failed (B,)); failed marks drives where the
    population went negative or the state blew up.
    """
    omega2_values = np.asarray(omega2_values, dtype=float)
    y = np.zeros((3, omega2_values.size), dtype=complex)
    failed = np.zeros(omega2_values.size, dtype=bool)

    def rhs(yy):
        return single_mode_rhs(delta, gamma, u0, omega2_values, yy)

    n_steps = int(round(t_end / dt))
    check_every = max(1, int(round(0.1 / dt)))
    for k in range(1, n_steps + 1):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if k % check_every == 0:
            failed |= (y[1].real < -NEGATIVITY_TOL) | ~np.isfinite(y).all(axis=0)
            if failed.any():
                y[:, failed] = 0.0  # keep failed columns pinned
    return y, failed

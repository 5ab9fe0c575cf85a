"""Time integration of the mean-field flow, fixed points, and attractor
classification.

The long-time solutions fall into three families: uniform fixed points with
empty side modes (low-population LP and high-population HP branches of the
pumped mode), and limit cycles (LC) where the side modes oscillate at +-w_LC
while n_2 and |alpha_1| stay constant.
"""

from dataclasses import dataclass

import numpy as np

from .integrate import DivergenceError, Trajectory, integrate
from .meanfield import meanfield_rhs, populations
from .stability import bogoliubov_matrix

DIVERGENCE_GUARD = 1e6
LC_AMPLITUDE_THRESHOLD = 1e-3
FIXED_POINT_TOL = 1e-6


@dataclass
class AttractorLabel:
    kind: str                 # 'LP' | 'HP' | 'LC' | 'unstable' | 'unclassified'
    fixed_point: np.ndarray = None
    lc_frequency: float = None
    lc_amplitude: float = None
    residual: float = None


@dataclass
class FixedPointResult:
    points: list              # arrays (3,) complex, deduplicated
    n_seeds: int
    n_converged: int
    residuals: list


def integrate_rk4(p, alpha0, t_end, dt=1e-3, store_every=1,
                  guard=DIVERGENCE_GUARD, mask_divergence=False):
    """RK4 trajectory of the mean-field flow from alpha0 (shape (..., 3)).

    A state magnitude above `guard` raises DivergenceError with the blow-up
    time; with mask_divergence=True (batched runs) the offending initial
    conditions are instead zeroed out and listed in Trajectory.diverged.
    """
    alpha0 = np.asarray(alpha0, dtype=complex)
    guard_axis = -1 if (mask_divergence and alpha0.ndim > 1) else None
    return integrate(lambda a: meanfield_rhs(p, a), alpha0, t_end, dt,
                     store_every=store_every, guard=guard,
                     guard_axis=guard_axis)


def random_initial_conditions(count, radius=5.0, seed=0):
    """(count, 3) complex amplitudes, each mode independent and uniform over
    the disc |alpha| <= radius; reproducible for a fixed seed (int or
    SeedSequence)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if radius <= 0:
        raise ValueError("radius must be > 0")
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random((count, 3)))
    phi = 2.0 * np.pi * rng.random((count, 3))
    return r * np.exp(1j * phi)


def _real_jacobian(p, alpha):
    """Jacobian of the flow as a real 6x6 over (Re alpha, Im alpha)."""
    b = bogoliubov_matrix(p, alpha)
    a_blk, b_blk = b.r, b.s
    return np.block([
        [(a_blk + b_blk).real, -(a_blk - b_blk).imag],
        [(a_blk + b_blk).imag, (a_blk - b_blk).real],
    ])


def find_fixed_points(p, seeds, tol=1e-10, dedup_tol=1e-6, max_iter=60):
    """Damped-Newton roots of the mean-field flow from the given seeds.

    Seeds that fail to reach |rhs| <= tol are dropped (counted in the
    result); converged roots are deduplicated within dedup_tol and sorted by
    n_2 then lexicographically.
    """
    seeds = np.atleast_2d(np.asarray(seeds, dtype=complex))
    if seeds.size == 0:
        raise ValueError("seeds must be nonempty")
    roots = []
    residuals = []
    n_converged = 0
    for s in seeds:
        x = np.concatenate([s.real, s.imag]).astype(float)
        ok = False
        for _ in range(max_iter):
            alpha = x[:3] + 1j * x[3:]
            f = meanfield_rhs(p, alpha)
            fv = np.concatenate([f.real, f.imag])
            res = np.abs(f).max()
            if res <= tol:
                ok = True
                break
            try:
                step = np.linalg.solve(_real_jacobian(p, alpha), -fv)
            except np.linalg.LinAlgError:
                break
            # backtracking damping on the residual norm
            lam, base = 1.0, np.linalg.norm(fv)
            for _ in range(30):
                x_new = x + lam * step
                f_new = meanfield_rhs(p, x_new[:3] + 1j * x_new[3:])
                if np.linalg.norm(np.concatenate([f_new.real, f_new.imag])) < base:
                    break
                lam *= 0.5
            else:
                break
            x = x + lam * step
        if not ok:
            continue
        n_converged += 1
        alpha = x[:3] + 1j * x[3:]
        if not any(np.abs(alpha - r).max() < dedup_tol for r in roots):
            roots.append(alpha)
            residuals.append(res)
    order = sorted(range(len(roots)),
                   key=lambda i: (populations(roots[i]).sum(),
                                  tuple(roots[i].view(float))))
    return FixedPointResult(points=[roots[i] for i in order],
                            n_seeds=len(seeds), n_converged=n_converged,
                            residuals=[residuals[i] for i in order])


def uniform_branch(p):
    """Uniform fixed points (alpha_1 = alpha_3 = 0): real roots n_2 >= 0 of

        u0^2 n^3 + 2 u0 delta_2 n^2 + (delta_2^2 + gamma_2^2) n - omega_2^2 = 0

    with alpha_2 = -omega_2 / (delta_2 - i gamma_2 + u0 n).  Returns
    (n2_values ascending, alpha2_values)."""
    u, d2, g2, om = p.u0, p.delta[1], p.gamma[1], p.omega2
    if u == 0:
        n = np.array([om ** 2 / (d2 ** 2 + g2 ** 2)])
    else:
        coeffs = [u ** 2, 2 * u * d2, d2 ** 2 + g2 ** 2, -om ** 2]
        rts = np.roots(coeffs)
        n = np.array(sorted(r.real for r in rts
                            if abs(r.imag) < 1e-9 and r.real >= -1e-12))
        n = np.clip(n, 0.0, None)
        # polish: Newton on the real cubic
        for _ in range(3):
            f = u ** 2 * n ** 3 + 2 * u * d2 * n ** 2 + (d2 ** 2 + g2 ** 2) * n - om ** 2
            fp = 3 * u ** 2 * n ** 2 + 4 * u * d2 * n + d2 ** 2 + g2 ** 2
            safe = np.abs(fp) > 1e-12
            n = np.where(safe, n - f / np.where(safe, fp, 1.0), n)
    alpha2 = -om / (d2 - 1j * g2 + u * n)
    return n, alpha2


def label_uniform(p, n2):
    """'LP' or 'HP' for a uniform state from the sign of the Kerr-shifted
    detunings (delta_2 + u0 n2) and (delta_2 + 3 u0 n2): both positive on the
    low branch, both negative on the high branch.  In the crossover band
    (mixed signs, single smooth branch) the midpoint of the fold decides."""
    d2, u = p.delta[1], p.u0
    f1, f3 = d2 + u * n2, d2 + 3 * u * n2
    if f1 > 0 and f3 > 0:
        return "LP"
    if f1 < 0 and f3 < 0:
        return "HP"
    return "LP" if n2 < -2.0 * d2 / (3.0 * u) else "HP"


def detect_limit_cycle(traj, transient_fraction=0.5, p=None,
                       amp_threshold=LC_AMPLITUDE_THRESHOLD,
                       fp_tol=FIXED_POINT_TOL):
    """Classify the long-time behavior of a single-IC trajectory.

    The post-transient window is inspected in this order: a vanishing flow
    residual at the end state means a uniform fixed point (labeled LP/HP via
    label_uniform when params are given); otherwise a side-mode amplitude
    above amp_threshold with a dominant Fourier peak in Re(alpha_1) is a
    limit cycle, with w_LC refined by quadratic interpolation of the peak.
    The reported residual is the end-state |rhs| for fixed points and the
    relative modulation of |alpha_1 alpha_3| for limit cycles.
    """
    states = traj.states
    if states.ndim != 2 or states.shape[1] != 3:
        raise ValueError("detect_limit_cycle expects a single-IC trajectory")
    start = int(len(traj.times) * transient_fraction)
    window = states[start:]
    t_window = traj.times[start:]

    end_state = states[-1]
    if p is not None:
        residual = float(np.abs(meanfield_rhs(p, end_state)).max())
        if residual <= fp_tol:
            n2 = float(populations(end_state)[1])
            return AttractorLabel(kind=label_uniform(p, n2),
                                  fixed_point=end_state, residual=residual)

    a1 = window[:, 0]
    mean_amp = float(np.abs(a1).mean())
    if mean_amp > amp_threshold:
        freq, ok = _dominant_frequency(a1.real, t_window)
        if ok:
            prod = np.abs(window[:, 0] * window[:, 2])
            modulation = float(prod.std() / prod.mean()) if prod.mean() > 0 else np.inf
            return AttractorLabel(kind="LC", lc_frequency=freq,
                                  lc_amplitude=mean_amp, residual=modulation)
    residual = float(np.abs(meanfield_rhs(p, end_state)).max()) if p is not None else np.nan
    return AttractorLabel(kind="unclassified", residual=residual)


def _dominant_frequency(x, t):
    """Angular frequency of the dominant nonzero Fourier peak of x(t),
    quadratically interpolated; (frequency, found_flag)."""
    x = np.asarray(x, dtype=float)
    x = x - x.mean()
    n = len(x)
    if n < 16:
        return np.nan, False
    dt_s = t[1] - t[0]
    spec = np.abs(np.fft.rfft(x * np.hanning(n)))
    spec[0] = 0.0
    k = int(np.argmax(spec))
    if k == 0 or spec[k] < 1e-12 or spec[k] < 20.0 * np.median(spec[1:]):
        return np.nan, False
    if 1 <= k < len(spec) - 1:
        y0, y1, y2 = spec[k - 1], spec[k], spec[k + 1]
        denom = y0 - 2.0 * y1 + y2
        shift = 0.5 * (y0 - y2) / denom if abs(denom) > 0 else 0.0
    else:
        shift = 0.0
    freq_hz = (k + shift) / (n * dt_s)
    return 2.0 * np.pi * freq_hz, True

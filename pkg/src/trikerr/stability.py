"""Linear (Bogoliubov) stability of mean-field fixed points.

Fluctuations around a fixed point, arranged as the doubled vector
(da_1, da_2, da_3, da_1*, da_2*, da_3*), obey d(dv)/dt = M dv with

    M = [[R, S], [conj(S), conj(R)]] ,

where R = d(rhs)/d(alpha) and S = d(rhs)/d(conj(alpha)) are the complex
Jacobian blocks of the mean-field flow.  A fixed point is dynamically stable
when the spectrum of M lies in the open left half-plane.

The module also carries the closed-form results available on the uniform
branch (alpha_1 = alpha_3 = 0): analytic eigenvalues, the slope
d n_2 / d omega_2 of the branch, its turning points, and the steady-state
covariance of the fluctuations driven by vacuum noise.
"""

from dataclasses import dataclass

import numpy as np

from .meanfield import meanfield_rhs, total_number

STABILITY_TOL = 1e-9


@dataclass
class BogoliubovMatrix:
    m: np.ndarray  # 6x6 complex

    @property
    def r(self):
        return self.m[:3, :3]

    @property
    def s(self):
        return self.m[:3, 3:]


@dataclass
class StabilityReport:
    eigenvalues: np.ndarray  # 6 complex, sorted by (real, imag)
    stable: bool
    max_real: float


def bogoliubov_matrix(p, alpha):
    """Exact Jacobian of the mean-field flow in the doubled space."""
    a1, a2, a3 = np.asarray(alpha, dtype=complex)
    u = p.u0
    ntot = float(total_number([a1, a2, a3]))

    r = np.zeros((3, 3), dtype=complex)
    for m in range(3):
        r[m, m] = -1j * (p.delta[m] - 1j * p.gamma[m]) - 2j * u * ntot
    r[0, 1] = r[1, 2] = -2j * u * (a1 * np.conj(a2) + a2 * np.conj(a3))
    r[1, 0] = r[2, 1] = -2j * u * (np.conj(a1) * a2 + np.conj(a2) * a3)
    r[0, 2] = -2j * u * a1 * np.conj(a3)
    r[2, 0] = -2j * u * np.conj(a1) * a3

    s = -1j * u * np.array([
        [a1 ** 2, 2 * a1 * a2, a2 ** 2 + 2 * a1 * a3],
        [2 * a1 * a2, a2 ** 2 + 2 * a1 * a3, 2 * a2 * a3],
        [a2 ** 2 + 2 * a1 * a3, 2 * a2 * a3, a3 ** 2],
    ])

    m = np.block([[r, s], [np.conj(s), np.conj(r)]])
    return BogoliubovMatrix(m=m)


def stability_eigenvalues(b, tol=STABILITY_TOL):
    """Dense eigensolve of the Bogoliubov matrix; stable means every
    eigenvalue real part is below -tol."""
    lam = np.linalg.eigvals(b.m)
    order = np.lexsort((lam.imag, lam.real))
    lam = lam[order]
    max_real = float(lam.real.max())
    return StabilityReport(eigenvalues=lam, stable=max_real < -tol,
                           max_real=max_real)


def uniform_eigenvalues(p, n2):
    """Closed-form eigenvalues on the uniform branch (alpha_1 = alpha_3 = 0).

    Pumped-mode pair:   -gamma_2 +- i sqrt(X2),
        X2 = 3 u0^2 n2^2 + 4 u0 delta_2 n2 + delta_2^2 .
    Side-mode quartet (needs gamma_1 = gamma_3):
        -gamma_1 + i ( +-(delta_1 - delta_3)/2 +- sqrt(Xs) ),
        Xs = 3 u0^2 n2^2 + 4 u0 (delta_2 - delta_d) n2 + (delta_2 - delta_d)^2 .
    """
    if abs(p.gamma[0] - p.gamma[2]) > 1e-12:
        raise ValueError("closed-form side eigenvalues require gamma_1 = gamma_3")
    u, d2 = p.u0, p.delta[1]
    x2 = 3 * u ** 2 * n2 ** 2 + 4 * u * d2 * n2 + d2 ** 2
    lam = [-p.gamma[1] + 1j * np.sqrt(complex(x2)),
           -p.gamma[1] - 1j * np.sqrt(complex(x2))]

    dbar = d2 - p.delta_d  # = (delta_1 + delta_3)/2
    xs = 3 * u ** 2 * n2 ** 2 + 4 * u * dbar * n2 + dbar ** 2
    half_split = 0.5 * (p.delta[0] - p.delta[2])
    root = np.sqrt(complex(xs))
    for s1 in (+1, -1):
        for s2 in (+1, -1):
            lam.append(-p.gamma[0] + 1j * (s1 * half_split + s2 * root))
    lam = np.asarray(lam)
    return lam[np.lexsort((lam.imag, lam.real))]


def uniform_slope(p, n2):
    """Slope d n_2 / d omega_2 along the uniform branch:
    2 omega_2 / (3 u0^2 n2^2 + 4 u0 delta_2 n2 + delta_2^2 + gamma_2^2).
    Returns signed infinity when the denominator vanishes (turning point).
    """
    u, d2, g2 = p.u0, p.delta[1], p.gamma[1]
    denom = 3 * u ** 2 * n2 ** 2 + 4 * u * d2 * n2 + d2 ** 2 + g2 ** 2
    if abs(denom) < 1e-12:
        return np.copysign(np.inf, denom) if denom != 0 else np.inf
    return 2.0 * p.omega2 / denom


def turning_points(p):
    """Populations bounding the multistable window of the uniform branch:
    n_2 = (-2 u0 delta_2 -+ sqrt(u0^2 (delta_2^2 - 3 gamma_2^2))) / (3 u0^2).

    Exists only for u0*delta_2 < 0 and |delta_2| >= sqrt(3)*gamma_2; returns
    (n_lower, n_upper) or None.  At threshold the pair is degenerate.
    """
    u, d2, g2 = p.u0, p.delta[1], p.gamma[1]
    if u * d2 >= 0:
        return None
    radicand = d2 ** 2 - 3.0 * g2 ** 2
    if radicand < -1e-12:
        return None
    radicand = max(radicand, 0.0)  # threshold itself: degenerate pair
    root = abs(u) * np.sqrt(radicand)
    n_lo = (-2.0 * u * d2 - root) / (3.0 * u ** 2)
    n_hi = (-2.0 * u * d2 + root) / (3.0 * u ** 2)
    return (n_lo, n_hi)


def covariance_spectrum(p, alpha, omega_grid):
    """Steady-state fluctuation covariance Gamma(w) of a stable fixed point.

    Vacuum noise enters through the loss channels only, with the delta
    correlator <xi_m(t) xi_n(t')^dag> = 2 gamma_m delta_mn delta(t - t'), so
    the (two-sided) spectrum is

        Gamma(w) = (-i w - M)^(-1) D (-i w - M)^(-dag),
        D = diag(2 gamma_1, 2 gamma_2, 2 gamma_3, 0, 0, 0).

    Returns an array (len(omega_grid), 6, 6).  Raises at marginal stability
    (eigenvalue real part within STABILITY_TOL of zero), where the response
    is undefined.
    """
    b = bogoliubov_matrix(p, alpha)
    lam = np.linalg.eigvals(b.m)
    if np.any(np.abs(lam.real) < STABILITY_TOL):
        raise ValueError("covariance undefined at marginal stability "
                         f"(min |Re lambda| = {np.abs(lam.real).min():.3g})")
    d = np.zeros((6, 6), dtype=complex)
    d[:3, :3] = np.diag(2.0 * p.gamma)
    eye = np.eye(6)
    out = np.empty((len(omega_grid), 6, 6), dtype=complex)
    for k, w in enumerate(np.asarray(omega_grid, dtype=float)):
        ginv = np.linalg.inv(-1j * w * eye - b.m)
        out[k] = ginv @ d @ ginv.conj().T
    return out


# index order putting the pumped-mode pair first, then the coupled side pairs
_COV_BLOCK_PERM = np.array([1, 4, 0, 5, 3, 2])


def covariance_block_form(gamma_matrix):
    """Permute a 6x6 covariance into the (pumped 2x2) + (side 4x4) block
    arrangement valid on the uniform branch; off-diagonal blocks vanish there
    because the pumped mode carries no correlation with the side modes."""
    g = np.asarray(gamma_matrix)
    return g[np.ix_(_COV_BLOCK_PERM, _COV_BLOCK_PERM)]


def is_exceptional(b, pair_tol=1e-3, cond_threshold=1e6):
    """Exceptional-point detector: two eigenvalues within pair_tol in both
    components while the eigenvector basis is numerically defective
    (condition number above cond_threshold)."""
    lam, vec = np.linalg.eig(b.m)
    close_pair = False
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            if (abs(lam[i].real - lam[j].real) < pair_tol
                    and abs(lam[i].imag - lam[j].imag) < pair_tol):
                close_pair = True
    if not close_pair:
        return False
    return np.linalg.cond(vec) > cond_threshold

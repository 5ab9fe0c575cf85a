"""Gaussian fluctuation action in frequency space and retarded spectral
functions.

Fluctuations around a mean-field background are organized in the interleaved
vector (da_1, da_1*, da_2, da_2*, da_3, da_3*) of *classical* fields, related
to the mean fields by alpha_c = sqrt(2) * alpha_mf (so the classical
population of the pumped mode is twice the mean-field one).  The quadratic
action is encoded by three 6x6 blocks: the inverse retarded and advanced
Green's functions and the Keldysh component

    pk = i * diag(2 gamma_1, 2 gamma_1, 2 gamma_2, 2 gamma_2, 2 gamma_3, 2 gamma_3).

gr_inv and ga_inv differ only in the sign of every i*gamma_m and satisfy
gr_inv(w)^dag = ga_inv(w) on the real axis.  Only the diagonal carries w, so
every entry is a first-order polynomial in w.

The per-mode retarded Green's function is the (da_m, da_m) diagonal element
of gr_inv^(-1), and the spectral function is A_m(w) = -2 Im G_R^m(w); with
this normalization each mode sector obeys the sum rule
integral A_m(w) dw / (2 pi) = 1.
"""

from dataclasses import dataclass

import numpy as np

DEFAULT_GRID = (-15.0, 15.0, 3001)


@dataclass
class KeldyshBlocks:
    gr_inv: np.ndarray
    ga_inv: np.ndarray
    pk: np.ndarray


@dataclass
class SpectralCurve:
    omega: np.ndarray
    a: np.ndarray  # (len(omega), 3)


def classical_fields(alpha_mf):
    """Classical fields alpha_c = sqrt(2) alpha_mf."""
    return np.sqrt(2.0) * np.asarray(alpha_mf, dtype=complex)


def _inverse_gf(p, alpha_c, omega, gamma_sign, n_total=None):
    """Common builder for gr_inv (+) and ga_inv (-).

    n_total overrides the background N = sum |alpha_c|^2; used when the
    populations come from a correlated (cumulant) background whose first
    moments alone underestimate the mode occupations.
    """
    a, b, c = np.asarray(alpha_c, dtype=complex)
    u = p.u0
    nn = n_total if n_total is not None else (abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2)
    g1, g2, g3 = gamma_sign * 1j * p.gamma
    d1, d2, d3 = p.delta

    ab = -u * (a * np.conj(b) + b * np.conj(c))     # normal 1-2 / 2-3 coupling
    abb = -u * a * b                                # anomalous 1-2 / 2-1
    ac = -u * a * np.conj(c)                        # normal 1-3
    pair = -0.5 * u * (b ** 2 + 2.0 * a * c)        # anomalous pair channel
    bc = -u * b * c                                 # anomalous 2-3

    m = np.array([
        [omega - d1 - u * nn + g1, -0.5 * u * a ** 2, ab, abb, ac, pair],
        [-0.5 * u * np.conj(a) ** 2, -omega - d1 - u * nn - g1,
         np.conj(abb), np.conj(ab), np.conj(pair), np.conj(ac)],
        [np.conj(ab), abb, omega - d2 - u * nn + g2, pair, ab, bc],
        [np.conj(abb), ab, np.conj(pair), -omega - d2 - u * nn - g2,
         np.conj(bc), np.conj(ab)],
        [np.conj(ac), pair, np.conj(ab), bc, omega - d3 - u * nn + g3,
         -0.5 * u * c ** 2],
        [np.conj(pair), ac, np.conj(bc), ab, -0.5 * u * np.conj(c) ** 2,
         -omega - d3 - u * nn - g3],
    ], dtype=complex)
    return m


def assemble_keldysh_blocks(p, alpha_c, omega, n_total=None):
    """The three 6x6 blocks at a single frequency, for classical fields."""
    gr = _inverse_gf(p, alpha_c, omega, +1.0, n_total)
    ga = _inverse_gf(p, alpha_c, omega, -1.0, n_total)
    pk = 1j * np.diag(np.repeat(2.0 * p.gamma, 2)).astype(complex)
    return KeldyshBlocks(gr_inv=gr, ga_inv=ga, pk=pk)


def retarded_gf_uniform(p, n2, omega):
    """Closed-form retarded Green's functions on the uniform background.

    n2 is the classical pumped-mode population |alpha_2c|^2.  Returns the
    array (G_R^1, G_R^2, G_R^3) at (possibly array-valued) omega.

    Pumped mode:
        G_R^2 = -4 (w + D2 + i g2 + u n2)
                / [4 (w + D2 + i g2)(-w + D2 - i g2) + 8 u D2 n2 + 3 u^2 n2^2]
    Side modes (m, mbar) = (1, 3), (3, 1):
        G_R^m = 4 (w + Dmbar + i gmbar + u n2)
                / [4 (w + Dmbar + u n2 + i gmbar)(w - Dm - u n2 + i gm) + u^2 n2^2]
    """
    w = np.asarray(omega, dtype=complex)
    u = p.u0
    d1, d2, d3 = p.delta
    g1, g2, g3 = p.gamma

    den2 = (4.0 * (w + d2 + 1j * g2) * (-w + d2 - 1j * g2)
            + 8.0 * u * d2 * n2 + 3.0 * u ** 2 * n2 ** 2)
    gf2 = -4.0 * (w + d2 + 1j * g2 + u * n2) / den2

    def side(dm, gm, dmb, gmb):
        den = (4.0 * (w + dmb + u * n2 + 1j * gmb) * (w - dm - u * n2 + 1j * gm)
               + u ** 2 * n2 ** 2)
        return 4.0 * (w + dmb + 1j * gmb + u * n2) / den

    gf1 = side(d1, g1, d3, g3)
    gf3 = side(d3, g3, d1, g1)
    return np.stack(np.broadcast_arrays(gf1, gf2, gf3), axis=-1)


def gf_poles_uniform(p, n2, branch="retarded"):
    """Poles of the uniform-background Green's functions: the roots of the
    quadratic denominators of retarded_gf_uniform, one pair per mode, as a
    dict {mode: array of 2}.  branch='advanced' conjugates them (poles of the
    advanced functions, upper half-plane for gamma > 0).

    i * (advanced pole) reproduces the corresponding Bogoliubov stability
    eigenvalue once n2 is taken as twice the mean-field population.
    """
    u = p.u0
    d1, d2, d3 = p.delta
    g1, g2, g3 = p.gamma

    poles = {}
    # pumped: -4 w^2 - 8i g2 w + 4(d2^2 + g2^2) + 8 u d2 n2 + 3 u^2 n2^2
    poles[2] = np.roots([-4.0, -8j * g2,
                         4.0 * (d2 ** 2 + g2 ** 2) + 8.0 * u * d2 * n2
                         + 3.0 * u ** 2 * n2 ** 2])

    def side(dm, gm, dmb, gmb):
        a_coef = dmb + u * n2 + 1j * gmb
        b_coef = -dm - u * n2 + 1j * gm
        return np.roots([4.0, 4.0 * (a_coef + b_coef),
                         4.0 * a_coef * b_coef + u ** 2 * n2 ** 2])

    poles[1] = side(d1, g1, d3, g3)
    poles[3] = side(d3, g3, d1, g1)
    if branch == "advanced":
        poles = {m: np.conj(v) for m, v in poles.items()}
    elif branch != "retarded":
        raise ValueError("branch must be 'retarded' or 'advanced'")
    return poles


def spectral_function(p, background_mf, grid, method="numeric_6x6",
                      populations_mf=None):
    """Spectral functions A_m(w) = -2 Im G_R^m(w) over a frequency grid.

    background_mf: mean-field amplitudes (3,) of the expansion point;
    internally promoted to classical fields.  populations_mf optionally
    replaces |alpha_mf|^2 in the background occupation (a correlated
    background carries population beyond its first moments; only the total
    N is corrected, the coupling entries still come from the first moments).

    method 'numeric_6x6' inverts gr_inv at each w; 'analytic_uniform'
    evaluates the closed forms and requires alpha_1 = alpha_3 = 0.
    """
    grid = np.asarray(grid, dtype=float)
    alpha_mf = np.asarray(background_mf, dtype=complex)
    if method == "analytic_uniform":
        if abs(alpha_mf[0]) > 1e-12 or abs(alpha_mf[2]) > 1e-12:
            raise ValueError("analytic_uniform requires an empty-side background")
        n2c = (2.0 * populations_mf[1] if populations_mf is not None
               else 2.0 * abs(alpha_mf[1]) ** 2)
        gf = retarded_gf_uniform(p, n2c, grid)
        return SpectralCurve(omega=grid, a=-2.0 * gf.imag)
    if method != "numeric_6x6":
        raise ValueError("method must be 'numeric_6x6' or 'analytic_uniform'")

    alpha_c = classical_fields(alpha_mf)
    n_total = (2.0 * float(np.sum(populations_mf)) if populations_mf is not None
               else None)
    base = _inverse_gf(p, alpha_c, 0.0, +1.0, n_total)
    sign = np.array([1.0, -1.0, 1.0, -1.0, 1.0, -1.0])
    stack = base[None, :, :] + grid[:, None, None] * np.diag(sign)[None, :, :]
    try:
        inv = np.linalg.inv(stack)
    except np.linalg.LinAlgError as exc:
        dets = np.abs(np.linalg.det(stack))
        raise ValueError(f"singular fluctuation matrix at w = "
                         f"{grid[int(np.argmin(dets))]:.6g}") from exc
    diag = inv[:, [0, 2, 4], [0, 2, 4]]
    return SpectralCurve(omega=grid, a=-2.0 * diag.imag)


def default_grid():
    lo, hi, n = DEFAULT_GRID
    return np.linspace(lo, hi, n)


def sum_rule_grid(core_halfwidth=15.0, n_core=3001, tail_max=2000.0, n_tail=600):
    """Composite grid for sum-rule quadrature: a dense core plus geometric
    tails out to +-tail_max, where the 1/w^2 Lorentzian tails still hold a
    few percent of the integral."""
    core = np.linspace(-core_halfwidth, core_halfwidth, n_core)
    tail = np.geomspace(core_halfwidth, tail_max, n_tail + 1)[1:]
    return np.concatenate([-tail[::-1], core, tail])


def sum_rule(curve):
    """integral A_m(w) dw / (2 pi) per mode (trapezoid)."""
    return np.trapezoid(curve.a, curve.omega, axis=0) / (2.0 * np.pi)

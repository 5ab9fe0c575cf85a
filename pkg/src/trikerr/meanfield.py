"""Mean-field equations of motion and conserved quantities.

The mean fields alpha_m = <a_m> obey

    d(alpha_1)/dt = -i(delta_1 - i gamma_1) alpha_1
                    - i u0 [ (n_1 + 2 n_2 + 2 n_3) alpha_1 + alpha_2^2 conj(alpha_3) ]
    d(alpha_2)/dt = -i(delta_2 - i gamma_2) alpha_2
                    - i u0 [ (n_2 + 2 n_1 + 2 n_3) alpha_2 + 2 conj(alpha_2) alpha_1 alpha_3 ]
                    - i omega_2
    d(alpha_3)/dt = mode-1 equation with 1 <-> 3 exchanged

with n_m = |alpha_m|^2.  All functions broadcast over leading axes, so a batch
of initial conditions can be advanced as a single (batch, 3) array.
"""

import numpy as np


def meanfield_rhs(p, alpha):
    """Right-hand side d(alpha)/dt of the mean-field flow.

    alpha: complex array (..., 3).  Returns an array of the same shape.
    """
    alpha = np.asarray(alpha, dtype=complex)
    a1, a2, a3 = alpha[..., 0], alpha[..., 1], alpha[..., 2]
    n1 = a1.real ** 2 + a1.imag ** 2
    n2 = a2.real ** 2 + a2.imag ** 2
    n3 = a3.real ** 2 + a3.imag ** 2
    u = p.u0
    d, g = p.delta, p.gamma

    f1 = -1j * (d[0] - 1j * g[0]) * a1 - 1j * u * ((n1 + 2 * n2 + 2 * n3) * a1
                                                   + a2 ** 2 * np.conj(a3))
    f2 = (-1j * (d[1] - 1j * g[1]) * a2
          - 1j * u * ((n2 + 2 * n1 + 2 * n3) * a2 + 2 * np.conj(a2) * a1 * a3)
          - 1j * p.omega2)
    f3 = -1j * (d[2] - 1j * g[2]) * a3 - 1j * u * ((n3 + 2 * n2 + 2 * n1) * a3
                                                   + a2 ** 2 * np.conj(a1))
    return np.stack([f1, f2, f3], axis=-1)


def populations(alpha):
    """n_m = |alpha_m|^2 along the last axis."""
    alpha = np.asarray(alpha)
    return alpha.real ** 2 + alpha.imag ** 2


def total_number(alpha):
    """Total photon number N = n_1 + n_2 + n_3."""
    return populations(alpha).sum(axis=-1)


def energy(p, alpha):
    """Mean-field energy functional (conserved when gamma = 0).

    E = sum_m delta_m n_m + (u0/2) sum_m n_m^2
        + 2 u0 (n_1 n_2 + n_1 n_3 + n_2 n_3)
        + 2 u0 Re(conj(alpha_2)^2 alpha_1 alpha_3) + 2 omega_2 Re(alpha_2)

    The flow satisfies d(alpha_m)/dt = -i dE/d(conj(alpha_m)) - gamma_m alpha_m,
    so E and N are constants of motion of the lossless undriven flow (the
    pair-scattering term destroys two pump photons and creates one photon in
    each side mode, conserving N; the drive breaks N conservation only).
    """
    alpha = np.asarray(alpha, dtype=complex)
    n = populations(alpha)
    a1, a2, a3 = alpha[..., 0], alpha[..., 1], alpha[..., 2]
    u = p.u0
    e = (n * p.delta).sum(axis=-1)
    e = e + 0.5 * u * (n ** 2).sum(axis=-1)
    e = e + 2 * u * (n[..., 0] * n[..., 1] + n[..., 0] * n[..., 2]
                     + n[..., 1] * n[..., 2])
    e = e + 2 * u * (np.conj(a2) ** 2 * a1 * a3).real
    e = e + 2 * p.omega2 * a2.real
    return e


def conserved_quantities(p, alpha):
    """(energy, total photon number) of a mean-field state."""
    return energy(p, alpha), total_number(alpha)


def phase_combo(alpha):
    """Relative phase Phi_0 = 2 phi_2 - phi_1 - phi_3.

    Evaluated as the argument of alpha_2^2 conj(alpha_1) conj(alpha_3), which
    is invariant under the global phase rotation of the undriven system and is
    the only phase combination fixed on a limit cycle.
    """
    alpha = np.asarray(alpha, dtype=complex)
    prod = alpha[..., 1] ** 2 * np.conj(alpha[..., 0]) * np.conj(alpha[..., 2])
    return np.angle(prod)

"""Shared fixtures and independent oracles for the test suite.

The Gaussian-state machinery here is deliberately a second implementation:
random squeezed-thermal modes mixed by a Haar-random passive unitary, with
moments evaluated by direct Isserlis (pairing) enumeration.  It shares no
code with the closure engine it is used to check.
"""

import numpy as np
import pytest

from trikerr.params import SystemParams


@pytest.fixture
def ladder():
    """Canonical pumped-ladder parameter factory: delta_{1,3} = delta_2 -+ 1,
    gamma = 1, u0 = -1."""
    def make(delta2, omega2):
        return SystemParams.pumped_ladder(delta2, omega2)
    return make


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_state(rng, count=3):
    """Random complex amplitudes of modest size, shape (count,)."""
    return (rng.uniform(-1.5, 1.5, count) + 1j * rng.uniform(-1.5, 1.5, count))


# -- independent Gaussian-state oracle ---------------------------------------

class GaussianState:
    """Gaussian state of three modes given by displacement d and the ordered
    central covariances  nmat[m, n] = <da_m^dag da_n>,  mmat[m, n] = <da_m da_n>.
    """

    def __init__(self, d, nmat, mmat):
        self.d = np.asarray(d, dtype=complex)
        self.nmat = np.asarray(nmat, dtype=complex)
        self.mmat = np.asarray(mmat, dtype=complex)

    def mean(self, factor):
        m, dag = factor
        return np.conj(self.d[m]) if dag else self.d[m]

    def cov(self, f1, f2):
        """Ordered central covariance <df1 df2> for ladder factors (m, dag)."""
        m, dag1 = f1
        n, dag2 = f2
        if not dag1 and not dag2:
            return self.mmat[m, n]
        if dag1 and dag2:
            return np.conj(self.mmat[m, n])
        if dag1 and not dag2:
            return self.nmat[m, n]
        # <da_m da_n^dag> = <da_n^dag da_m> + delta_mn
        return self.nmat[n, m] + (1.0 if m == n else 0.0)

    def moment_vector(self):
        """The 15-moment vector (means, normal, anomalous) of this state,
        matching the closure engine's layout."""
        from trikerr.cumulant_algebra import MODE_PAIRS
        out = np.zeros(15, dtype=complex)
        out[0:3] = self.d
        for k, (m, n) in enumerate(MODE_PAIRS):
            out[3 + k] = self.nmat[m, n] + np.conj(self.d[m]) * self.d[n]
            out[9 + k] = self.mmat[m, n] + self.d[m] * self.d[n]
        return out


def gaussian_from_recipe(nbar, r, theta, v, d):
    """Gaussian state from explicit ingredients: squeezed thermal modes
    (thermal occupations nbar, squeezing magnitudes r, angles theta), mixed
    by the passive unitary v, then displaced by d."""
    nbar = np.asarray(nbar, dtype=float)
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)

    # per-mode central covariances of S(r e^{i theta}) rho_th S^dag
    ndiag = (nbar + 0.5) * np.cosh(2.0 * r) - 0.5
    mdiag = -np.exp(1j * theta) * np.sinh(r) * np.cosh(r) * (2.0 * nbar + 1.0)
    nmat = np.diag(ndiag).astype(complex)
    mmat = np.diag(mdiag)

    # passive mixing a' = v a:  N -> conj(v) N v^T,  M -> v M v^T
    nmat = np.conj(v) @ nmat @ v.T
    mmat = v @ mmat @ v.T
    return GaussianState(d, nmat, mmat)


def random_passive_unitary(rng):
    z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    v, rr = np.linalg.qr(z)
    return v * (np.diagonal(rr) / np.abs(np.diagonal(rr)))


def random_gaussian_recipe(rng, scale=1.0):
    """(nbar, r, theta, v, d) for gaussian_from_recipe; scale < 1 shrinks
    occupations and displacements (useful against truncated Fock spaces)."""
    nbar = rng.uniform(0.0, 0.7 * scale, 3)
    r = rng.uniform(0.0, 0.6 * scale, 3)
    theta = rng.uniform(0.0, 2.0 * np.pi, 3)
    v = random_passive_unitary(rng)
    d = scale * (rng.uniform(-1.0, 1.0, 3) + 1j * rng.uniform(-1.0, 1.0, 3))
    return nbar, r, theta, v, d


def random_gaussian_state(rng):
    return gaussian_from_recipe(*random_gaussian_recipe(rng))


def isserlis_moment(state, factors):
    """Non-central Gaussian moment of an ordered ladder-operator product.

    Recursion over the fate of the first factor: contribute its mean, or
    pair (ordered) with any later factor.  Enumerates every partition into
    singletons and pairs exactly once, which is the Wick/Isserlis theorem
    for states with Gaussian central moments.
    """
    if not factors:
        return 1.0
    first, rest = factors[0], factors[1:]
    total = state.mean(first) * isserlis_moment(state, rest)
    for j, other in enumerate(rest):
        total += (state.cov(first, other)
                  * isserlis_moment(state, rest[:j] + rest[j + 1:]))
    return total


# -- finite differences -------------------------------------------------------

def wirtinger_fd(f, z, h=1e-6):
    """df/d(conj z) of a real scalar function of one complex variable,
    0.5 (d/dx + i d/dy), by central differences."""
    dx = (f(z + h) - f(z - h)) / (2.0 * h)
    dy = (f(z + 1j * h) - f(z - 1j * h)) / (2.0 * h)
    return 0.5 * (dx + 1j * dy)


def complex_jacobian_fd(f, alpha, h=1e-6):
    """(R, S) with R = df/d(alpha), S = df/d(conj alpha) for f: C^3 -> C^3."""
    alpha = np.asarray(alpha, dtype=complex)
    n = alpha.size
    r = np.zeros((n, n), dtype=complex)
    s = np.zeros((n, n), dtype=complex)
    for j in range(n):
        e = np.zeros(n, dtype=complex)
        e[j] = 1.0
        dx = (f(alpha + h * e) - f(alpha - h * e)) / (2.0 * h)
        dy = (f(alpha + 1j * h * e) - f(alpha - 1j * h * e)) / (2.0 * h)
        r[:, j] = 0.5 * (dx - 1j * dy)
        s[:, j] = 0.5 * (dx + 1j * dy)
    return r, s

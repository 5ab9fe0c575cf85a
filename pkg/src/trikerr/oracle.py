"""Exact Lindblad dynamics on a truncated Fock space.

This is the reference solver the closed moment equations are judged
against.  The density matrix is propagated in dense form,

    d rho / dt = K rho + rho K^dag + sum_m 2 gamma_m a_m rho a_m^dag,
    K = -i H - sum_m gamma_m a_m^dag a_m,

or the steady state is obtained directly from the vectorized generator
with the trace condition imposed.  Truncation is controlled by a per-mode
cutoff; the total Hilbert-space dimension is capped because the dense
solver scales as dim^2 in memory.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .cumulant_algebra import MODE_PAIRS
from .integrate import integrate

DIM_CAP = 4096


class FockDimensionError(RuntimeError):
    """Requested truncated space exceeds the dense-solver dimension cap."""

    def __init__(self, dim):
        self.dim = dim
        super().__init__(f"Fock dimension {dim} exceeds cap {DIM_CAP}; "
                         "lower the cutoff or the mode count")


def _destroy(n_levels):
    return np.diag(np.sqrt(np.arange(1.0, n_levels)), k=1).astype(complex)


@dataclass
class FockSpace:
    """Truncated product space; n_modes in {1, 3}.

    The single-mode space models the pumped mode alone (its parameters are
    the mode-2 entries of SystemParams, and the pair-conversion and
    cross-Kerr terms drop out).
    """

    n_modes: int
    n_max: int

    def __post_init__(self):
        if self.n_modes not in (1, 3):
            raise ValueError("n_modes must be 1 or 3")
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        levels = self.n_max + 1
        dim = levels ** self.n_modes
        if dim > DIM_CAP:
            raise FockDimensionError(dim)
        self.dim = dim
        a = _destroy(levels)
        eye = np.eye(levels, dtype=complex)
        if self.n_modes == 1:
            self.a = [a]
        else:
            self.a = [reduce(np.kron, ops) for ops in
                      ([a, eye, eye], [eye, a, eye], [eye, eye, a])]
        self.adag = [op.conj().T for op in self.a]
        self.n_op = [ad @ op for ad, op in zip(self.adag, self.a)]

    def vacuum(self):
        rho = np.zeros((self.dim, self.dim), dtype=complex)
        rho[0, 0] = 1.0
        return rho

    def coherent(self, alpha):
        """Product coherent state density matrix (alpha scalar or (n_modes,))."""
        alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
        levels = self.n_max + 1
        n = np.arange(levels)
        from scipy.special import gammaln
        kets = []
        for al in alpha:
            with np.errstate(divide="ignore", invalid="ignore"):
                log_amp = n * np.log(al) - 0.5 * gammaln(n + 1.0) if al != 0 \
                    else np.where(n == 0, 0.0, -np.inf)
            ket = np.exp(-0.5 * abs(al) ** 2) * np.where(
                np.isneginf(np.real(log_amp)), 0.0, np.exp(log_amp))
            kets.append(ket.astype(complex))
        psi = reduce(np.kron, kets)
        psi = psi / np.linalg.norm(psi)
        return np.outer(psi, psi.conj())


def hamiltonian(p, space):
    """Dense Hamiltonian on the truncated space."""
    if space.n_modes == 1:
        a, = space.a
        ad, = space.adag
        nop, = space.n_op
        return (p.delta[1] * nop + 0.5 * p.u0 * ad @ ad @ a @ a
                + p.omega2 * (ad + a))
    a1, a2, a3 = space.a
    d1, d2, d3 = space.adag
    n1, n2, n3 = space.n_op
    h = sum(p.delta[m] * space.n_op[m] for m in range(3))
    h = h + 0.5 * p.u0 * sum(dm @ dm @ am @ am
                             for dm, am in zip(space.adag, space.a))
    h = h + 2.0 * p.u0 * (n1 @ n2 + n1 @ n3 + n2 @ n3)
    pair = p.u0 * (d2 @ d2 @ a1 @ a3)
    h = h + pair + pair.conj().T
    h = h + p.omega2 * (d2 + a2)
    return h


def _gammas(p, space):
    return [p.gamma[1]] if space.n_modes == 1 else list(p.gamma)


def drift_matrix(p, space):
    """K = -i H - sum_m gamma_m n_m (the non-Hermitian drift)."""
    k = -1j * hamiltonian(p, space)
    for g, nop in zip(_gammas(p, space), space.n_op):
        k = k - g * nop
    return k


def lindblad_rhs(p, space, rho, k=None):
    """d rho / dt; rho may be (dim, dim) or batched (..., dim, dim), and a
    batched drift k (e.g. one per drive strength) is broadcast likewise."""
    if k is None:
        k = drift_matrix(p, space)
    out = k @ rho + rho @ np.conj(np.swapaxes(k, -1, -2))
    for g, a, ad in zip(_gammas(p, space), space.a, space.adag):
        out = out + 2.0 * g * (a @ rho @ ad)
    return out


def evolve(p, space, rho0, t_end, dt=2e-3, store_every=None):
    """RK4 trajectory of the density matrix (trace is conserved exactly by
    the generator; RK4 preserves it to machine accuracy)."""
    if store_every is None:
        store_every = max(1, int(round(0.1 / dt)))
    k = drift_matrix(p, space)

    def rhs(rho):
        return lindblad_rhs(p, space, rho, k=k)

    return integrate(rhs, rho0, t_end, dt, store_every=store_every)


def superoperator_matrix(p, space, sparse=True):
    """Vectorized generator L with row-major (C-order) vec convention:
    vec(A X B) = (A kron B^T) vec(X), so

        L = K kron I + I kron conj(K) + sum_m 2 gamma_m a_m kron conj(a_m).
    """
    k = sp.csr_matrix(drift_matrix(p, space))
    eye = sp.identity(space.dim, dtype=complex, format="csr")
    lop = sp.kron(k, eye) + sp.kron(eye, k.conj())
    for g, a in zip(_gammas(p, space), space.a):
        asp = sp.csr_matrix(a)
        lop = lop + 2.0 * g * sp.kron(asp, asp.conj())
    lop = lop.tocsr()
    return lop if sparse else lop.toarray()


def steady_state(p, space):
    """Unique steady state from L vec(rho) = 0 with the trace pinned.

    The zero row of the singular system is replaced by the trace functional
    tr(rho) = 1, giving a regular sparse solve.
    """
    lop = superoperator_matrix(p, space).tolil()
    dim = space.dim
    trace_row = np.zeros(dim * dim, dtype=complex)
    trace_row[::dim + 1] = 1.0
    lop[0] = trace_row
    rhs = np.zeros(dim * dim, dtype=complex)
    rhs[0] = 1.0
    vec = spla.spsolve(lop.tocsr(), rhs)
    rho = vec.reshape(dim, dim)
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def expectation(op, rho):
    """tr(op rho) for rho of shape (..., dim, dim)."""
    return np.einsum("ij,...ji->...", op, rho)


def moment_vector(space, rho):
    """Moments in the layout of the cumulant state vector.

    Three modes: the full 15-vector (means, <am^dag an> m<=n, <am an> m<=n).
    One mode: (<a>, <a^dag a>, <a^2>).
    """
    if space.n_modes == 1:
        a, = space.a
        return np.stack([expectation(a, rho),
                         expectation(space.n_op[0], rho),
                         expectation(a @ a, rho)])
    parts = [expectation(space.a[m], rho) for m in range(3)]
    parts += [expectation(space.adag[m] @ space.a[n], rho)
              for m, n in MODE_PAIRS]
    parts += [expectation(space.a[m] @ space.a[n], rho)
              for m, n in MODE_PAIRS]
    return np.stack(parts)


def number_distribution(space, rho, mode=0):
    """Marginal photon-number distribution of one mode (for cutoff checks:
    the tail weight near n_max measures truncation error)."""
    diag = np.real(np.diagonal(rho))
    levels = space.n_max + 1
    if space.n_modes == 1:
        return diag
    shape = (levels,) * 3
    return diag.reshape(shape).sum(axis=tuple(i for i in range(3) if i != mode))


def oracle_sweep(p, omega2_values, space):
    """Steady-state moment vectors across a drive sweep via direct solves.

    Returns (moments, rhos) with moments shaped like the cumulant sweep
    output ((3, B) or (15, B)).
    """
    moments = []
    rhos = []
    for w2 in np.asarray(omega2_values, dtype=float):
        q = p.with_omega2(float(w2))
        rho = steady_state(q, space)
        rhos.append(rho)
        moments.append(moment_vector(space, rho))
    return np.stack(moments, axis=-1), np.stack(rhos)

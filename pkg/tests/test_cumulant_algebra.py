"""Mechanized closure engine, checked against matrix mechanics.

Three independent oracles:
  * dense Fock-space operators: operator products and adjoint equations of
    motion are compared with literal matrix arithmetic, tr(O L[rho]) vs the
    symbolically derived polynomial evaluated with exact expectations;
  * the Isserlis (Wick) pairing enumeration from conftest, itself validated
    here against an exactly constructed Gaussian density matrix;
  * a dict-path re-evaluation of the flattened term table.
"""

from itertools import combinations_with_replacement

import numpy as np
import pytest
from scipy.linalg import expm, logm

from conftest import (GaussianState, gaussian_from_recipe, isserlis_moment,
                      random_gaussian_recipe, random_gaussian_state)
from trikerr.cumulant_algebra import (MODE_PAIRS, MOMENTS, N_MOMENTS,
                                      PARAM_KEYS, TermTable, _coeff_mul,
                                      _factor_list, adjoint_derivative,
                                      commutator, conj_monomial,
                                      expectation_terms, hamiltonian_poly,
                                      poly_add, poly_mul, poly_scale)
from trikerr.oracle import FockSpace, lindblad_rhs
from trikerr.params import SystemParams


def all_monomials(degree):
    """Every normal-ordered monomial of the given total degree."""
    out = []
    for slots in combinations_with_replacement(range(6), degree):
        key = [0] * 6
        for s in slots:
            key[s] += 1
        out.append(tuple(key))
    return out


def dense_monomial(space, mono, cache={}):
    key = (space.n_max, mono)
    if key not in cache:
        op = np.eye(space.dim, dtype=complex)
        for m in range(3):
            for _ in range(mono[2 * m]):
                op = op @ space.adag[m]
            for _ in range(mono[2 * m + 1]):
                op = op @ space.a[m]
        cache[key] = op
    return cache[key]


def poly_expectation_exact(poly, space, rho, pvals):
    """Evaluate an operator polynomial with exact truncated-space
    expectations (no closure); pvals maps param keys to numbers."""
    total = 0.0
    for mono, coeff in poly.items():
        weight = sum(pvals[k] * c for k, c in coeff.items())
        total += weight * np.trace(dense_monomial(space, mono) @ rho)
    return total


def low_occupation_rho(space, rng, n_cap=2, n_kets=3):
    """Random mixed state supported on per-mode occupations <= n_cap, so
    that degree-4 operator strings act without truncation clipping."""
    levels = space.n_max + 1
    occ = np.stack(np.unravel_index(np.arange(space.dim), (levels,) * 3))
    mask = (occ <= n_cap).all(axis=0)
    rho = np.zeros((space.dim, space.dim), dtype=complex)
    for _ in range(n_kets):
        psi = np.zeros(space.dim, dtype=complex)
        psi[mask] = rng.normal(size=mask.sum()) + 1j * rng.normal(size=mask.sum())
        psi /= np.linalg.norm(psi)
        rho += np.outer(psi, psi.conj()) / n_kets
    return rho


@pytest.fixture(scope="module")
def space6():
    return FockSpace(n_modes=3, n_max=6)


@pytest.fixture
def p_generic():
    return SystemParams(delta=[0.7, -1.3, 2.1], gamma=[0.4, 1.1, 0.9],
                        u0=-0.8, omega2=1.7)


def param_dict(p):
    return {"one": 1.0, "d1": p.delta[0], "d2": p.delta[1], "d3": p.delta[2],
            "g1": p.gamma[0], "g2": p.gamma[1], "g3": p.gamma[2],
            "u0": p.u0, "w2": p.omega2}


class TestPolynomialAlgebra:
    def test_product_matches_matrices(self, space6, rng):
        rho = low_occupation_rho(space6, rng)
        monos = [(1, 0, 0, 1, 0, 0), (0, 1, 2, 0, 0, 1), (1, 1, 0, 0, 1, 0),
                 (0, 0, 1, 1, 0, 0), (0, 2, 0, 0, 1, 0)]
        for ma in monos:
            for mb in monos:
                prod = poly_mul({ma: {"one": 1.0}}, {mb: {"one": 1.0}})
                lhs = poly_expectation_exact(prod, space6, rho, {"one": 1.0})
                rhs = np.trace(dense_monomial(space6, ma)
                               @ dense_monomial(space6, mb) @ rho)
                assert lhs == pytest.approx(rhs, abs=1e-11), f"{ma} * {mb}"

    def test_commutator_canonical(self):
        # [a, adag] = 1 for mode 2
        a = {(0, 0, 0, 1, 0, 0): {"one": 1.0}}
        adag = {(0, 0, 1, 0, 0, 0): {"one": 1.0}}
        c = commutator(a, adag)
        assert c == {(0, 0, 0, 0, 0, 0): {"one": 1.0}}

    def test_poly_add_and_scale(self):
        out = poly_add({(0, 1, 0, 0, 0, 0): {"d1": 2.0}},
                       {(0, 1, 0, 0, 0, 0): {"d1": -2.0, "u0": 1.0}})
        assert out == {(0, 1, 0, 0, 0, 0): {"u0": 1.0}}
        scaled = poly_scale({(0, 1, 0, 0, 0, 0): {"d1": 2.0}}, 0.5)
        assert scaled == {(0, 1, 0, 0, 0, 0): {"d1": 1.0}}

    def test_param_products_rejected(self):
        with pytest.raises(ValueError):
            _coeff_mul({"d1": 1.0}, {"u0": 1.0})

    def test_hamiltonian_is_hermitian(self):
        h = hamiltonian_poly()
        for mono, coeff in h.items():
            conj_coeff = h[conj_monomial(mono)]
            assert coeff.keys() == conj_coeff.keys()
            for k in coeff:
                # every parameter is real, so hermiticity is coefficient equality
                assert coeff[k] == pytest.approx(conj_coeff[k])

    def test_conj_monomial_involution(self):
        for mono in all_monomials(3):
            assert conj_monomial(conj_monomial(mono)) == mono


class TestAdjointDerivative:
    def test_matches_lindblad_trace(self, space6, p_generic, rng):
        # d<O>/dt two ways: tr(O L[rho]) by matrix mechanics vs the symbolic
        # polynomial evaluated with exact expectations on the same state
        pvals = param_dict(p_generic)
        for _ in range(3):
            rho = low_occupation_rho(space6, rng)
            drho = lindblad_rhs(p_generic, space6, rho)
            for obs in MOMENTS:
                lhs = np.trace(dense_monomial(space6, obs) @ drho)
                rhs = poly_expectation_exact(adjoint_derivative(obs), space6,
                                             rho, pvals)
                assert lhs == pytest.approx(rhs, abs=1e-10), f"observable {obs}"

    def test_degree_stays_closed(self):
        # a quartic generator on quadratic observables produces nothing
        # beyond degree 4, so the pair closure suffices
        for obs in MOMENTS:
            for mono in adjoint_derivative(obs):
                assert sum(mono) <= 4


class TestWickClosure:
    def test_isserlis_oracle_against_fock_matrices(self):
        # validate the test oracle itself: build the same Gaussian state as a
        # density matrix (squeeze, mix, displace as explicit matrix
        # exponentials) and compare moments
        rng = np.random.default_rng(99)
        nbar, r, theta, v, d = random_gaussian_recipe(rng, scale=0.3)
        state = gaussian_from_recipe(nbar, r, theta, v, d)

        # cutoff 10 leaves displacement tails ~1e-7; convention mistakes
        # (orderings, conjugations, transform direction) would show at O(0.1)
        space = FockSpace(n_modes=3, n_max=10)
        levels = space.n_max + 1
        a1 = np.diag(np.sqrt(np.arange(1.0, levels)), k=1).astype(complex)
        ad1 = a1.conj().T

        def kron3(ops):
            out = ops[0]
            for op in ops[1:]:
                out = np.kron(out, op)
            return out

        eye1 = np.eye(levels, dtype=complex)
        rho_parts = []
        for m in range(3):
            x = nbar[m] / (nbar[m] + 1.0)
            pn = (1 - x) * x ** np.arange(levels)
            th = np.diag(pn / pn.sum()).astype(complex)
            xi = r[m] * np.exp(1j * theta[m])
            sq = expm(0.5 * (np.conj(xi) * a1 @ a1 - xi * ad1 @ ad1))
            rho_parts.append(sq @ th @ sq.conj().T)
        rho = kron3(rho_parts)

        kmat = 1j * logm(v)                       # v = expm(-i k), k hermitian
        assert np.abs(kmat - kmat.conj().T).max() < 1e-10
        gen = sum(kmat[i, j] * space.adag[i] @ space.a[j]
                  for i in range(3) for j in range(3))
        mixer = expm(-1j * gen)
        disp = expm(sum(d[m] * space.adag[m] - np.conj(d[m]) * space.a[m]
                        for m in range(3)))
        rho = disp @ mixer @ rho @ mixer.conj().T @ disp.conj().T

        # moment vector layout and values
        from trikerr.oracle import moment_vector
        ref = moment_vector(space, rho)
        assert np.abs(state.moment_vector() - ref).max() < 1e-5

        # a few higher moments through the pairing enumeration
        check = [(0, 1, 1, 1, 0, 0), (0, 0, 2, 0, 0, 2), (1, 1, 1, 1, 0, 0),
                 (0, 0, 0, 2, 1, 1), (2, 0, 0, 1, 0, 1)]
        for mono in check:
            exact = np.trace(dense_monomial(space, mono) @ rho)
            wick = isserlis_moment(state, _factor_list(mono))
            assert abs(wick - exact) < 1e-5, f"monomial {mono}"

    def test_closure_is_exact_on_gaussian_states(self):
        # the pair closures must reproduce the Isserlis expansion identically
        # on Gaussian states, for every degree-3 and degree-4 monomial
        rng = np.random.default_rng(2024)
        monos = all_monomials(3) + all_monomials(4)
        assert len(monos) == 56 + 126
        for _ in range(20):
            state = random_gaussian_state(rng)
            z = np.concatenate([[1.0], state.moment_vector(),
                                np.conj(state.moment_vector())])
            for mono in monos:
                closed = sum(c * np.prod(z[list(idx)])
                             for c, idx in expectation_terms(mono))
                exact = isserlis_moment(state, _factor_list(mono))
                assert abs(closed - exact) <= 1e-12 * max(1.0, abs(exact)), (
                    f"monomial {mono}: closure {closed} vs Wick {exact}")

    def test_low_degrees_and_rejection(self):
        assert expectation_terms((0, 0, 0, 0, 0, 0)) == [(1.0, ())]
        mean2 = expectation_terms((0, 0, 0, 1, 0, 0))
        assert len(mean2) == 1 and mean2[0][0] == 1.0
        with pytest.raises(ValueError, match="degree-5"):
            expectation_terms((2, 1, 1, 1, 0, 0))


class TestTermTable:
    def test_matches_direct_evaluation(self, p_generic, rng):
        # the flattened arrays must reproduce the dict-path computation
        table = TermTable()
        mvec = (rng.normal(size=N_MOMENTS) + 1j * rng.normal(size=N_MOMENTS))
        pvals_arr = table.param_values(p_generic)
        out = table.rhs(mvec, pvals_arr)

        z = np.concatenate([[1.0], mvec, np.conj(mvec)])
        pd = param_dict(p_generic)
        for t, obs in enumerate(MOMENTS):
            val = 0.0
            for mono, coeff in adjoint_derivative(obs).items():
                weight = sum(pd[k] * c for k, c in coeff.items())
                val += weight * sum(c * np.prod(z[list(idx)])
                                    for c, idx in expectation_terms(mono))
            assert abs(out[t] - val) < 1e-11 * max(1.0, abs(val)), f"row {t}"

    def test_batched_rhs_consistency(self, p_generic, rng):
        table = TermTable()
        batch = (rng.normal(size=(N_MOMENTS, 4))
                 + 1j * rng.normal(size=(N_MOMENTS, 4)))
        pv = table.param_values(p_generic)
        out = table.rhs(batch, np.repeat(pv[:, None], 4, axis=1))
        for b in range(4):
            assert np.allclose(out[:, b], table.rhs(batch[:, b], pv), atol=1e-13)

    def test_param_values_order(self, p_generic):
        pv = TermTable().param_values(p_generic)
        assert pv[0] == 1.0
        assert np.allclose(pv[1:4], p_generic.delta)
        assert np.allclose(pv[4:7], p_generic.gamma)
        assert pv[7] == p_generic.u0 and pv[8] == p_generic.omega2
        assert len(PARAM_KEYS) == 9

"""Closed-system landscape: extremum locations against a dense scan, the
min/max/boundary classification, excitation frequencies against the Hessian,
and symplectic norms against an explicit eigenvector calculation."""

import numpy as np
import pytest

from trikerr.closed import (boundary_pump, eigenfrequencies, landscape_energy,
                            landscape_extrema, n_real_roots, symplectic_norm)
from trikerr.params import SystemParams


def p_closed(delta2, omega2, u0=-1.0):
    return SystemParams(delta=[delta2 - 1, delta2, delta2 + 1],
                        gamma=[0, 0, 0], u0=u0, omega2=omega2)


def scan_extrema(p, lo=-6.0, hi=6.0, n=200001):
    """Brute-force extrema of the landscape restricted to the real axis:
    sign changes of a centered-difference derivative, bisected to 1e-12."""
    x = np.linspace(lo, hi, n)
    e = landscape_energy(p, x + 0j)
    de = np.gradient(e, x)
    roots = []
    for i in np.nonzero(np.sign(de[:-1]) * np.sign(de[1:]) < 0)[0]:
        a, b = x[i], x[i + 1]
        fa = p.u0 * a ** 3 + p.delta[1] * a + p.omega2
        for _ in range(60):
            m = 0.5 * (a + b)
            fm = p.u0 * m ** 3 + p.delta[1] * m + p.omega2
            if fa * fm <= 0:
                b = m
            else:
                a, fa = m, fm
        roots.append(0.5 * (a + b))
    return sorted(roots)


class TestExtrema:
    @pytest.mark.parametrize("delta2,omega2,expect_n", [
        (5.0, 3.0, 3),    # below boundary: three extrema
        (5.0, 4.5, 1),    # above boundary: one
        (-5.0, 3.0, 1),   # negative detuning: always one
        (0.0, 3.0, 1),
        (3.0, 1.0, 3),
    ])
    def test_count_and_location_vs_scan(self, delta2, omega2, expect_n):
        p = p_closed(delta2, omega2)
        ext = landscape_extrema(p)
        assert len(ext) == expect_n
        scanned = scan_extrema(p)
        assert len(scanned) == expect_n
        for found, ref in zip([e.re_alpha2 for e in ext], scanned):
            assert found == pytest.approx(ref, abs=1e-9)

    def test_extrema_kill_the_gradient(self, rng):
        for _ in range(20):
            p = p_closed(rng.uniform(-5, 5), rng.uniform(0, 6),
                         u0=-rng.uniform(0.3, 2.0))
            for e in landscape_extrema(p):
                r = e.re_alpha2
                h = 1e-6
                de = (landscape_energy(p, r + h) - landscape_energy(p, r - h)) / (2 * h)
                assert abs(de) < 1e-6, f"residual gradient {de:.2e} at {r}"
                assert e.energy == pytest.approx(float(landscape_energy(p, r + 0j)))

    def test_kind_against_second_derivative_scan(self):
        p = p_closed(5.0, 3.0)
        ext = landscape_extrema(p)
        kinds = [e.kind for e in ext]
        # attractive u0 < 0: outer maxima cannot appear; the pattern on the
        # real axis is min / max flanked by the unbounded |alpha2| -> inf fall-off
        assert kinds.count("minimum") >= 1
        for e in ext:
            h = 1e-4
            d2e = (landscape_energy(p, e.re_alpha2 + h)
                   - 2 * landscape_energy(p, e.re_alpha2 + 0j)
                   + landscape_energy(p, e.re_alpha2 - h)) / h ** 2
            if e.kind == "minimum":
                assert d2e > 0
            # real-axis curvature alone cannot separate max from saddle;
            # the full 2d Hessian test below does

    def test_maximum_is_2d_maximum(self):
        # at (5, 3) the middle root is a genuine landscape maximum: negative
        # curvature in both the real and imaginary directions
        p = p_closed(5.0, 3.0)
        maxima = [e for e in landscape_extrema(p) if e.kind == "maximum"]
        assert len(maxima) == 1
        r = maxima[0].re_alpha2
        h = 1e-4
        e0 = landscape_energy(p, r + 0j)
        d2_re = (landscape_energy(p, r + h) - 2 * e0 + landscape_energy(p, r - h)) / h ** 2
        d2_im = (landscape_energy(p, r + 1j * h) - 2 * e0
                 + landscape_energy(p, r - 1j * h)) / h ** 2
        assert d2_re < 0 and d2_im < 0


class TestBoundary:
    def test_exact_value_at_delta2_3(self):
        assert boundary_pump(3.0, -1.0) == pytest.approx(2.0, abs=1e-14)

    def test_root_count_flips_at_boundary(self):
        for delta2 in np.linspace(0.25, 5.0, 20):
            wc = boundary_pump(delta2, -1.0)
            assert n_real_roots(p_closed(delta2, wc * (1 - 1e-6))) == 3
            assert n_real_roots(p_closed(delta2, wc * (1 + 1e-6))) == 1

    def test_double_root_on_boundary(self):
        p = p_closed(3.0, 2.0)
        ext = landscape_extrema(p)
        assert len(ext) == 3
        rs = [e.re_alpha2 for e in ext]
        # the doubled root is the inflection r = -sqrt(-delta2/(3 u0)) = -1
        assert rs[0] == pytest.approx(-1.0, abs=1e-9)
        assert rs[1] == pytest.approx(-1.0, abs=1e-9)
        assert rs[2] == pytest.approx(2.0, abs=1e-9)

    def test_triple_root_at_origin(self):
        ext = landscape_extrema(p_closed(0.0, 0.0))
        assert [e.re_alpha2 for e in ext] == [0.0, 0.0, 0.0]

    def test_rejects_unsupported_parameters(self):
        with pytest.raises(ValueError):
            boundary_pump(3.0, 1.0)   # repulsive
        with pytest.raises(ValueError):
            boundary_pump(-1.0, -1.0)
        with pytest.raises(ValueError):
            landscape_extrema(SystemParams(delta=[0, 1, 2], gamma=[0, 0, 0],
                                           u0=0.0, omega2=1.0))


class TestFrequenciesAndNorms:
    def test_frequencies_square_to_hessian_product(self, rng):
        # w^2 = (delta2 + u0 n2)(delta2 + 3 u0 n2) = (h_im/2)(h_re/2) with
        # h_re, h_im the diagonal Hessian entries at a real extremum
        for _ in range(10):
            p = p_closed(rng.uniform(-5, 5), rng.uniform(0, 6))
            for e in landscape_extrema(p):
                n2 = e.re_alpha2 ** 2
                w_plus, w_minus = eigenfrequencies(p, n2)
                assert w_minus == pytest.approx(-w_plus)
                h_re = 2.0 * (p.delta[1] + 3 * p.u0 * n2)
                h_im = 2.0 * (p.delta[1] + p.u0 * n2)
                assert w_plus ** 2 == pytest.approx(0.25 * h_re * h_im, abs=1e-10)

    def test_unphysical_means_imaginary_frequency(self, rng):
        for _ in range(20):
            p = p_closed(rng.uniform(-5, 5), rng.uniform(0, 6))
            for e in landscape_extrema(p):
                if e.kind == "unphysical":
                    assert abs(e.eigenfrequencies[0].imag) > 1e-12
                else:
                    assert abs(e.eigenfrequencies[0].imag) < 1e-12

    def test_norm_against_bogoliubov_eigenvector(self, rng):
        # independent route: the 2x2 single-mode fluctuation matrix
        #   [[delta2 + 2 u0 n2, u0 a^2], [-conj(u0 a^2), -(delta2 + 2 u0 n2)]]
        # has eigenvector (u, v) at eigenvalue w; ds^2 must equal |u/v|^2 - 1
        for _ in range(20):
            p = p_closed(rng.uniform(-5, 5), rng.uniform(0.1, 6))
            for e in landscape_extrema(p):
                if e.kind == "unphysical":
                    continue
                a = e.re_alpha2
                n2 = a ** 2
                diag = p.delta[1] + 2 * p.u0 * n2
                m2 = np.array([[diag, p.u0 * a ** 2],
                               [-np.conj(p.u0 * a ** 2), -diag]])
                for w in e.eigenfrequencies:
                    lam, vec = np.linalg.eig(m2)
                    col = int(np.argmin(np.abs(lam - w)))
                    u_c, v_c = vec[:, col]
                    if abs(v_c) < 1e-12:
                        continue
                    ref = abs(u_c / v_c) ** 2 - 1.0
                    assert symplectic_norm(p, a, w) == pytest.approx(ref, abs=1e-8)

    def test_min_max_norm_signature(self):
        # region II point: the minimum carries ds^2 > 0 on the positive
        # branch, the maximum ds^2 < 0 (excited-state inversion)
        ext = landscape_extrema(p_closed(5.0, 3.0))
        by_kind = {e.kind: e for e in ext}
        w_plus_min = max(by_kind["minimum"].eigenfrequencies, key=lambda w: w.real)
        w_plus_max = max(by_kind["maximum"].eigenfrequencies, key=lambda w: w.real)
        assert symplectic_norm(p_closed(5.0, 3.0),
                               by_kind["minimum"].re_alpha2, w_plus_min) > 0
        assert symplectic_norm(p_closed(5.0, 3.0),
                               by_kind["maximum"].re_alpha2, w_plus_max) < 0

    def test_empty_mode_norm_is_resonant(self):
        # empty extremum (omega2 = 0, root r = 0): the positive-frequency
        # eigenvector is a bare particle excitation, where the fixed-hole
        # parameterization degenerates (reported as +inf); the negative
        # branch is a pure hole with ds^2 = -1 exactly
        ext = landscape_extrema(p_closed(4.0, 0.0))
        root0 = [e for e in ext if abs(e.re_alpha2) < 1e-12][0]
        assert np.isinf(root0.norms[0])
        assert root0.norms[1] == pytest.approx(-1.0)
        with pytest.raises(ZeroDivisionError):
            symplectic_norm(p_closed(4.0, 0.0), 0.0, 4.0)

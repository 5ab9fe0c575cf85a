"""Closed-system (lossless, undriven side modes) analysis of the pumped mode.

With the side modes empty, the energy functional restricted to alpha_2 is

    H3(alpha_2) = delta_2 |alpha_2|^2 + (u0/2) |alpha_2|^4
                  + omega_2 conj(alpha_2) + omega_2 alpha_2 .

Its extrema sit on the real axis, Im(alpha_2) = 0, at the real roots of the
cubic  u0 r^3 + delta_2 r + omega_2 = 0.  Small oscillations around a root
with population n_2 = r^2 have frequencies

    w_pm = +- sqrt((n_2 u0 + delta_2)(3 n_2 u0 + delta_2))

and the eigenvector (u0 alpha_2^2/(w - delta_2 - 2 u0 n_2), 1) carries the
symplectic norm

    ds^2(w) = |u0 alpha_2^2 / (w - delta_2 - 2 u0 n_2)|^2 - 1 ,

whose sign distinguishes particle-like (ds^2 > 0) from hole-like (ds^2 < 0)
excitations.  A landscape minimum behaves as a ground state (positive norm on
the positive-frequency branch); a maximum is an inverted, excited-state-like
configuration with the norms swapped.
"""

from dataclasses import dataclass

import numpy as np

_BOUNDARY_TOL = 1e-12


@dataclass
class LandscapeExtremum:
    re_alpha2: float
    energy: float
    kind: str                # 'minimum' | 'maximum' | 'unphysical'
    eigenfrequencies: tuple  # (w_plus, w_minus), complex
    norms: tuple             # ds^2 at (w_plus, w_minus)


def landscape_energy(p, alpha2):
    """Energy functional H3 at complex alpha2."""
    alpha2 = np.asarray(alpha2, dtype=complex)
    n2 = alpha2.real ** 2 + alpha2.imag ** 2
    return p.delta[1] * n2 + 0.5 * p.u0 * n2 ** 2 + 2.0 * p.omega2 * alpha2.real


def eigenfrequencies(p, n2):
    """Excitation frequencies (w_plus, w_minus) around a uniform state with
    population n2; purely imaginary when the two factors have opposite sign."""
    prod = (n2 * p.u0 + p.delta[1]) * (3.0 * n2 * p.u0 + p.delta[1])
    w = np.sqrt(complex(prod))
    return w, -w


def symplectic_norm(p, alpha2, omega):
    """Symplectic norm ds^2 of the excitation eigenvector at frequency omega
    around the uniform state alpha2."""
    alpha2 = complex(alpha2)
    n2 = abs(alpha2) ** 2
    denom = omega - p.delta[1] - 2.0 * p.u0 * n2
    if abs(denom) < 1e-14:
        raise ZeroDivisionError("resonant denominator in symplectic norm: "
                                "omega = delta_2 + 2 u0 n_2")
    return abs(p.u0 * alpha2 ** 2 / denom) ** 2 - 1.0


def boundary_pump(delta2, u0):
    """Critical drive separating the one- and three-extremum regions:
    omega_2 = (2 / (3 sqrt 3)) sqrt(delta_2^3 / |u0|).  Requires u0 < 0 and
    delta2 >= 0 (for attractive interaction the fold exists at positive
    detuning only)."""
    if u0 >= 0:
        raise ValueError("boundary defined for attractive interaction u0 < 0")
    if delta2 < 0:
        raise ValueError("boundary defined for delta2 >= 0")
    return (2.0 / (3.0 * np.sqrt(3.0))) * np.sqrt(delta2 ** 3 / abs(u0))


def _cubic_real_roots(u0, delta2, omega2):
    """Real roots of u0 r^3 + delta2 r + omega2 = 0, ascending, with one
    Newton polish each.  The discriminant decides the count; a doubled root
    (|disc| below tolerance) is returned twice."""
    p = delta2 / u0
    q = omega2 / u0
    disc = -4.0 * p ** 3 - 27.0 * q ** 2

    if disc > _BOUNDARY_TOL:
        # three distinct real roots (requires p < 0): trigonometric form
        m = 2.0 * np.sqrt(-p / 3.0)
        acos_arg = np.clip(3.0 * q / (p * m), -1.0, 1.0)
        theta = np.arccos(acos_arg) / 3.0
        roots = [m * np.cos(theta - 2.0 * np.pi * k / 3.0) for k in range(3)]
    elif disc < -_BOUNDARY_TOL:
        # one real root: Cardano with cube roots of real quantities
        half_q = q / 2.0
        s = np.sqrt(half_q ** 2 + (p / 3.0) ** 3)
        roots = [np.cbrt(-half_q + s) + np.cbrt(-half_q - s)]
    else:
        # boundary: a simple root and a doubled one (or triple at p=q=0)
        if abs(q) < _BOUNDARY_TOL and abs(p) < _BOUNDARY_TOL:
            roots = [0.0, 0.0, 0.0]
        else:
            r_double = -3.0 * q / (2.0 * p)
            roots = [3.0 * q / p, r_double, r_double]

    polished = []
    for r in roots:
        fval = u0 * r ** 3 + delta2 * r + omega2
        fprime = 3.0 * u0 * r ** 2 + delta2
        if abs(fprime) > 1e-12:
            r = r - fval / fprime
        polished.append(r)
    return sorted(polished)


def landscape_extrema(p):
    """All extrema of the landscape, sorted by Re(alpha_2) ascending.

    kind is 'minimum' or 'maximum' from the Hessian signature; a mixed
    signature is a saddle of the landscape, which here always comes with
    purely imaginary excitation frequencies and is labeled 'unphysical'.
    """
    if p.u0 == 0:
        raise ValueError("cubic degenerates at u0 = 0; the linear extremum "
                         "is re_alpha2 = -omega2/delta2")
    delta2 = p.delta[1]
    out = []
    for r in _cubic_real_roots(p.u0, delta2, p.omega2):
        n2 = r * r
        w_plus, w_minus = eigenfrequencies(p, n2)
        # Hessian eigenvalues of H3 in the (Re, Im) plane at Im(alpha2)=0
        h_re = 2.0 * (delta2 + 3.0 * p.u0 * n2)
        h_im = 2.0 * (delta2 + p.u0 * n2)
        if abs(w_plus.imag) > 1e-12:
            kind = "unphysical"
        elif h_re > 0 and h_im > 0:
            kind = "minimum"
        elif h_re < 0 and h_im < 0:
            kind = "maximum"
        else:
            kind = "unphysical"
        norms = []
        for w in (w_plus, w_minus):
            try:
                norms.append(symplectic_norm(p, r, w))
            except ZeroDivisionError:
                # empty mode hit exactly on the bare resonance: the eigenvector
                # is a pure particle excitation, outside the fixed-last-component
                # parameterization; report +inf (sign still meaningful)
                norms.append(float("inf"))
        norms = tuple(norms)
        out.append(LandscapeExtremum(re_alpha2=r,
                                     energy=float(landscape_energy(p, r)),
                                     kind=kind,
                                     eigenfrequencies=(w_plus, w_minus),
                                     norms=norms))
    return out


def n_real_roots(p):
    """Root count of the extremum cubic, 1 or 3 (boundary counts as 3)."""
    return len(landscape_extrema(p))

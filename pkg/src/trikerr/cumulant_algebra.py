"""Operator algebra behind the second-cumulant closure.

Normal-ordered monomials over the three modes are encoded as integer
6-tuples (p1, q1, p2, q2, p3, q3) standing for

    a1^dag^p1 a1^q1  a2^dag^p2 a2^q2  a3^dag^p3 a3^q3,

which is already the canonical form (modes commute, daggers left within a
mode).  An operator polynomial maps monomials to coefficient dicts
{param_key: complex}; keeping the system parameters symbolic lets one term
table serve a whole parameter sweep.  Every generator is linear in each
parameter, so coefficient dicts never need parameter products.

The state is the 15-moment vector (3 means, 6 normal pair moments
<am^dag an> with m <= n, 6 anomalous <am an> with m <= n); evaluation uses
the length-31 vector z = [1, moments, conj(moments)].  Monomials of degree
3 and 4 are closed by discarding third and fourth cumulants:

    <ABC>  = <AB><C> + <AC><B> + <BC><A> - 2<A><B><C>
    <ABCD> = <AB><CD> + <AC><BD> + <AD><BC> - 2<A><B><C><D>

which is exact on Gaussian states.
"""

from itertools import combinations
from math import comb, factorial

import numpy as np

PARAM_KEYS = ("one", "d1", "d2", "d3", "g1", "g2", "g3", "u0", "w2")
PARAM_INDEX = {k: i for i, k in enumerate(PARAM_KEYS)}

MODE_PAIRS = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]


def _mono_mean(m):
    key = [0] * 6
    key[2 * m + 1] = 1
    return tuple(key)


def _mono_normal(m, n):
    key = [0] * 6
    key[2 * m] += 1
    key[2 * n + 1] += 1
    return tuple(key)


def _mono_anomalous(m, n):
    key = [0] * 6
    key[2 * m + 1] += 1
    key[2 * n + 1] += 1
    return tuple(key)


MOMENTS = ([_mono_mean(m) for m in range(3)]
           + [_mono_normal(m, n) for m, n in MODE_PAIRS]
           + [_mono_anomalous(m, n) for m, n in MODE_PAIRS])
N_MOMENTS = len(MOMENTS)
Z_DIM = 1 + 2 * N_MOMENTS

MEAN_SLICE = slice(0, 3)
NORMAL_SLICE = slice(3, 9)
ANOMALOUS_SLICE = slice(9, 15)


def conj_monomial(mono):
    """Hermitian adjoint: swap dagger/plain counts per mode."""
    return (mono[1], mono[0], mono[3], mono[2], mono[5], mono[4])


_Z_INDEX = {(0, 0, 0, 0, 0, 0): 0}
for _i, _mono in enumerate(MOMENTS):
    _Z_INDEX[_mono] = 1 + _i
    _conj = conj_monomial(_mono)
    if _conj not in _Z_INDEX:
        _Z_INDEX[_conj] = 1 + N_MOMENTS + _i


def poly_scale(poly, factor):
    return {mono: {k: factor * c for k, c in coeff.items()}
            for mono, coeff in poly.items()}


def poly_add(dst, src, factor=1.0):
    """dst += factor * src, in place."""
    for mono, coeff in src.items():
        slot = dst.setdefault(mono, {})
        for k, c in coeff.items():
            slot[k] = slot.get(k, 0.0) + factor * c
            if abs(slot[k]) < 1e-15:
                del slot[k]
        if not slot:
            del dst[mono]
    return dst


def _coeff_mul(c1, c2):
    out = {}
    for k1, v1 in c1.items():
        for k2, v2 in c2.items():
            if k1 == "one":
                key = k2
            elif k2 == "one":
                key = k1
            else:
                raise ValueError(f"parameter product {k1}*{k2} not representable")
            out[key] = out.get(key, 0.0) + v1 * v2
    return out


def _mode_product(p, q, r, s):
    """Single-mode normal-ordering: (adag^p a^q)(adag^r a^s) as
    {(pp, qq): weight} using a^q adag^r = sum_k k! C(q,k) C(r,k)
    adag^(r-k) a^(q-k)."""
    out = {}
    for k in range(min(q, r) + 1):
        w = factorial(k) * comb(q, k) * comb(r, k)
        out[(p + r - k, q + s - k)] = w
    return out


def poly_mul(pa, pb):
    """Operator product of two polynomials (pa to the left)."""
    out = {}
    for ma, ca in pa.items():
        for mb, cb in pb.items():
            coeff = _coeff_mul(ca, cb)
            parts = [_mode_product(ma[2 * m], ma[2 * m + 1],
                                   mb[2 * m], mb[2 * m + 1]) for m in range(3)]
            for (p1, q1), w1 in parts[0].items():
                for (p2, q2), w2 in parts[1].items():
                    for (p3, q3), w3 in parts[2].items():
                        mono = (p1, q1, p2, q2, p3, q3)
                        w = w1 * w2 * w3
                        slot = out.setdefault(mono, {})
                        for k, c in coeff.items():
                            slot[k] = slot.get(k, 0.0) + w * c
    return {m: c for m, c in out.items()
            if any(abs(v) > 1e-15 for v in c.values())}


def commutator(pa, pb):
    out = poly_mul(pa, pb)
    poly_add(out, poly_mul(pb, pa), -1.0)
    return out


def _single(mode, dagger, param="one", coeff=1.0):
    key = [0] * 6
    key[2 * mode + (0 if dagger else 1)] = 1
    return {tuple(key): {param: coeff}}


def _number(mode):
    key = [0] * 6
    key[2 * mode] = key[2 * mode + 1] = 1
    return tuple(key)


def hamiltonian_poly():
    """The driven three-mode Kerr Hamiltonian with symbolic parameters."""
    h = {}
    for m, dkey in enumerate(("d1", "d2", "d3")):
        h.setdefault(_number(m), {})[dkey] = 1.0
    for m in range(3):  # self-Kerr (u0/2) adag^2 a^2
        key = [0] * 6
        key[2 * m] = key[2 * m + 1] = 2
        h[tuple(key)] = {"u0": 0.5}
    for m, n in [(0, 1), (0, 2), (1, 2)]:  # cross-Kerr 2 u0 nm nn
        key = [0] * 6
        key[2 * m] = key[2 * m + 1] = 1
        key[2 * n] = key[2 * n + 1] = 1
        h[tuple(key)] = {"u0": 2.0}
    # pair conversion u0 (a2dag^2 a1 a3 + h.c.)
    h[(0, 1, 2, 0, 0, 1)] = {"u0": 1.0}
    h[(1, 0, 0, 2, 1, 0)] = {"u0": 1.0}
    # coherent drive w2 (a2dag + a2)
    h[(0, 0, 1, 0, 0, 0)] = {"w2": 1.0}
    h[(0, 0, 0, 1, 0, 0)] = {"w2": 1.0}
    return h


def adjoint_derivative(obs_mono):
    """d<O>/dt as an operator polynomial:
    i[H, O] + sum_m g_m <2 adag_m O a_m - adag_m a_m O - O adag_m a_m>."""
    obs = {obs_mono: {"one": 1.0}}
    out = poly_scale(commutator(hamiltonian_poly(), obs), 1j)
    for m, gkey in enumerate(("g1", "g2", "g3")):
        adag = _single(m, True)
        a = _single(m, False)
        sandwich = poly_mul(poly_mul(adag, obs), a)
        nop = {_number(m): {"one": 1.0}}
        diss = poly_scale(sandwich, 2.0)
        poly_add(diss, poly_mul(nop, obs), -1.0)
        poly_add(diss, poly_mul(obs, nop), -1.0)
        for mono, coeff in diss.items():
            if "one" not in coeff:
                continue
            slot = out.setdefault(mono, {})
            slot[gkey] = slot.get(gkey, 0.0) + coeff["one"]
    return out


def _factor_list(mono):
    """Monomial as its ordered ladder-operator factors (canonical order)."""
    factors = []
    for m in range(3):
        factors.extend([(m, True)] * mono[2 * m])
        factors.extend([(m, False)] * mono[2 * m + 1])
    return factors


def _factor_key(*factors):
    key = [0] * 6
    for m, dag in factors:
        key[2 * m + (0 if dag else 1)] += 1
    return tuple(key)


def expectation_terms(mono):
    """Expectation under the closure, as [(coeff, z-index tuple)].

    Indices address z = [1, moments, conj(moments)]; products of the z
    entries weighted by the coefficients give the closed expectation value.
    Degree <= 2 is exact; degree 3 and 4 use the pair closures; higher
    degrees never arise from a quartic generator on quadratic observables.
    """
    degree = sum(mono)
    if degree == 0:
        return [(1.0, ())]
    if degree <= 2:
        return [(1.0, (_Z_INDEX[mono],))]
    f = _factor_list(mono)
    if degree == 3:
        terms = []
        for i, j in combinations(range(3), 2):
            k = ({0, 1, 2} - {i, j}).pop()
            terms.append((1.0, (_Z_INDEX[_factor_key(f[i], f[j])],
                                _Z_INDEX[_factor_key(f[k])])))
        terms.append((-2.0, tuple(_Z_INDEX[_factor_key(x)] for x in f)))
        return terms
    if degree == 4:
        terms = []
        for j in (1, 2, 3):
            rest = [x for x in (1, 2, 3) if x != j]
            terms.append((1.0, (_Z_INDEX[_factor_key(f[0], f[j])],
                                _Z_INDEX[_factor_key(f[rest[0]], f[rest[1]])])))
        terms.append((-2.0, tuple(_Z_INDEX[_factor_key(x)] for x in f)))
        return terms
    raise ValueError(f"degree-{degree} monomial outside the closure's range")


class TermTable:
    """Flattened closed equations of motion for the 15-moment vector.

    Arrays: target (T,), param (T,) indices into PARAM_KEYS, coeff (T,)
    complex, zidx (T, 4) indices into z (padded with 0, the constant slot).
    """

    def __init__(self):
        rows = {}
        for t, obs in enumerate(MOMENTS):
            deriv = adjoint_derivative(obs)
            for mono, coeff in deriv.items():
                for cc, zt in expectation_terms(mono):
                    zkey = tuple(sorted(zt))
                    for pkey, pc in coeff.items():
                        key = (t, PARAM_INDEX[pkey], zkey)
                        rows[key] = rows.get(key, 0.0) + pc * cc
        items = sorted((k, v) for k, v in rows.items() if abs(v) > 1e-14)
        self.target = np.array([k[0] for k, _ in items], dtype=np.intp)
        self.param = np.array([k[1] for k, _ in items], dtype=np.intp)
        self.coeff = np.array([v for _, v in items], dtype=complex)
        self.zidx = np.zeros((len(items), 4), dtype=np.intp)
        for r, ((_, _, zkey), _) in enumerate(items):
            self.zidx[r, :len(zkey)] = zkey
        # per-target slices for the evaluator
        self._starts = np.searchsorted(self.target, np.arange(N_MOMENTS + 1))

    def param_values(self, p):
        return np.array([1.0, *p.delta, *p.gamma, p.u0, p.omega2])

    def rhs(self, moments, pvals):
        """Time derivative of the moment vector.

        moments: (15,) or (15, B) complex; pvals: (9,) or (9, B) from
        param_values (columns may differ across a sweep batch).
        """
        single = moments.ndim == 1
        m = moments[:, None] if single else moments
        pv = pvals[:, None] if single else pvals
        if pv.ndim == 1:
            pv = np.broadcast_to(pv[:, None], (len(PARAM_KEYS), m.shape[1]))
        z = np.concatenate([np.ones((1, m.shape[1])), m, np.conj(m)], axis=0)
        prod = (z[self.zidx[:, 0]] * z[self.zidx[:, 1]]
                * z[self.zidx[:, 2]] * z[self.zidx[:, 3]])
        w = self.coeff[:, None] * pv[self.param] * prod
        out = np.empty_like(m)
        for t in range(N_MOMENTS):
            out[t] = w[self._starts[t]:self._starts[t + 1]].sum(axis=0)
        return out[:, 0] if single else out

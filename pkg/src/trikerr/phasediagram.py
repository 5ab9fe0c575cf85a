"""Attractor census over the (delta_2, omega_2) plane and region labeling.

Each grid point is classified by integrating a cloud of random initial
conditions and clustering the long-time behaviors:

    I   single uniform low-population state (LP)
    II  tri-stability: LP, HP and a side-mode limit cycle
    III bi-stability: LP and HP, no limit cycle
    IV  single uniform high-population state (HP)

Between I and IV runs a crossover band where the pumped-mode fluctuation
pair -gamma_2 +- i sqrt(X2) has X2 < 0: the imaginary parts have coalesced
(to zero, relative to -gamma_2) and the real parts split into over- and
under-damped branches.  The band edges X2 = 0 are exceptional points where
the eigenvector basis degenerates; single-attractor points inside the band
are labeled EP_band.

Grid points are independent; the sweep distributes them over a process pool
and merges by grid index, so results do not depend on completion order.
"""

import os
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from .closed import boundary_pump
from .dynamics import (detect_limit_cycle, integrate_rk4,
                       random_initial_conditions, uniform_branch)
from .integrate import Trajectory
from .params import SystemParams
from .stability import (bogoliubov_matrix, stability_eigenvalues,
                        uniform_eigenvalues)

CLUSTER_TOL = 1e-4
DEFAULT_GRID_SHAPE = (61, 61)
DEFAULT_DELTA2_RANGE = (-5.0, 5.0)
DEFAULT_OMEGA2_RANGE = (0.0, 6.0)


@dataclass
class GridPointResult:
    delta2: float
    omega2: float
    attractors: list
    region: str                 # 'I' | 'II' | 'III' | 'IV' | 'EP_band' | 'unresolved'
    closed_boundary_side: str   # 'below' | 'above'
    counts: dict = None         # kind -> number of initial conditions
    n_diverged: int = 0


def census_point(p, n_ics=100, radius=5.0, seed=0, t_end=200.0, dt=1e-3,
                 transient_fraction=0.5):
    """Attractor census at one parameter point.

    Returns (attractors, counts, n_diverged): one AttractorLabel per
    distinct attractor (fixed points clustered within CLUSTER_TOL in
    (Re, Im)^6, limit cycles by (frequency, amplitude) within 1%), plus the
    per-kind tally over initial conditions.
    """
    if n_ics < 1:
        raise ValueError("n_ics must be >= 1")
    ics = random_initial_conditions(n_ics, radius=radius, seed=seed)
    n_steps = int(round(t_end / dt))
    store_every = max(1, n_steps // 4096)
    traj = integrate_rk4(p, ics, t_end, dt=dt, store_every=store_every,
                         mask_divergence=True)
    dead = {idx[0] for idx, _ in traj.diverged}

    counts = {}
    fp_clusters = []   # (representative label, count)
    lc_clusters = []
    for i in range(n_ics):
        if i in dead:
            counts["diverged"] = counts.get("diverged", 0) + 1
            continue
        single = Trajectory(times=traj.times, states=traj.states[:, i, :],
                            dt=traj.dt)
        label = detect_limit_cycle(single, transient_fraction=transient_fraction,
                                   p=p)
        counts[label.kind] = counts.get(label.kind, 0) + 1
        if label.kind in ("LP", "HP"):
            x = np.concatenate([label.fixed_point.real, label.fixed_point.imag])
            for rep, _ in fp_clusters:
                y = np.concatenate([rep.fixed_point.real, rep.fixed_point.imag])
                if np.linalg.norm(x - y) < CLUSTER_TOL:
                    break
            else:
                fp_clusters.append((label, 0))
        elif label.kind == "LC":
            for rep, _ in lc_clusters:
                if (abs(label.lc_frequency - rep.lc_frequency)
                        <= 1e-2 * max(1.0, rep.lc_frequency)
                        and abs(label.lc_amplitude - rep.lc_amplitude)
                        <= 1e-2 * max(1.0, rep.lc_amplitude)):
                    break
            else:
                lc_clusters.append((label, 0))

    attractors = []
    for rep, _ in fp_clusters:
        report = stability_eigenvalues(bogoliubov_matrix(p, rep.fixed_point))
        if not report.stable and report.max_real > 0:
            rep.kind = "unstable"
        attractors.append(rep)
    attractors.extend(rep for rep, _ in lc_clusters)
    return attractors, counts, counts.get("diverged", 0)


def _pumped_x2(p, n2):
    d2, u = p.delta[1], p.u0
    return (d2 + u * n2) * (d2 + 3.0 * u * n2)


def classify_region(p, attractors):
    """Map an attractor set to a region label (see module docstring)."""
    kinds = {a.kind for a in attractors}
    if {"LP", "HP", "LC"} <= kinds:
        return "II"
    if {"LP", "HP"} <= kinds and "LC" not in kinds:
        return "III"
    if kinds == {"LP"} or kinds == {"HP"}:
        fp = attractors[0].fixed_point
        n2 = float(np.abs(fp[1]) ** 2)
        if _pumped_x2(p, n2) < 0:
            return "EP_band"
        return "I" if kinds == {"LP"} else "IV"
    return "unresolved"


def _boundary_side(delta2, omega2, u0):
    if u0 >= 0 or delta2 <= 0:
        return "above"
    return "below" if omega2 < boundary_pump(delta2, u0) else "above"


def grid_point(p, delta2, omega2, n_ics=100, radius=5.0, seed=0,
               t_end=200.0, dt=1e-3, transient_fraction=0.5):
    """Census + region label at (delta2, omega2), side detunings following
    the template's offsets relative to its own delta_2."""
    offsets = p.delta - p.delta[1]
    q = SystemParams(delta=delta2 + offsets, gamma=p.gamma.copy(),
                     u0=p.u0, omega2=omega2)
    try:
        attractors, counts, n_div = census_point(
            q, n_ics=n_ics, radius=radius, seed=seed, t_end=t_end, dt=dt,
            transient_fraction=transient_fraction)
        region = classify_region(q, attractors)
    except Exception:
        attractors, counts, n_div = [], {}, 0
        region = "unresolved"
    return GridPointResult(delta2=float(delta2), omega2=float(omega2),
                           attractors=attractors, region=region,
                           closed_boundary_side=_boundary_side(delta2, omega2, p.u0),
                           counts=counts, n_diverged=n_div)


def _sweep_job(args):
    (index, template_dict, delta2, omega2, n_ics, radius, seed, t_end, dt,
     transient_fraction) = args
    p = SystemParams.from_dict(template_dict)
    point_seed = np.random.SeedSequence(seed, spawn_key=(index,))
    return index, grid_point(p, delta2, omega2, n_ics=n_ics, radius=radius,
                             seed=point_seed, t_end=t_end, dt=dt,
                             transient_fraction=transient_fraction)


def sweep(p_template, delta2_grid, omega2_grid, ics_per_point=100, seed=0,
          radius=5.0, t_end=200.0, dt=1e-3, transient_fraction=0.5,
          workers=None):
    """Full-grid census; returns GridPointResult list in row-major order
    (omega_2 outer, delta_2 inner).  Deterministic for fixed seed: each grid
    point derives its initial conditions from SeedSequence(seed, index),
    independent of the worker pool layout.
    """
    delta2_grid = np.asarray(delta2_grid, dtype=float)
    omega2_grid = np.asarray(omega2_grid, dtype=float)
    if delta2_grid.size == 0 or omega2_grid.size == 0:
        raise ValueError("grids must be nonempty")
    if ics_per_point < 10:
        raise ValueError("ics_per_point must be at least 10")

    jobs = []
    index = 0
    tdict = p_template.to_dict()
    for omega2 in omega2_grid:
        for delta2 in delta2_grid:
            jobs.append((index, tdict, float(delta2), float(omega2),
                         ics_per_point, radius, seed, t_end, dt,
                         transient_fraction))
            index += 1

    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(jobs) == 1:
        indexed = [_sweep_job(j) for j in jobs]
    else:
        with Pool(processes=workers) as pool:
            indexed = list(pool.imap_unordered(_sweep_job, jobs,
                                               chunksize=1))
    indexed.sort(key=lambda pair: pair[0])
    return [r for _, r in indexed]


def _coalesced_pair(p, n2):
    """True when some fluctuation pair of the uniform state has merged
    imaginary parts with split real parts (the inside of the EP band)."""
    lam = uniform_eigenvalues(p, n2)
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            if (abs(lam[i].imag - lam[j].imag) < 1e-9
                    and abs(lam[i].real - lam[j].real) > 1e-9):
                return True
    return False


def _unique_attractor_n2(p):
    """Population of the unique stable uniform fixed point, else None."""
    n_values, alpha2 = uniform_branch(p)
    stable = []
    for n2, a2 in zip(n_values, alpha2):
        state = np.array([0.0, a2, 0.0], dtype=complex)
        if stability_eigenvalues(bogoliubov_matrix(p, state)).stable:
            stable.append((float(n2), a2))
    if len(stable) != 1:
        return None
    return stable[0]


def ep_band(p_template, delta2_values=None, omega2_values=None):
    """Exceptional-point band along a 1-D parameter cut.

    Exactly one of delta2_values / omega2_values is an array; the other
    parameter is taken from the template.  Returns a list of (lo, hi)
    intervals in the swept parameter where the unique uniform attractor's
    eigenvalue pair is real-split (coalesced imaginary parts).  On a 1-D cut
    the true exceptional points are the interval edges, refined by bisection;
    the defective-eigenvector detector (is_exceptional) fires there.
    """
    if (delta2_values is None) == (omega2_values is None):
        raise ValueError("specify exactly one of delta2_values / omega2_values")
    values = np.asarray(delta2_values if delta2_values is not None
                        else omega2_values, dtype=float)
    offsets = p_template.delta - p_template.delta[1]

    def params_at(x):
        if delta2_values is not None:
            return SystemParams(delta=x + offsets, gamma=p_template.gamma.copy(),
                                u0=p_template.u0, omega2=p_template.omega2)
        return p_template.with_omega2(float(x))

    def banded(x):
        p = params_at(x)
        unique = _unique_attractor_n2(p)
        if unique is None:
            return False
        return _coalesced_pair(p, unique[0])

    flags = np.array([banded(x) for x in values])
    intervals = []
    i = 0
    while i < len(values):
        if not flags[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(values) and flags[j + 1]:
            j += 1
        lo = _refine_edge(banded, values[i - 1], values[i]) if i > 0 else values[i]
        hi = (_refine_edge(banded, values[j + 1], values[j])
              if j + 1 < len(values) else values[j])
        intervals.append((float(min(lo, hi)), float(max(lo, hi))))
        i = j + 1
    return intervals


def _refine_edge(banded, outside, inside, iterations=60):
    """Bisect the band edge between an outside and an inside point, down to
    rounding (the eigenvector collapse at the exceptional point scales like
    sqrt of the parameter distance, so the edge must be tight for the
    defectiveness to be measurable)."""
    for _ in range(iterations):
        mid = 0.5 * (outside + inside)
        if banded(mid):
            inside = mid
        else:
            outside = mid
        if abs(inside - outside) < 1e-15 * max(1.0, abs(inside)):
            break
    return inside


def overlay_closed_boundary(delta2_grid, u0):
    """Closed-system instability boundary omega_2(delta_2) tabulated over a
    grid, clipped to 0 where the boundary does not exist (delta_2 <= 0)."""
    if u0 >= 0:
        raise ValueError("the closed boundary requires attractive u0 < 0")
    delta2_grid = np.asarray(delta2_grid, dtype=float)
    out = np.zeros_like(delta2_grid)
    for k, d2 in enumerate(delta2_grid):
        out[k] = boundary_pump(d2, u0) if d2 > 0 else 0.0
    return out

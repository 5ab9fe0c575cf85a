"""Command-line interface.

One executable, one subcommand per workflow:

    closed         closed-system energy landscape at the configured params
    trace          mean-field trajectory from one initial condition
    fixed-points   Newton census of mean-field fixed points
    stability      uniform-branch roots, eigenvalues, slopes, turning points
    spectrum       fluctuation spectral functions on a frequency grid
    cumulant       second-cumulant steady state across a drive sweep
    oracle         exact density-matrix steady state across a drive sweep
    phase-diagram  attractor census over the (delta_2, omega_2) grid
    compare        mean-field vs cumulant vs oracle populations per drive

Every run reads an INI config (--config; [params] is mandatory), writes
<command>.csv (one '#'-prefixed schema line, then rows), <command>.json
(run metadata: params, resolved options, seed) and <command>.txt (the same
summary printed to stdout).  Outputs are byte-identical for identical
config and seed.  Exit codes: 0 success, 2 bad config/usage, 3 numerical
failure, 4 resource cap exceeded.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import closed, cumulant, dynamics, keldysh, oracle, phasediagram, stability
from .config import (ConfigError, ORACLE_DEFAULT_CUTOFF, SCHEMA, load_config)
from .integrate import DivergenceError
from .meanfield import conserved_quantities, populations
from .oracle import FockDimensionError, FockSpace
from .params import SystemParams
from .stability import bogoliubov_matrix, stability_eigenvalues

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_CAP = 4

MOMENT_LABELS_3 = (["a1", "a2", "a3"]
                   + [f"n{m + 1}{n + 1}" for m, n in
                      [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]]
                   + [f"s{m + 1}{n + 1}" for m, n in
                      [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]])
MOMENT_LABELS_1 = ["a", "n", "s"]


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return str(x)


def write_csv(path, columns, rows):
    with open(path, "w") as fh:
        fh.write("# " + ",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_sidecar(path, command, cfg, extra=None):
    meta = {"command": command, "config": cfg.to_dict()}
    if extra:
        meta.update(extra)
    with open(path, "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def _moment_columns(labels):
    cols = []
    for lab in labels:
        cols.extend([f"re_{lab}", f"im_{lab}"])
    return cols


def _moment_row(vec):
    row = []
    for v in vec:
        row.extend([float(np.real(v)), float(np.imag(v))])
    return row


# -- command implementations -------------------------------------------------

def cmd_closed(cfg, args):
    p = cfg.params
    extrema = closed.landscape_extrema(p)
    rows = []
    for e in extrema:
        wp, wm = e.eigenfrequencies
        rows.append([e.re_alpha2, e.energy, e.kind,
                     float(np.real(wp)), float(np.imag(wp)),
                     e.norms[0], e.norms[1]])
    columns = ["re_alpha2", "energy", "kind", "re_omega_plus", "im_omega_plus",
               "ds2_plus", "ds2_minus"]
    summary = [f"extrema: {len(extrema)}"]
    for e in extrema:
        summary.append(f"  alpha2 = {e.re_alpha2:+.6f}  E = {e.energy:.6f}  {e.kind}")
    d2, u0 = p.delta[1], p.u0
    if u0 < 0 and d2 > 0:
        summary.append(f"landscape boundary at omega_2 = "
                       f"{closed.boundary_pump(d2, u0):.6f} (current "
                       f"omega_2 = {p.omega2})")
    return columns, rows, {}, summary


def cmd_trace(cfg, args):
    p = cfg.params
    opts = cfg["integration"]
    if args.ic is not None:
        vals = [float(x) for x in args.ic.split(",")]
        if len(vals) != 6:
            raise ConfigError("--ic needs 6 comma-separated floats "
                              "(re1,im1,re2,im2,re3,im3)")
        ic = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    else:
        ic = dynamics.random_initial_conditions(
            1, radius=cfg["ics"]["radius"], seed=cfg["run"]["seed"])[0]
    store = max(1, int(round(opts["t_end"] / opts["dt"])) // 4000)
    traj = dynamics.integrate_rk4(p, ic, opts["t_end"], dt=opts["dt"],
                                  store_every=store,
                                  guard=opts["divergence_guard"])
    rows = []
    for t, state in zip(traj.times, traj.states):
        energy, total = conserved_quantities(p, state)
        n = populations(state)
        rows.append([t,
                     state[0].real, state[0].imag, state[1].real,
                     state[1].imag, state[2].real, state[2].imag,
                     n[0], n[1], n[2], energy, total])
    columns = ["t", "re_a1", "im_a1", "re_a2", "im_a2", "re_a3", "im_a3",
               "n1", "n2", "n3", "energy", "total_n"]
    label = dynamics.detect_limit_cycle(
        traj, transient_fraction=opts["transient_fraction"], p=p)
    summary = [f"initial condition: {ic}",
               f"final state: {traj.states[-1]}",
               f"long-time behavior: {label.kind}"]
    if label.kind == "LC":
        summary.append(f"  w_LC = {label.lc_frequency:.6f}  "
                       f"mean |a1| = {label.lc_amplitude:.6f}")
    return columns, rows, {"kind": label.kind}, summary


def cmd_fixed_points(cfg, args):
    p = cfg.params
    seeds = dynamics.random_initial_conditions(
        cfg["ics"]["count"], radius=cfg["ics"]["radius"],
        seed=cfg["run"]["seed"])
    # the uniform branch roots seed the search too, so they are never missed
    n2, a2 = dynamics.uniform_branch(p)
    uniform_seeds = np.zeros((len(n2), 3), dtype=complex)
    uniform_seeds[:, 1] = a2
    result = dynamics.find_fixed_points(p, np.vstack([uniform_seeds, seeds]))
    rows = []
    for point in result.points:
        rep = stability_eigenvalues(bogoliubov_matrix(p, point))
        n = populations(point)
        rows.append([point[0].real, point[0].imag, point[1].real,
                     point[1].imag, point[2].real, point[2].imag,
                     n[0], n[1], n[2], int(rep.stable), rep.max_real])
    columns = ["re_a1", "im_a1", "re_a2", "im_a2", "re_a3", "im_a3",
               "n1", "n2", "n3", "stable", "max_re_lambda"]
    summary = [f"fixed points: {len(result.points)} "
               f"({result.n_converged}/{result.n_seeds} seeds converged)"]
    for row in rows:
        summary.append(f"  n = ({row[6]:.6f}, {row[7]:.6f}, {row[8]:.6f})  "
                       f"{'stable' if row[9] else 'unstable'}")
    return columns, rows, {}, summary


def cmd_stability(cfg, args):
    p = cfg.params
    n2, a2 = dynamics.uniform_branch(p)
    rows = []
    for nv, av in zip(n2, a2):
        state = np.array([0.0, av, 0.0], dtype=complex)
        b = bogoliubov_matrix(p, state)
        rep = stability_eigenvalues(b)
        slope = stability.uniform_slope(p, nv)
        rows.append([nv, av.real, av.imag, int(rep.stable), rep.max_real,
                     slope, int(stability.is_exceptional(b))])
    columns = ["n2", "re_a2", "im_a2", "stable", "max_re_lambda",
               "dn2_domega2", "exceptional"]
    tp = stability.turning_points(p)
    summary = [f"uniform roots: {len(n2)}"]
    for row in rows:
        summary.append(f"  n2 = {row[0]:.6f}  "
                       f"{'stable' if row[3] else 'unstable'}  "
                       f"slope = {row[5]:.6f}")
    summary.append("turning points: " + (f"n2 = {tp[0]:.6f}, {tp[1]:.6f}"
                                         if tp else "none"))
    meta = {"turning_points": list(tp) if tp else None}
    return columns, rows, meta, summary


def _spectrum_background(p, choice):
    n2, a2 = dynamics.uniform_branch(p)
    stable = []
    for nv, av in zip(n2, a2):
        state = np.array([0.0, av, 0.0], dtype=complex)
        if stability_eigenvalues(bogoliubov_matrix(p, state)).stable:
            stable.append((float(nv), av))
    if not stable:
        raise ValueError("no stable uniform state to expand around")
    if choice == "auto":
        if len(stable) > 1:
            raise ValueError("multiple stable uniform states; pick "
                             "--background lp or hp")
        return stable[0]
    return stable[0] if choice == "lp" else stable[-1]


def cmd_spectrum(cfg, args):
    p = cfg.params
    grid_opts = cfg["grid"]
    grid = np.linspace(grid_opts["omega_min"], grid_opts["omega_max"],
                       grid_opts["omega_points"])
    n2, a2 = _spectrum_background(p, args.background)
    state = np.array([0.0, a2, 0.0], dtype=complex)
    curve = keldysh.spectral_function(p, state, grid, method=args.method)
    rows = [[w, a[0], a[1], a[2]] for w, a in zip(curve.omega, curve.a)]
    columns = ["omega", "a1", "a2", "a3"]
    meta = {
        "background": {"n2_meanfield": n2, "re_a2": a2.real, "im_a2": a2.imag,
                       "n2_classical": 2.0 * n2},
        "method": args.method,
        "normalization": "integral A_m(w) dw / 2pi = 1 per mode sector",
    }
    peak = [float(curve.omega[int(np.argmax(curve.a[:, m]))]) for m in range(3)]
    summary = [f"background: uniform n2 = {n2:.6f} ({args.background})",
               f"spectral peaks at omega = "
               f"{peak[0]:.4f}, {peak[1]:.4f}, {peak[2]:.4f}"]
    return columns, rows, meta, summary


def _sweep_values(cfg):
    s = cfg["sweep"]
    return np.linspace(s["omega2_min"], s["omega2_max"], s["omega2_points"])


def cmd_cumulant(cfg, args):
    p = cfg.params
    opts = cfg["integration"]
    omega2 = _sweep_values(cfg)
    if args.modes == 1:
        moments, failed = cumulant.single_mode_sweep(
            p.delta[1], p.gamma[1], p.u0, omega2,
            t_end=opts["t_end"], dt=opts["dt"])
        labels = MOMENT_LABELS_1
    else:
        moments, failed = cumulant.cumulant_sweep(
            p, omega2, t_end=opts["t_end"], dt=opts["dt"])
        labels = MOMENT_LABELS_3
    columns = ["omega2"] + _moment_columns(labels) + ["failed"]
    rows = [[w] + _moment_row(moments[:, k]) + [int(failed[k])]
            for k, w in enumerate(omega2)]
    n_idx = 1 if args.modes == 1 else 6
    summary = [f"modes: {args.modes}, sweep points: {len(omega2)}, "
               f"closure failures: {int(failed.sum())}",
               f"pumped population range: "
               f"{np.real(moments[n_idx]).min():.6f} .. "
               f"{np.real(moments[n_idx]).max():.6f}"]
    return columns, rows, {"modes": args.modes}, summary


def _oracle_space(args, cfg):
    cutoff = args.cutoff if args.cutoff else cfg["oracle"]["cutoff"]
    if not cutoff:
        cutoff = ORACLE_DEFAULT_CUTOFF[args.modes]
    return FockSpace(n_modes=args.modes, n_max=cutoff)


def cmd_oracle(cfg, args):
    p = cfg.params
    omega2 = _sweep_values(cfg)
    space = _oracle_space(args, cfg)
    moments, _ = oracle.oracle_sweep(p, omega2, space)
    labels = MOMENT_LABELS_1 if args.modes == 1 else MOMENT_LABELS_3
    columns = ["omega2"] + _moment_columns(labels) + ["failed"]
    rows = [[w] + _moment_row(moments[:, k]) + [0]
            for k, w in enumerate(omega2)]
    n_idx = 1 if args.modes == 1 else 6
    summary = [f"modes: {args.modes}, cutoff n_max = {space.n_max} "
               f"(dim {space.dim}), sweep points: {len(omega2)}",
               f"pumped population range: "
               f"{np.real(moments[n_idx]).min():.6f} .. "
               f"{np.real(moments[n_idx]).max():.6f}"]
    return columns, rows, {"modes": args.modes, "n_max": space.n_max}, summary


def cmd_phase_diagram(cfg, args):
    p = cfg.params
    s = cfg["sweep"]
    opts = cfg["integration"]
    delta2 = np.linspace(s["delta2_min"], s["delta2_max"], s["delta2_points"])
    omega2 = np.linspace(s["omega2_min"], s["omega2_max"], s["omega2_points"])
    workers = cfg["run"]["threads"] or None
    results = phasediagram.sweep(
        p, delta2, omega2, ics_per_point=cfg["ics"]["count"],
        seed=cfg["run"]["seed"], radius=cfg["ics"]["radius"],
        t_end=opts["t_end"], dt=opts["dt"],
        transient_fraction=opts["transient_fraction"], workers=workers)
    rows = []
    for r in results:
        kinds = [a.kind for a in r.attractors]
        lc = next((a for a in r.attractors if a.kind == "LC"), None)
        rows.append([r.delta2, r.omega2, r.region, len(r.attractors),
                     int("LP" in kinds), int("HP" in kinds),
                     int(lc is not None),
                     lc.lc_frequency if lc else float("nan"),
                     r.closed_boundary_side, r.n_diverged])
    columns = ["delta2", "omega2", "region", "n_attractors", "has_lp",
               "has_hp", "has_lc", "lc_frequency", "closed_boundary_side",
               "n_diverged"]
    tally = {}
    for r in results:
        tally[r.region] = tally.get(r.region, 0) + 1
    meta = {"seed": cfg["run"]["seed"],
            "delta2_grid": [s["delta2_min"], s["delta2_max"], s["delta2_points"]],
            "omega2_grid": [s["omega2_min"], s["omega2_max"], s["omega2_points"]],
            "tolerances": {"cluster": phasediagram.CLUSTER_TOL,
                           "fixed_point": dynamics.FIXED_POINT_TOL,
                           "lc_amplitude": dynamics.LC_AMPLITUDE_THRESHOLD},
            "region_tally": tally}
    summary = [f"grid: {len(delta2)} x {len(omega2)} points"]
    for region in ("I", "II", "III", "IV", "EP_band", "unresolved"):
        if region in tally:
            summary.append(f"  region {region}: {tally[region]} points")
    return columns, rows, meta, summary


def cmd_compare(cfg, args):
    p = cfg.params
    opts = cfg["integration"]
    omega2 = _sweep_values(cfg)
    space = _oracle_space(args, cfg)

    mf_branches = np.full((3, len(omega2)), np.nan)
    for k, w2 in enumerate(omega2):
        q = p.with_omega2(float(w2))
        n2, _ = dynamics.uniform_branch(q)
        mf_branches[:len(n2), k] = n2

    if args.modes == 1:
        cm, failed = cumulant.single_mode_sweep(
            p.delta[1], p.gamma[1], p.u0, omega2,
            t_end=opts["t_end"], dt=opts["dt"])
        n_cm = np.real(cm[1])
    else:
        cm, failed = cumulant.cumulant_sweep(p, omega2, t_end=opts["t_end"],
                                             dt=opts["dt"])
        n_cm = np.real(cm[6])
    om, _ = oracle.oracle_sweep(p, omega2, space)
    n_or = np.real(om[1] if args.modes == 1 else om[6])

    columns = ["omega2", "n2_mf_low", "n2_mf_mid", "n2_mf_high",
               "n2_cumulant", "n2_oracle", "cumulant_failed"]
    rows = [[w, mf_branches[0, k], mf_branches[1, k], mf_branches[2, k],
             n_cm[k], n_or[k], int(failed[k])]
            for k, w in enumerate(omega2)]
    err = np.abs(n_cm - n_or) / np.maximum(np.abs(n_or), 1e-12)
    summary = [f"modes: {args.modes}, cutoff n_max = {space.n_max}, "
               f"points: {len(omega2)}",
               f"max |cumulant - oracle| / oracle on pumped population: "
               f"{np.nanmax(np.where(failed, np.nan, err)):.4f}"]
    return columns, rows, {"modes": args.modes, "n_max": space.n_max}, summary


# -- driver -------------------------------------------------------------------

COMMANDS = {
    "closed": cmd_closed,
    "trace": cmd_trace,
    "fixed-points": cmd_fixed_points,
    "stability": cmd_stability,
    "spectrum": cmd_spectrum,
    "cumulant": cmd_cumulant,
    "oracle": cmd_oracle,
    "phase-diagram": cmd_phase_diagram,
    "compare": cmd_compare,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trikerr",
        description="Driven-dissipative three-mode Kerr cavity workflows")
    parser.add_argument("--config", required=True, help="INI config path")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--seed", type=int, default=None,
                        help="override run.seed")
    parser.add_argument("--threads", type=int, default=None,
                        help="override run.threads (0 = machine parallelism)")
    parser.add_argument("--set", action="append", default=[],
                        metavar="SECTION.KEY=VALUE",
                        help="override any config key (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("closed")
    p_trace = sub.add_parser("trace")
    p_trace.add_argument("--ic", default=None,
                         help="initial condition re1,im1,re2,im2,re3,im3")
    sub.add_parser("fixed-points")
    sub.add_parser("stability")
    p_spec = sub.add_parser("spectrum")
    p_spec.add_argument("--method", default="numeric_6x6",
                        choices=["numeric_6x6", "analytic_uniform"])
    p_spec.add_argument("--background", default="auto",
                        choices=["auto", "lp", "hp"])
    for name in ("cumulant", "oracle", "compare"):
        sp = sub.add_parser(name)
        sp.add_argument("--modes", type=int, default=None, choices=[1, 3])
        if name != "cumulant":
            sp.add_argument("--cutoff", type=int, default=0,
                            help="Fock cutoff n_max (0 = per-mode default)")
    sub.add_parser("phase-diagram")
    return parser


def _apply_overrides(cfg, args):
    if args.seed is not None:
        cfg.sections["run"]["seed"] = args.seed
    if args.threads is not None:
        cfg.sections["run"]["threads"] = args.threads
    for item in args.set:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(f"--set expects SECTION.KEY=VALUE, got {item!r}")
        dotted, value = item.split("=", 1)
        sec, key = dotted.split(".", 1)
        if sec == "params":
            d = cfg.params.to_dict()
            if key not in d:
                raise ConfigError(f"unknown parameter key {key!r}")
            d[key] = float(value)
            cfg.params = SystemParams.from_dict(d)
        else:
            if sec not in SCHEMA or key not in SCHEMA[sec]:
                raise ConfigError(f"unknown key '{dotted}'")
            cfg.sections[sec][key] = SCHEMA[sec][key][0](value)
    if getattr(args, "modes", None) is None and hasattr(args, "modes"):
        args.modes = cfg["cumulant"]["modes"] if args.command == "cumulant" \
            else cfg["oracle"]["modes"]


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        _apply_overrides(cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        columns, rows, meta, summary = COMMANDS[args.command](cfg, args)
    except FockDimensionError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DivergenceError, cumulant.ClosureBreakdown, ValueError,
            np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    os.makedirs(args.out, exist_ok=True)
    stem = os.path.join(args.out, args.command)
    write_csv(stem + ".csv", columns, rows)
    meta = dict(meta)
    meta["seed"] = cfg["run"]["seed"]
    write_sidecar(stem + ".json", args.command, cfg, meta)
    text = "\n".join(summary) + "\n"
    with open(stem + ".txt", "w") as fh:
        fh.write(text)
    print(text, end="")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands::

    floqnet limit-cycle   find a period and sampled orbit, emit CSV + JSON
    floqnet floquet       monodromy multipliers and determinant check, JSON
    floqnet msf           master-stability-function sweep, CSV (+ gnuplot)
    floqnet simulate      coupled-network run, CSV + JSON summary
    floqnet verify        run the built-in check suite, table + JSON

Experiments are described either by inline flags or by a JSON config file
(schema in ``docs/config.md``; unknown keys are rejected).  Configs named
like the shipped ones (``fig2_full.json`` ...) resolve from package data
when no such file exists on disk.

Exit codes: 0 success, 1 numerical failure, 2 config/validation error.
All output files are written atomically (temp file + rename).  Identical
config and seed give byte-identical outputs.
"""
from __future__ import annotations

import argparse
import importlib.resources
import json
import os
import sys
import tempfile
import time

import numpy as np

from .exceptions import (Blowup, ConfigError, FloqnetError, NumericalError,
                         StepBudgetExceeded, StepFailure)
from .floquet import ajl_determinant, lf_decomposition, monodromy, \
    shifted_multipliers_fullstate
from .limit_cycle import find_limit_cycle
from .linalg import determinant, eigenvalues
from .models import MODEL_NAMES, get_model
from .msf import default_kappa_grid, msf_sweep, sync_predicate
from .network import CouplingSpec, complete_graph, from_adjacency, \
    ring_graph, simulate_network
from .ode import IntegratorConfig

__all__ = ["main", "run_subcommand", "verify_all", "load_config"]

SYNC_THRESHOLD = 1e-3

# ---------------------------------------------------------------------------
# config handling

_SCHEMA = {
    "model": {"name": str, "params": dict},
    "initial": list,
    "graph": {"kind": str, "n": int, "adjacency": list},
    "coupling": {"K": (int, float), "mask": list,
                 "activation_time": (int, float)},
    "integrator": {"rel_tol": (int, float), "abs_tol": (int, float)},
    "run": {"t_end": (int, float), "output_grid_points": int},
    "msf": {"kappa_min": (int, float), "kappa_max": (int, float),
            "points": int, "spacing": str},
    "seed": int,
}


def _check_keys(section, spec, path):
    if isinstance(spec, dict):
        if not isinstance(section, dict):
            raise ConfigError(f"config key '{path}' must be an object")
        for key, val in section.items():
            if key not in spec:
                raise ConfigError(f"unknown config key '{path}.{key}'"
                                  if path else f"unknown config key '{key}'")
            _check_keys(val, spec[key], f"{path}.{key}" if path else key)
    elif spec is list:
        if not isinstance(section, list):
            raise ConfigError(f"config key '{path}' must be an array")
    elif spec is dict:
        if not isinstance(section, dict):
            raise ConfigError(f"config key '{path}' must be an object")
    else:
        if not isinstance(section, spec) or isinstance(section, bool):
            raise ConfigError(f"config key '{path}' has the wrong type")


def load_config(path: str) -> dict:
    """Load and validate an experiment config from disk or shipped data."""
    text = None
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        name = os.path.basename(path)
        if not name.endswith(".json"):
            name += ".json"
        resource = importlib.resources.files("floqnet") / "configs" / name
        if resource.is_file():
            text = resource.read_text(encoding="utf-8")
    if text is None:
        raise ConfigError(f"config file not found: {path}")
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    _check_keys(cfg, _SCHEMA, "")
    return cfg


def _parse_params(pairs):
    params = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ConfigError(f"--param expects name=value, got {pair!r}")
        name, _, value = pair.partition("=")
        try:
            params[name.strip()] = float(value)
        except ValueError as exc:
            raise ConfigError(f"--param {name}: {value!r} is not a number") \
                from exc
    return params


def _model_from(args, config):
    section = (config or {}).get("model")
    if args.model is not None:
        return get_model(args.model, _parse_params(args.param))
    if section is not None:
        return get_model(section.get("name", ""), section.get("params"))
    raise ConfigError("no model given; use --model or a config with a "
                      "'model' section")


def _integrator_from(args, config):
    section = dict((config or {}).get("integrator") or {})
    if getattr(args, "rel_tol", None) is not None:
        section["rel_tol"] = args.rel_tol
    if getattr(args, "abs_tol", None) is not None:
        section["abs_tol"] = args.abs_tol
    try:
        return IntegratorConfig(
            rel_tol=section.get("rel_tol", 1e-9),
            abs_tol=section.get("abs_tol", 1e-11),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _mask_from(spec, dim):
    if spec is None or spec == "full":
        return np.ones(dim)
    if isinstance(spec, str):
        try:
            spec = [float(tok) for tok in spec.split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad mask {spec!r}; use 'full' or e.g. '0,1'") \
                from exc
    mask = np.asarray(spec, dtype=float)
    if mask.shape != (dim,):
        raise ConfigError(f"mask length {mask.size} != model dimension {dim}")
    if not np.all((mask == 0) | (mask == 1)):
        raise ConfigError("mask entries must be 0 or 1")
    return mask


def _graph_from(config):
    section = (config or {}).get("graph")
    if section is None:
        raise ConfigError("config is missing the 'graph' section")
    kind = section.get("kind", "complete")
    if kind == "complete":
        return complete_graph(int(section.get("n", 0)))
    if kind == "ring":
        return ring_graph(int(section.get("n", 0)))
    if kind == "adjacency":
        if "adjacency" not in section:
            raise ConfigError("graph.kind=adjacency requires graph.adjacency")
        return from_adjacency(section["adjacency"])
    raise ConfigError(f"unknown graph.kind {kind!r}; "
                      "expected complete | ring | adjacency")


# ---------------------------------------------------------------------------
# output helpers

def _fmt(x) -> str:
    # 17 significant digits round-trip any double; plain '.' decimal.
    return format(float(x), ".17g")


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    _write_atomic(path, "\n".join(lines) + "\n")


def _write_json(path, obj):
    _write_atomic(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# subcommands

def _cmd_limit_cycle(args):
    config = load_config(args.config) if args.config else None
    model = _model_from(args, config)
    cfg = _integrator_from(args, config)
    x0 = None
    if args.x0 is not None:
        x0 = [float(tok) for tok in args.x0.split(",")]
    elif config and "initial" in config:
        x0 = config["initial"]
    lc = find_limit_cycle(model, x0=x0, cfg=cfg)

    out = args.out or "limit_cycle"
    header = ["t"] + [f"x{j + 1}" for j in range(model.dim)]
    rows = [[lc.times[k], *lc.samples[k]] for k in range(lc.n_samples)]
    _write_csv(out + ".csv", header, rows)
    summary = {"model": model.name, "period": lc.period,
               "closure_residual": lc.closure_residual}
    _write_json(out + ".json", summary)
    print(json.dumps(summary, sort_keys=True))
    return 0


def _cmd_floquet(args):
    config = load_config(args.config) if args.config else None
    model = _model_from(args, config)
    cfg = _integrator_from(args, config)
    coupling = (config or {}).get("coupling", {})
    kappa = args.kappa if args.kappa is not None else \
        float(coupling.get("K", 0.0))
    mask = _mask_from(args.mask if args.mask is not None
                      else coupling.get("mask"), model.dim)
    lc = find_limit_cycle(model, cfg=cfg)
    mon = monodromy(model, lc, kappa=kappa, mask=mask, cfg=cfg)
    lhs, rhs = ajl_determinant(model, lc, kappa=kappa, mask=mask, cfg=cfg)

    result = {
        "model": model.name,
        "period": lc.period,
        "kappa": kappa,
        "mask": mask.tolist(),
        "multipliers": [
            {"re": float(m.real), "im": float(m.imag), "abs": float(abs(m))}
            for m in mon.multipliers
        ],
        "det_check": {"lhs": lhs, "rhs": rhs},
    }
    out = args.out or "floquet"
    _write_json(out + ".json", result)
    print(json.dumps({"period": lc.period, "kappa": kappa,
                      "mu_abs": [float(abs(m)) for m in mon.multipliers]},
                     sort_keys=True))
    return 0


_GNUPLOT_TEMPLATE = """\
# Master stability function: effective coupling vs largest multiplier
set datafile separator ','
set xlabel 'kappa = K*lambda'
set ylabel 'mu_max'
set key off
f(x) = 1.0
plot '{csv}' using 1:2 skip 1 with linespoints, f(x) with lines dashtype 2
"""


def _cmd_msf(args):
    config = load_config(args.config) if args.config else None
    model = _model_from(args, config)
    cfg = _integrator_from(args, config)
    section = dict((config or {}).get("msf") or {})
    for key, val in (("kappa_min", args.kappa_min),
                     ("kappa_max", args.kappa_max),
                     ("points", args.points), ("spacing", args.spacing)):
        if val is not None:
            section[key] = val
    if not section:
        grid = default_kappa_grid()
    else:
        missing = [k for k in ("kappa_min", "kappa_max", "points")
                   if k not in section]
        if missing:
            raise ConfigError(f"msf sweep needs {', '.join(missing)} "
                              "(flags or config 'msf' section)")
        lo, hi = float(section["kappa_min"]), float(section["kappa_max"])
        points = int(section["points"])
        spacing = section.get("spacing", "linear")
        if spacing == "linear":
            grid = np.linspace(lo, hi, points)
        elif spacing == "log":
            if lo <= 0:
                raise ConfigError("log spacing needs kappa_min > 0")
            grid = np.geomspace(lo, hi, points)
        else:
            raise ConfigError(f"unknown msf.spacing {spacing!r}")

    mask = _mask_from(args.mask if args.mask is not None
                      else (config or {}).get("coupling", {}).get("mask"),
                      model.dim)
    lc = find_limit_cycle(model, cfg=cfg)
    curve = msf_sweep(model, lc, mask, grid, cfg=cfg)

    header = ["kappa", "mu_max"]
    for j in range(model.dim):
        header += [f"mult_{j + 1}_re", f"mult_{j + 1}_im"]
    rows = []
    for point in curve.points:
        row = [point.kappa, point.mu_max]
        for m in point.multipliers:
            row += [m.real, m.imag]
        rows.append(row)
    out = args.out or "msf"
    _write_csv(out + ".csv", header, rows)
    if args.emit_plot_script:
        _write_atomic(out + ".gp", _GNUPLOT_TEMPLATE.format(
            csv=os.path.basename(out + ".csv")))
    print(json.dumps({"model": model.name, "points": grid.size,
                      "mu_max_first": curve.points[0].mu_max,
                      "mu_max_last": curve.points[-1].mu_max},
                     sort_keys=True))
    return 0


def _cmd_simulate(args):
    if not args.config:
        raise ConfigError("simulate requires --config")
    config = load_config(args.config)
    model = _model_from(args, config)
    cfg = _integrator_from(args, config)
    graph = _graph_from(config)
    coupling_cfg = config.get("coupling")
    if coupling_cfg is None:
        raise ConfigError("config is missing the 'coupling' section")
    coupling = CouplingSpec(
        K=float(coupling_cfg.get("K", 0.0)),
        mask=_mask_from(coupling_cfg.get("mask"), model.dim),
        activation_time=float(coupling_cfg.get("activation_time", 0.0)),
    )
    run_cfg = config.get("run")
    if run_cfg is None or "t_end" not in run_cfg:
        raise ConfigError("config is missing run.t_end")
    if "initial" not in config:
        raise ConfigError("config is missing 'initial' "
                          f"(length {graph.n * model.dim} state)")
    x0 = np.asarray(config["initial"], dtype=float)
    if x0.size != graph.n * model.dim:
        raise ConfigError(
            f"initial has length {x0.size}, expected n*m = "
            f"{graph.n * model.dim}"
        )

    run = simulate_network(
        model, graph, coupling, x0, float(run_cfg["t_end"]), cfg=cfg,
        output_points=int(run_cfg.get("output_grid_points", 2000)),
    )

    below = run.sync.error < SYNC_THRESHOLD
    t_converged = None
    for i in range(below.size):
        if below[i:].all():
            t_converged = float(run.times[i])
            break
    summary = {
        "final_error": run.sync.final,
        "converged": bool(run.sync.final < SYNC_THRESHOLD),
        "threshold": SYNC_THRESHOLD,
        "t_converged": t_converged,
    }

    header = ["t"] + [f"x_{i + 1}_{j + 1}" for i in range(graph.n)
                      for j in range(model.dim)] + ["sync_error"]
    rows = [[run.times[k], *run.states[k], run.sync.error[k]]
            for k in range(run.times.size)]
    out = args.out or "simulate"
    _write_csv(out + ".csv", header, rows)
    _write_json(out + ".json", summary)
    print(json.dumps(summary, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# verify

def _check(name, fn, reports, quick_set=None, quick=False):
    if quick and quick_set is not None and name not in quick_set:
        return
    start = time.perf_counter()
    try:
        detail = fn()
        passed, note = True, (detail or "")
    except AssertionError as exc:
        passed, note = False, str(exc)
    except FloqnetError as exc:
        passed, note = False, f"{type(exc).__name__}: {exc}"
    reports.append({"check": name, "passed": passed, "detail": note})
    status = "pass" if passed else "FAIL"
    print(f"  [{status}] {name:<38s} ({time.perf_counter() - start:5.1f}s)"
          f"{'' if passed else '  ' + note}")


_QUICK_CHECKS = {
    "linalg-eig-det-product", "laplacian-spectra", "unity-multiplier-vdp",
    "shift-law-vdp", "ajl-identity-vdp", "lf-periodicity-vdp",
    "predicate-vs-simulation-vdp",
}


def verify_all(config=None, quick=False, seed=0, flip_coupling_sign=False):
    """Run the built-in consistency suite; returns (reports, all_passed).

    Checks: deterministic linear-algebra oracles, the uncoupled multiplier
    structure, the full-state multiplier shift law, the determinant
    identity, Lyapunov-Floquet periodicity, spectral-verdict vs direct
    simulation agreement, and divergence under negative coupling.

    ``flip_coupling_sign`` deliberately corrupts the direct route of the
    shift-law check (sign of the effective coupling); it exists so the
    suite can demonstrate it still has teeth.
    """
    if config:
        seed = int(config.get("seed", seed))
        # Building the configured model validates its name and parameters.
        if "model" in config:
            get_model(config["model"].get("name", ""),
                      config["model"].get("params"))
    reports = []
    sign = -1.0 if flip_coupling_sign else 1.0

    def linalg_check():
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(100):
            dim = int(rng.integers(2, 9))
            a = rng.standard_normal((dim, dim))
            rel = abs(np.prod(eigenvalues(a)) - determinant(a)) / \
                max(abs(determinant(a)), 1e-300)
            worst = max(worst, rel)
        assert worst < 1e-8, f"eig-product vs det relative error {worst:.3g}"
        return f"worst rel {worst:.2e}"

    def laplacian_check():
        for n in (3, 4, 5):
            eig = complete_graph(n).eigenvalues
            expected = np.array([0.0] + [float(n)] * (n - 1))
            err = np.abs(eig - expected).max()
            assert err < 1e-10, f"complete({n}) spectrum off by {err:.3g}"
        return "complete(3,4,5) spectra exact to 1e-10"

    _check("linalg-eig-det-product", linalg_check, reports,
           _QUICK_CHECKS, quick)
    _check("laplacian-spectra", laplacian_check, reports,
           _QUICK_CHECKS, quick)

    cycles = {}

    def cycle_of(name):
        if name not in cycles:
            model = get_model(name)
            cycles[name] = (model, find_limit_cycle(model))
        return cycles[name]

    def unity_check(name):
        def run():
            model, lc = cycle_of(name)
            mon = monodromy(model, lc)
            mods = np.abs(mon.multipliers)
            near = np.abs(mon.multipliers - 1.0) < 1e-3
            assert near.sum() == 1, f"{near.sum()} unity multipliers"
            others = mods[~near]
            assert np.all(others < 1.0), f"non-unity |mu| {others.max():.6f}"
            return f"|mu| = {np.array2string(mods, precision=3)}"
        return run

    def shift_check(name, kappas=(0.25, 0.5, 1.0, 2.0)):
        def run():
            model, lc = cycle_of(name)
            base = monodromy(model, lc)
            worst = 0.0
            for kap in kappas:
                direct = monodromy(model, lc, kappa=sign * kap)
                predicted = shifted_multipliers_fullstate(base, kap)
                rel = np.abs(direct.multipliers - predicted) / \
                    np.abs(predicted)
                worst = max(worst, float(rel.max()))
            assert worst < 1e-6, f"shift-law relative error {worst:.3g}"
            return f"worst rel {worst:.2e}"
        return run

    def ajl_check(name, kappas=(0.0, 1.0, 2.0)):
        def run():
            model, lc = cycle_of(name)
            partial = np.tile([0.0, 1.0], model.dim // 2)
            worst = 0.0
            for kap in kappas:
                for mask in (np.ones(model.dim), partial):
                    lhs, rhs = ajl_determinant(model, lc, kappa=kap,
                                               mask=mask)
                    worst = max(worst, abs(lhs - rhs) / rhs)
            assert worst < 1e-6, f"determinant identity error {worst:.3g}"
            return f"worst rel {worst:.2e}"
        return run

    def lf_check(name):
        def run():
            model, lc = cycle_of(name)
            lf = lf_decomposition(model, lc)
            assert lf.periodicity_residual < 1e-4, \
                f"P(T) residual {lf.periodicity_residual:.3g}"
            return f"residual {lf.periodicity_residual:.2e}"
        return run

    def agreement_check(name, x0, t_end):
        def run():
            model, lc = cycle_of(name)
            graph = complete_graph(3)
            partial = np.tile([0.0, 1.0], model.dim // 2)
            for mask in (np.ones(model.dim), partial):
                verdict = sync_predicate(model, lc, graph, 1.0, mask=mask)
                coupling = CouplingSpec(K=1.0, mask=mask,
                                        activation_time=20.0)
                run_ = simulate_network(model, graph, coupling, x0, t_end)
                empirical = run_.sync.final < SYNC_THRESHOLD
                assert verdict.synchronizes == empirical, (
                    f"mask {mask.tolist()}: predicate "
                    f"{verdict.synchronizes} vs simulation {empirical}"
                )
            return "verdict matches simulation, both masks"
        return run

    def necessity_check():
        model, lc = cycle_of("vdp")
        graph = complete_graph(3)
        verdict = sync_predicate(model, lc, graph, -0.5)
        assert not verdict.synchronizes, "predicate passed K<0"
        assert verdict.mu_max[1:].min() > 1.0, \
            f"transverse mu_max {verdict.mu_max[1:].min():.3g} not > 1"
        # Direct divergence certificate on a short horizon: the anti-coupled
        # network becomes stiffer as it diverges, so the run is capped and
        # any terminal integrator failure counts as detected divergence.
        coupling = CouplingSpec(K=-0.5, mask=np.ones(2), activation_time=1.0)
        x0 = np.array([0.0, 1.0, 2.0, 3.0, 4.0, 5.0])
        try:
            run_ = simulate_network(
                model, graph, coupling, x0, 5.0,
                cfg=IntegratorConfig(max_steps=150_000),
            )
            grew = run_.sync.error[-1] > 10 * max(run_.sync.error[0], 1e-12)
            stays = run_.sync.min_after(2.0) > 0.1
            assert grew and stays, "sync error decayed under K<0"
            note = f"error grew to {run_.sync.final:.3g}"
        except (Blowup, StepFailure, StepBudgetExceeded) as exc:
            note = f"diverged ({type(exc).__name__})"
        return "mu_max>1 for all transverse modes; " + note

    for name in ("vdp", "repressilator"):
        tag = "vdp" if name == "vdp" else "repressilator"
        _check(f"unity-multiplier-{tag}", unity_check(name), reports,
               _QUICK_CHECKS, quick)
        _check(f"shift-law-{tag}", shift_check(
            name, (0.5, 1.0) if quick else (0.25, 0.5, 1.0, 2.0)),
            reports, _QUICK_CHECKS, quick)
        _check(f"ajl-identity-{tag}", ajl_check(
            name, (0.0, 1.0) if quick else (0.0, 1.0, 2.0)),
            reports, _QUICK_CHECKS, quick)

    # P(t) periodicity is checked where double precision can represent it;
    # the repressilator's transition matrix condition number (~1e19) puts
    # its residual out of reach of any f64 route (see README).
    _check("lf-periodicity-vdp", lf_check("vdp"), reports,
           _QUICK_CHECKS, quick)
    _check("lf-periodicity-rotation", lf_check("linear_rotation"), reports,
           _QUICK_CHECKS, quick)

    _check("predicate-vs-simulation-vdp",
           agreement_check("vdp", np.array([0., 1., 2., 3., 4., 5.]), 100.0),
           reports, _QUICK_CHECKS, quick)
    _check("predicate-vs-simulation-repressilator",
           agreement_check(
               "repressilator",
               np.array([0., 1., 0., 3., 0., 5., 0., 7., 0., 9., 0., 11.,
                         0., 13., 15., 17., 4., 6.]), 140.0),
           reports, _QUICK_CHECKS, quick)
    _check("necessity-negative-coupling", necessity_check, reports,
           _QUICK_CHECKS, quick)

    return reports, all(r["passed"] for r in reports)


def _cmd_verify(args):
    config = load_config(args.config) if args.config else None
    print("floqnet verify" + (" --quick" if args.quick else ""))
    reports, ok = verify_all(config=config, quick=args.quick,
                             seed=args.seed,
                             flip_coupling_sign=args.flip_coupling_sign)
    out = args.out or "verify"
    _write_json(out + ".json", {"checks": reports, "all_passed": ok})
    print(f"{sum(r['passed'] for r in reports)}/{len(reports)} checks passed")
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="floqnet",
        description="Floquet multipliers, master stability functions, and "
                    "synchronization tests for coupled oscillator networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_model=True):
        p.add_argument("--config", help="JSON experiment config")
        if needs_model:
            p.add_argument("--model", choices=MODEL_NAMES)
            p.add_argument("--param", action="append", metavar="NAME=VALUE",
                           help="model parameter override (repeatable)")
        p.add_argument("--rel-tol", type=float, dest="rel_tol")
        p.add_argument("--abs-tol", type=float, dest="abs_tol")
        p.add_argument("--out", help="output path prefix")

    p = sub.add_parser("limit-cycle", help="find a limit cycle and period")
    common(p)
    p.add_argument("--x0", help="comma-separated initial state")
    p.set_defaults(func=_cmd_limit_cycle)

    p = sub.add_parser("floquet",
                       help="Floquet multipliers and determinant check")
    common(p)
    p.add_argument("--kappa", type=float, help="effective coupling K*lambda")
    p.add_argument("--mask", help="'full' or 0/1 list like '0,1'")
    p.set_defaults(func=_cmd_floquet)

    p = sub.add_parser("msf", help="master stability function sweep")
    common(p)
    p.add_argument("--mask", help="'full' or 0/1 list like '0,1'")
    p.add_argument("--kappa-min", type=float, dest="kappa_min")
    p.add_argument("--kappa-max", type=float, dest="kappa_max")
    p.add_argument("--points", type=int)
    p.add_argument("--spacing", choices=("linear", "log"))
    p.add_argument("--emit-plot-script", action="store_true",
                   help="write a standalone gnuplot script next to the CSV")
    p.set_defaults(func=_cmd_msf)

    p = sub.add_parser("simulate", help="simulate a coupled network")
    common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", help="run the built-in check suite")
    common(p, needs_model=False)
    p.add_argument("--quick", action="store_true",
                   help="subset of checks that completes in ~15 s")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--flip-coupling-sign", action="store_true",
                   help=argparse.SUPPRESS)  # mutation sanity hook
    p.set_defaults(func=_cmd_verify)

    return parser


def run_subcommand(argv) -> int:
    """Parse ``argv`` (without the program name) and run one subcommand."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"floqnet: config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"floqnet: numerical failure: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 1
    except FloqnetError as exc:
        print(f"floqnet: error: {exc}", file=sys.stderr)
        return 2


def main() -> int:
    return run_subcommand(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())

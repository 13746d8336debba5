"""Command-line front end.

Subcommands: solve, invert, formfactor, scale-check.  Every run writes
plot-ready CSV files plus a JSON manifest (resolved configuration, input
digests, output list, wall time).  Exit codes: 0 ok, 1 usage error,
2 no bound state, 3 convergence failure, 4 bad input data.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import dataset as ds
from .curves import SpectralCurve
from .eigensolver import (DEFAULT, SolverConfig, ground_state, spectral_curve)
from .errors import (BadDataError, ConvergenceError, NoBoundStateError,
                     SpectralForgeError)
from .formfactor import (ground_state_form_factor, half_maximum_crossing)
from .inversion import InversionConfig, forward_residuals, invert, \
    max_abs_residual
from .shapes import ProblemSetup, shape_from_csv, shape_from_spec
from ._text import num

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_BOUND_STATE = 2
EXIT_NO_CONVERGENCE = 3
EXIT_BAD_DATA = 4

_BUILTIN_SERIES = {"ladder-0.15", "ladder-0.5", "lcl-0.5", "yukawa-0.5"}


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


class _Run:
    """Collects outputs and writes the manifest at the end of a command."""

    def __init__(self, subcommand, out_dir, config):
        self.t0 = time.time()
        self.subcommand = subcommand
        self.out_dir = out_dir
        self.config = config
        self.inputs = {}
        self.outputs = []
        os.makedirs(out_dir, exist_ok=True)

    def path(self, name):
        p = os.path.join(self.out_dir, name)
        self.outputs.append(p)
        return p

    def note_input(self, path):
        if path and os.path.exists(path):
            self.inputs[path] = _sha256(path)

    def finish(self):
        manifest = {
            "subcommand": self.subcommand,
            "config": self.config,
            "inputs": self.inputs,
            "outputs": [os.path.basename(p) for p in self.outputs],
            "wall_time_s": time.time() - self.t0,
        }
        mp = os.path.join(self.out_dir, "manifest.json")
        with open(mp, "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
        return mp


def _solver_config(args):
    overrides = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            payload = json.load(fh)
        overrides = payload.get("solver", {})
    return SolverConfig(**{**DEFAULT.__dict__, **overrides})


def _load_curve_source(source, run):
    """A builtin series name or a CSV path ('v,E' or dataset format)."""
    if source in _BUILTIN_SERIES:
        return ds.builtin_curve(source), source
    run.note_input(source)
    with open(source, newline="") as fh:
        header = fh.readline().strip()
    if header.startswith("series"):
        table = ds.dataset_from_csv(source)
        if len(table) != 1:
            raise BadDataError(
                f"dataset CSV holds {len(table)} series; pass one of them")
        (name, (_, pts)), = table.items()
        return ds.curve_from_points(pts), name
    return SpectralCurve.from_csv(source), os.path.basename(source)


def _resolve_shape(args, run):
    spec = args.shape
    if spec.startswith("table:"):
        run.note_input(spec.split(":", 1)[1])
    return shape_from_spec(spec)


def cmd_solve(args):
    run = _Run("solve", args.out_dir, {"shape": args.shape, "v": args.v,
                                       "m": args.m})
    shape = _resolve_shape(args, run)
    if args.mu is not None and shape.kind == "yukawa":
        shape = shape_from_spec(f"yukawa:mu={args.mu}")
    config = _solver_config(args)
    gs = ground_state(shape, ProblemSetup(m=args.m, v=args.v), config)
    print(f"E = {num(gs.energy)}")
    gs.wavefunction.to_csv(run.path("wavefunction.csv"))
    run.config["energy"] = gs.energy
    run.config["tolerance"] = gs.tolerance
    run.finish()
    return EXIT_OK


def cmd_invert(args):
    run = _Run("invert", args.out_dir, {"data": args.data, "seed": args.seed,
                                        "iterations": args.n})
    target, label = _load_curve_source(args.data, run)
    seed = shape_from_spec(args.seed)
    cfg = InversionConfig(iterations=args.n, jobs=args.jobs)
    if args.config:
        with open(args.config) as fh:
            payload = json.load(fh)
        inv = payload.get("inversion", {})
        cfg = InversionConfig(**{**cfg.__dict__, **inv})
    trace = invert(target, seed, cfg)
    paths = trace.export(args.out_dir)
    run.outputs.extend(paths)
    rows = forward_residuals(trace.final, target, m=cfg.m, config=cfg.solver)
    with open(run.path("residuals.csv"), "w", newline="") as fh:
        fh.write("v,residual,note\n")
        for v, r, note in rows:
            fh.write(f"{num(v)},{'' if r is None else num(r)},{note}\n")
    print(f"inverted {label}: {args.n} iterations, "
          f"max|residual| = {max_abs_residual(rows):.3e}, "
          f"final step = {trace.step_norms()[-1]:.3e}")
    run.finish()
    return EXIT_OK


def _trace_shape(spec):
    """Load 'outdir/f8' as the tabulated iterate CSV outdir/f8.csv."""
    path = spec if spec.endswith(".csv") else spec + ".csv"
    return shape_from_csv(path), path


def cmd_formfactor(args):
    run = _Run("formfactor", args.out_dir, {"v": args.v, "m": args.m})
    k_grid = np.linspace(args.k_min, args.k_max, args.k_points)
    config = _solver_config(args)
    if args.compare:
        labels, crossings = [], []
        for spec in args.compare:
            shape, path = _trace_shape(spec)
            run.note_input(path)
            curve = ground_state_form_factor(shape, args.v, m=args.m,
                                             k_grid=k_grid, config=config)
            name = os.path.basename(spec).replace(".csv", "")
            curve.to_csv(run.path(f"formfactor_{name}.csv"),
                         run.path(f"formfactor_{name}.json"))
            k_half = half_maximum_crossing(curve)
            labels.append(spec)
            crossings.append(k_half)
            print(f"{spec}: k_half = {num(k_half)}")
        order = " > ".join(l for l, _ in
                           sorted(zip(labels, crossings), key=lambda t: -t[1]))
        print(f"broadening order: {order}")
        run.finish()
        return EXIT_OK
    if args.trace:
        shape, path = _trace_shape(args.trace)
        run.note_input(path)
        label = os.path.basename(args.trace).replace(".csv", "")
    else:
        if not args.shape:
            print("error: provide a shape spec, --trace, or --compare",
                  file=sys.stderr)
            return EXIT_USAGE
        shape = _resolve_shape(args, run)
        label = shape.kind
    curve = ground_state_form_factor(shape, args.v, m=args.m, k_grid=k_grid,
                                     config=config)
    curve.to_csv(run.path(f"formfactor_{label}.csv"),
                 run.path(f"formfactor_{label}.json"))
    if args.k is not None:
        print(f"F({num(args.k)}) = {num(curve.value(args.k))}")
    else:
        print(f"F(0) = {num(curve.F[0])}; wrote {len(curve.k)} samples")
    run.finish()
    return EXIT_OK


def cmd_scale_check(args):
    run = _Run("scale-check", args.out_dir,
               {"R": args.R, "base": args.base, "target": args.target,
                "synthetic": args.synthetic})
    if args.synthetic:
        from .shapes import yukawa
        mu_base, mu_target = 0.5, 0.15
        R = args.R if args.R is not None else mu_base / mu_target
        base_pts = ds.builtin_dataset().couplings("ladder-0.5")
        ws = [w for w, _ in base_pts]
        base = spectral_curve(yukawa(mu_base), ws, jobs=args.jobs)
        target = spectral_curve(yukawa(mu_target), [w / R for w in ws],
                                jobs=args.jobs)
        rows = ds.scaling_comparison(base, target, R)
    else:
        dataset = ds.builtin_dataset()
        base = ds.builtin_curve(args.base, dataset)
        target = ds.builtin_curve(args.target, dataset)
        R = args.R if args.R is not None else \
            dataset.mu(args.base) / dataset.mu(args.target)
        rows = ds.scaling_comparison(
            base, target, R,
            base_points=dataset.couplings(args.base),
            target_points=dataset.couplings(args.target))
    ds.scaling_rows_to_csv(rows, run.path("scale_check.csv"))
    shown = [r for r in rows if r.in_hull]
    for r in shown:
        print(f"v={num(r.v)}  E_scaled={r.e_scaled}  E_actual={r.e_actual}  "
              f"discrepancy={r.discrepancy}  [{r.source}]")
    skipped = len(rows) - len(shown)
    if skipped:
        print(f"({skipped} rows outside the interpolation hull; flagged in CSV)")
    run.finish()
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="spectralforge",
        description="Potential reconstruction from spectral data, radial "
                    "eigensolves, form factors, and exchange-mass scaling.")
    p.add_argument("--jobs", type=int,
                   default=int(os.environ.get("SPECTRAL_FORGE_JOBS", "1")),
                   help="parallel workers for per-coupling solves")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="ground-state energy and wavefunction")
    sp.add_argument("shape", help="shape spec, e.g. coulomb, yukawa:mu=0.5, "
                                  "hulthen:a=1, table:path.csv")
    sp.add_argument("--v", type=float, required=True, help="coupling")
    sp.add_argument("--m", type=float, default=1.0, help="constituent mass")
    sp.add_argument("--mu", type=float, default=None,
                    help="override exchange mass for yukawa")
    sp.add_argument("--config", default=None, help="JSON config override")
    sp.add_argument("--out-dir", default="runs/solve")
    sp.set_defaults(fn=cmd_solve)

    ip = sub.add_parser("invert", help="reconstruct f(r) from a curve")
    ip.add_argument("--data", required=True,
                    help="builtin series (ladder-0.15|ladder-0.5|lcl-0.5) "
                         "or CSV path")
    ip.add_argument("--seed", default="coulomb", help="seed shape spec")
    ip.add_argument("--n", type=int, default=8, help="iteration count")
    ip.add_argument("--config", default=None, help="JSON config override")
    ip.add_argument("--out-dir", default="runs/invert")
    ip.set_defaults(fn=cmd_invert)

    fp = sub.add_parser("formfactor", help="momentum-space form factor")
    fp.add_argument("shape", nargs="?", default=None, help="shape spec")
    fp.add_argument("--trace", default=None,
                    help="iterate from an inversion run, e.g. runs/lcl/f8")
    fp.add_argument("--compare", nargs=2, default=None,
                    help="two iterate specs; reports half-maximum crossings")
    fp.add_argument("--v", type=float, default=5.0)
    fp.add_argument("--m", type=float, default=1.0)
    fp.add_argument("--mu", type=float, default=None)
    fp.add_argument("--k", type=float, default=None,
                    help="print F at this single momentum")
    fp.add_argument("--k-min", type=float, default=0.0)
    fp.add_argument("--k-max", type=float, default=10.0)
    fp.add_argument("--k-points", type=int, default=200)
    fp.add_argument("--config", default=None)
    fp.add_argument("--out-dir", default="runs/formfactor")
    fp.set_defaults(fn=cmd_formfactor)

    cp = sub.add_parser("scale-check",
                        help="exchange-mass scaling comparison")
    cp.add_argument("--R", type=float, default=None,
                    help="mass ratio (default from the series' mu values)")
    cp.add_argument("--base", default="ladder-0.5")
    cp.add_argument("--target", default="ladder-0.15")
    cp.add_argument("--synthetic", default=None, choices=["yukawa"],
                    help="compare eigensolver-generated curves instead")
    cp.add_argument("--out-dir", default="runs/scale-check")
    cp.set_defaults(fn=cmd_scale_check)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except NoBoundStateError as exc:
        print(f"no bound state: {exc}", file=sys.stderr)
        return EXIT_NO_BOUND_STATE
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except BadDataError as exc:
        print(f"bad input data: {exc}", file=sys.stderr)
        if getattr(exc, "rows", None):
            print(f"offending rows: {exc.rows}", file=sys.stderr)
        return EXIT_BAD_DATA
    except (SpectralForgeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

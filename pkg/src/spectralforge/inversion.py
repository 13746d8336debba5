"""Functional inversion: reconstruct the potential shape from F(v).

Starting from a seed shape f0 (Coulomb by default), each stage

    f_n  ->  F_n(v)                         forward eigensolve on a coupling grid
    K_n(r)   = max_u [F_n(u) - u f_n(r)]    dual of the current iterate
    f_{n+1}(r) = max_v [(F(v) - K_n(r))/v]  pull-back through the target curve

runs on a fixed logarithmic radial grid, producing improving tabulated
iterates.  Maximizations use the curves' evaluable ranges: from the critical
coupling (quadratic threshold bridge) up to the top of the sampled hull;
hits at the top are counted and reported, since there the reconstruction is
a tangent continuation rather than data.  The forward curve carries exact
slopes (<f> over the solved state), which keeps the dual pair consistent.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .curves import SpectralCurve
from .eigensolver import (FAST, SolverConfig, critical_coupling, ground_state,
                          spectral_curve)
from .errors import BadDataError, NoBoundStateError, SpectralForgeError
from .optimize import golden_max
from .shapes import PotentialShape, ProblemSetup, tabulated
from ._text import num

_REPAIR_REL = 1e-9      # monotone-repair threshold, relative to local |f|


@dataclass(frozen=True)
class InversionConfig:
    """Grids and policies for one inversion run."""

    r_min: float = 0.05
    r_max: float = 10.0
    n_radial: int = 60
    iterations: int = 8
    m: float = 1.0
    coupling_grid: tuple = ()        # defaults to target samples, densified
    min_couplings: int = 12
    solver: SolverConfig = field(default_factory=lambda: FAST)
    crit_rel_width: float = 1e-5     # v1 bisection width for iterates
    jobs: int = 1

    def radial_grid(self):
        return np.geomspace(self.r_min, self.r_max, self.n_radial)


@dataclass
class StageRecord:
    forward_curve: SpectralCurve
    k_values: np.ndarray
    boundary_hits_k: int
    boundary_hits_f: int
    step_sup_norm: float
    repaired_knots: int


@dataclass
class InversionTrace:
    """All iterates and intermediates of one inversion run."""

    grid: np.ndarray
    iterates: list            # tabulated PotentialShape, f_0 ... f_n
    stages: list              # StageRecord per transition
    target: SpectralCurve
    config: InversionConfig
    wall_time: float = 0.0

    @property
    def final(self) -> PotentialShape:
        return self.iterates[-1]

    def step_norms(self):
        return [s.step_sup_norm for s in self.stages]

    def export(self, out_dir):
        """Write iterate/stage CSVs plus a JSON manifest; returns paths."""
        import os
        os.makedirs(out_dir, exist_ok=True)
        paths = []
        for n, shape in enumerate(self.iterates):
            p = os.path.join(out_dir, f"f{n}.csv")
            with open(p, "w", newline="") as fh:
                fh.write("r,f\n")
                for r, fv in zip(shape.table_r, shape.table_f):
                    fh.write(f"{num(r)},{num(fv)}\n")
            paths.append(p)
        for n, st in enumerate(self.stages):
            p = os.path.join(out_dir, f"F{n}.csv")
            st.forward_curve.to_csv(p)
            paths.append(p)
            p = os.path.join(out_dir, f"K{n}.csv")
            with open(p, "w", newline="") as fh:
                fh.write(f"# K-function of iterate {n}\n")
                fh.write("x,y\n")
                for r, k in zip(self.grid, st.k_values):
                    fh.write(f"{num(r)},{num(k)}\n")
            paths.append(p)
        manifest = {
            "iterations": len(self.stages),
            "radial_grid": {"r_min": float(self.grid[0]),
                            "r_max": float(self.grid[-1]),
                            "points": int(len(self.grid))},
            "step_sup_norms": self.step_norms(),
            "boundary_hits": [[s.boundary_hits_k, s.boundary_hits_f]
                              for s in self.stages],
            "repaired_knots": [s.repaired_knots for s in self.stages],
            "wall_time_s": self.wall_time,
            "files": [os.path.basename(p) for p in paths],
        }
        mp = os.path.join(out_dir, "trace.json")
        with open(mp, "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
        paths.append(mp)
        return paths


def _require_admissible_target(curve: SpectralCurve):
    if len(curve.v) < 4 and curve.provenance != "analytic":
        raise BadDataError("target curve needs at least 4 samples")


def _require_admissible_seed(seed_vals, grid):
    if np.any(np.diff(seed_vals) < 0):
        raise BadDataError("seed must be monotone non-decreasing in r")
    if seed_vals[0] * grid[0] >= 0:
        raise BadDataError("seed must be attractive and coulombic at the origin")


def _densified_couplings(curve: SpectralCurve, minimum):
    vs = np.asarray(curve.v, dtype=float)
    while len(vs) < minimum:
        vs = np.unique(np.concatenate([vs, np.sqrt(vs[:-1] * vs[1:])]))
    return vs


def _monotone_repair(values, grid):
    """Project tiny decreasing glitches away; abort on real violations."""
    out = np.array(values, dtype=float)
    repaired = 0
    for j in range(1, len(out)):
        if out[j] < out[j - 1]:
            gap = out[j - 1] - out[j]
            scale = max(abs(out[j]), abs(out[j - 1]), 1.0)
            if gap > _REPAIR_REL * scale:
                raise SpectralForgeError(
                    f"iterate lost monotonicity at r={grid[j]:g} "
                    f"(drop {gap:.3e}); inversion aborted")
            out[j] = out[j - 1]
            repaired += 1
    return out, repaired


def invert(target: SpectralCurve, seed: PotentialShape,
           config: InversionConfig = InversionConfig()) -> InversionTrace:
    """Run the full inversion sequence; returns the trace of all iterates.

    The target must be concave and decreasing (checked at construction);
    the seed must belong to the admissible singular class.  A forward-solve
    failure aborts with the offending stage and coupling in the message.
    """
    t0 = time.time()
    _require_admissible_target(target)
    grid = config.radial_grid()
    seed_vals = np.asarray(seed(grid), dtype=float)
    _require_admissible_seed(seed_vals, grid)
    if config.coupling_grid:
        ugrid_base = np.asarray(config.coupling_grid, dtype=float)
    else:
        ugrid_base = _densified_couplings(target, config.min_couplings)
    crit_cfg = SolverConfig(**{**config.solver.__dict__,
                               "crit_rel_width": config.crit_rel_width})

    iterates = [tabulated(grid, seed_vals, singularity_class="coulombic")]
    stages = []
    t_lo, t_hi = target.domain
    for stage in range(config.iterations):
        fs = iterates[-1]
        v1n = critical_coupling(fs, m=config.m, config=crit_cfg)
        # forward couplings: extend toward the iterate's own threshold so the
        # dual has support where the tails live
        lo_ext = max(v1n * 1.3, ugrid_base[0] / 6.0)
        if lo_ext < ugrid_base[0] * 0.98:
            extra = np.geomspace(lo_ext, ugrid_base[0], 4)[:-1]
            ugrid = np.unique(np.concatenate([extra, ugrid_base]))
        else:
            ugrid = ugrid_base
        try:
            fwd = spectral_curve(fs, ugrid, m=config.m, config=config.solver,
                                 jobs=config.jobs, v1=v1n)
            if fwd.failed_couplings:
                raise NoBoundStateError(
                    f"forward solve lost couplings {fwd.failed_couplings}")
        except SpectralForgeError as exc:
            raise SpectralForgeError(
                f"stage {stage}: forward solve failed: {exc}") from exc
        f_lo, f_hi = fwd.domain
        fvals = fs(grid)
        k_vals = np.empty_like(grid)
        hits_k = hits_f = 0
        fnew = np.empty_like(grid)
        for j, fr in enumerate(fvals):
            res_k = golden_max(lambda u: fwd.value(u) - u * fr, f_lo, f_hi)
            k_vals[j] = res_k.value
            hits_k += res_k.at_upper
            res_f = golden_max(
                lambda v: (target.value(v) - res_k.value) / v, t_lo, t_hi)
            fnew[j] = res_f.value
            hits_f += res_f.at_upper
        fnew, repaired = _monotone_repair(fnew, grid)
        step = float(np.max(np.abs(fnew - fvals)))
        stages.append(StageRecord(
            forward_curve=fwd, k_values=k_vals, boundary_hits_k=hits_k,
            boundary_hits_f=hits_f, step_sup_norm=step,
            repaired_knots=repaired))
        iterates.append(tabulated(grid, fnew, singularity_class="coulombic"))
    return InversionTrace(grid=grid, iterates=iterates, stages=stages,
                          target=target, config=config,
                          wall_time=time.time() - t0)


def forward_residuals(shape: PotentialShape, target: SpectralCurve, m=1.0,
                      config: SolverConfig = FAST):
    """Per-sample residuals F_shape(v_i) - F_target(v_i).

    Returns a list of (coupling, residual-or-None, note); unbound couplings
    carry residual None with the failure cause.
    """
    rows = []
    for v, E in zip(target.v, target.E):
        try:
            gs = ground_state(shape, ProblemSetup(m=m, v=float(v)), config)
        except NoBoundStateError as exc:
            rows.append((float(v), None, f"no bound state: {exc}"))
            continue
        rows.append((float(v), gs.energy - float(E), ""))
    return rows


def max_abs_residual(rows):
    vals = [abs(r) for _, r, _ in rows if r is not None]
    if not vals:
        raise SpectralForgeError("no residuals could be evaluated")
    return max(vals)

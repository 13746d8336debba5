"""Ground-state solver for -(1/m) u'' + v f(r) u = E u, u(0) = 0.

Numerov integration on a logarithmic grid: with x = ln r and
y(x) = u(r)/sqrt(r) the radial equation becomes y'' = W(x) y,
W = 1/4 + m r^2 (v f(r) - E), which is smooth in x even for Coulomb-singular
shapes.  The eigenvalue is located by node-count bisection followed by a
safeguarded secant on the boundary value y(r_max); the box radius grows until
its effect on E is below tolerance.  The returned density comes from a
two-sided sweep (outward to the outer turning point, inward from r_max)
because a purely outward solution is contaminated by the growing mode beyond
the turning point.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .curves import SpectralCurve
from .errors import (ConvergenceError, DomainError, InsufficientDataError,
                     NoBindingError, NoBoundStateError)
from .optimize import golden_min
from .shapes import PotentialShape, ProblemSetup
from ._text import num


@dataclass(frozen=True)
class SolverConfig:
    r_min: float = 1e-4          # inner edge of the log grid
    step: float = 0.006          # grid spacing in x = ln r
    tol_abs: float = 1e-9        # absolute energy tolerance
    tol_rel: float = 1e-8        # relative energy tolerance
    r_max_initial: float = 20.0
    r_max_cap: float = 2e4       # give up on binding beyond this box
    boundary_factor: float = 1.3  # growth used for the boundary-effect check
    max_outer: int = 24
    crit_rel_width: float = 1e-4  # bisection width for critical couplings

    def tolerance(self, energy_scale=1.0):
        return self.tol_abs + self.tol_rel * abs(energy_scale)


DEFAULT = SolverConfig()
FAST = SolverConfig(step=0.008, tol_abs=1e-8, tol_rel=1e-7)


@dataclass
class RadialWavefunction:
    """Normalized reduced radial ground state u(r) on its solver grid."""

    r: np.ndarray
    u: np.ndarray
    energy: float
    m: float = 1.0
    v: float = 1.0
    normalized: bool = True
    norm_residual: float = 0.0
    tail_bound: float = 0.0      # bound on the neglected density beyond r[-1]

    def norm(self):
        """Composite-Simpson value of the density integral on the grid."""
        hx = math.log(self.r[1] / self.r[0])
        w = _simpson_weights(len(self.r))
        return float(np.dot(w, self.u * self.u * self.r) * hx / 3.0)

    def interior_nodes(self):
        s = np.sign(self.u[1:-1])
        return int(np.sum(s[:-1] * s[1:] < 0))

    def density_moment(self, power=2):
        """Integral of r^power u(r)^2 dr (power=0 gives the norm)."""
        hx = math.log(self.r[1] / self.r[0])
        w = _simpson_weights(len(self.r))
        return float(np.dot(w, self.u * self.u * self.r ** (power + 1)) * hx / 3.0)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write("r,u\n")
            for ri, ui in zip(self.r, self.u):
                fh.write(f"{num(ri)},{num(ui)}\n")


@dataclass
class GroundState:
    energy: float
    wavefunction: RadialWavefunction
    mean_potential: float        # <f> over the state; equals dE/dv
    r_max: float
    tolerance: float


def _simpson_weights(n_points):
    w = np.ones(n_points)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w


class _RadialProblem:
    """Grid-bound arrays for one (shape, m, r_max); reusable across E and v."""

    def __init__(self, shape, m, r_max, config):
        n = int(math.ceil((math.log(r_max) - math.log(config.r_min))
                          / config.step))
        n += n % 2                            # even interval count for Simpson
        self.n = n
        self.hx = config.step
        self.x = math.log(config.r_min) + self.hx * np.arange(n + 1)
        self.r = np.exp(self.x)
        self.fr = shape(self.r)
        self._rrf_np = m * self.r * self.r * self.fr
        self._r2m_np = m * self.r * self.r
        self.rrf = self._rrf_np.tolist()
        self.r2m = self._r2m_np.tolist()
        self.m = m
        self.g0 = shape.strength_at_origin
        self.c0 = getattr(shape, "origin_offset", 0.0)
        self.h2_12 = self.hx * self.hx / 12.0
        self.r_max = float(self.r[-1])

    def _start(self, v, E=0.0):
        # regular solution u ~ r (1 + a r + b r^2) near a coulombic core
        # f ~ g0/r + c0:  a = m v g0 / 2,  b = m (v g0 a + v c0 - E) / 6
        a = 0.5 * self.m * v * self.g0
        b = self.m * (v * self.g0 * a + v * self.c0 - E) / 6.0
        r0, r1 = float(self.r[0]), float(self.r[1])
        return (r0 * (1.0 + (a + b * r0) * r0) / math.sqrt(r0),
                r1 * (1.0 + (a + b * r1) * r1) / math.sqrt(r1))

    # Numerov factor floor: once 1 - h^2 W / 12 drops this low the forbidden
    # region is impenetrable at this step size; the sweep may stop there (the
    # solution explodes monotonically, contributing no further nodes).
    _T_FLOOR = 0.05
    # e-folds of forbidden-region growth after which the boundary sign is
    # settled; integrating further only accumulates stiffness error
    _GROWTH_BUDGET = 60.0

    def _stop_index(self, v, E):
        """Grid index where a sweep at energy E may safely stop."""
        W = 0.25 + v * self._rrf_np - E * self._r2m_np
        allowed = np.nonzero(W < 0.0)[0]
        if len(allowed) == 0:
            return 2                     # fully forbidden: no nodes anywhere
        i_t = int(allowed[-1])
        if i_t >= self.n:
            return self.n
        growth = np.sqrt(np.maximum(W[i_t:], 0.0)) * self.hx
        beyond = np.nonzero(np.cumsum(growth) > self._GROWTH_BUDGET)[0]
        if len(beyond) == 0:
            return self.n
        return min(self.n, i_t + int(beyond[0]) + 1)

    def sweep(self, v, E, need_nodes=None):
        """Outward Numerov sweep; returns (node count, boundary value)."""
        rrf, r2m, h2_12 = self.rrf, self.r2m, self.h2_12
        n_stop = self._stop_index(v, E)
        if n_stop <= 2:
            return 0, 1.0
        t_prev = 1.0 - h2_12 * (0.25 + v * rrf[0] - E * r2m[0])
        t_cur = 1.0 - h2_12 * (0.25 + v * rrf[1] - E * r2m[1])
        y_prev, y_cur = self._start(v, E)
        nodes = 0
        for i in range(2, n_stop + 1):
            t_next = 1.0 - h2_12 * (0.25 + v * rrf[i] - E * r2m[i])
            if t_next <= self._T_FLOOR:
                return nodes, y_cur
            y_next = ((12.0 - 10.0 * t_cur) * y_cur - t_prev * y_prev) / t_next
            if y_next * y_cur < 0.0:
                nodes += 1
                if need_nodes is not None and nodes >= need_nodes:
                    return nodes, y_next
            if abs(y_next) > 1e200:
                y_next *= 1e-200
                y_cur *= 1e-200
            y_prev, y_cur = y_cur, y_next
            t_prev, t_cur = t_cur, t_next
        return nodes, y_cur

    def lower_bound(self, v):
        w = 1.0 / (4.0 * self.m * self.r * self.r) + v * self.fr
        return float(np.min(w))

    def solve_energy(self, v, e_lo=None, e_hi=None, tol=None, config=DEFAULT):
        """Lowest box eigenvalue below zero, or None if the box holds none."""
        if e_lo is None:
            e_lo = self.lower_bound(v) * (1.0 + 1e-9) - 1e-12
        if e_hi is None:
            e_hi = -1e-13 * max(1.0, abs(e_lo))
        nodes_hi, _ = self.sweep(v, e_hi, need_nodes=1)
        if nodes_hi == 0:
            return None
        lo, hi = e_lo, e_hi
        if self.sweep(v, lo, need_nodes=1)[0] >= 1:
            raise ConvergenceError(
                f"energy bracket invalid: node below lower bound {lo:g}")
        if tol is None:
            tol = config.tolerance(abs(lo))
        # node-count bisection down to a narrow window
        while hi - lo > max(1e-3 * abs(hi), 64.0 * tol):
            mid = 0.5 * (lo + hi)
            if self.sweep(v, mid, need_nodes=1)[0] >= 1:
                hi = mid
            else:
                lo = mid
        # safeguarded secant on the boundary value
        e0, e1 = lo, hi
        f0 = self.sweep(v, e0)[1]
        f1 = self.sweep(v, e1)[1]
        for _ in range(80):
            if hi - lo <= config.tol_abs + config.tol_rel * abs(hi):
                break
            if f1 != f0:
                e2 = e1 - f1 * (e1 - e0) / (f1 - f0)
            else:
                e2 = 0.5 * (lo + hi)
            if not (lo < e2 < hi):
                e2 = 0.5 * (lo + hi)
            nd, f2 = self.sweep(v, e2)
            if nd >= 1:
                hi = e2
            else:
                lo = e2
            e0, f0 = e1, f1
            e1, f1 = e2, f2
        else:
            raise ConvergenceError("secant refinement exceeded iteration budget",
                                   residual=hi - lo)
        return 0.5 * (lo + hi)

    def wavefunction(self, v, E):
        """Two-sided matched solution at energy E, unnormalized."""
        W = 0.25 + np.array(self.rrf) * v - E * np.array(self.r2m)
        t = (1.0 - self.h2_12 * W).tolist()
        allowed = np.nonzero(W < 0.0)[0]
        im = int(allowed[-1]) if len(allowed) else self.n // 2
        im = max(2, min(im, self.n - 2))
        # the inward sweep starts where the Numerov factor is still sound and
        # the growth budget not yet spent; the density beyond is below
        # representable anyway
        n_eff = self._stop_index(v, E)
        for i in range(im + 1, n_eff + 1):
            if t[i] <= self._T_FLOOR:
                n_eff = i - 1
                break
        n_eff = max(n_eff, im + 2)
        y = np.zeros(self.n + 1)
        y[0], y[1] = self._start(v, E)
        for i in range(2, im + 1):
            y[i] = ((12.0 - 10.0 * t[i - 1]) * y[i - 1]
                    - t[i - 2] * y[i - 2]) / t[i]
            if abs(y[i]) > 1e200:
                y[: i + 1] *= 1e-200
        z = np.zeros(self.n + 1)
        z[n_eff] = 1.0
        z[n_eff - 1] = math.exp(math.sqrt(max(W[n_eff], 1e-12)) * self.hx)
        for i in range(n_eff - 2, im - 1, -1):
            z[i] = ((12.0 - 10.0 * t[i + 1]) * z[i + 1]
                    - t[i + 2] * z[i + 2]) / t[i]
            if abs(z[i]) > 1e200:
                z[i:] *= 1e-200
        if z[im] == 0.0:
            raise ConvergenceError("inward sweep vanished at the matching point")
        y[im:n_eff + 1] = z[im:n_eff + 1] * (y[im] / z[im])
        u = y * np.sqrt(self.r)
        return u


def _evidence(shape, v, r_max, nodes):
    return {"shape": shape.describe(), "coupling": v,
            "r_max_probed": r_max, "nodes_at_zero_minus": nodes}


def ground_state(shape: PotentialShape, setup: ProblemSetup,
                 config: SolverConfig = DEFAULT) -> GroundState:
    """Ground-state energy and normalized wavefunction.

    Raises NoBoundStateError (with probing evidence) when the coupling sits
    at or below the critical coupling, ConvergenceError on iteration-budget
    exhaustion.
    """
    m, v = setup.m, setup.v
    r_max = config.r_max_initial
    E = None
    prob = None
    e_lo = e_hi = None
    for _ in range(config.max_outer):
        prob = _RadialProblem(shape, m, r_max, config)
        E_new = prob.solve_energy(v, e_lo=e_lo, e_hi=e_hi, config=config)
        if E_new is None:
            if r_max >= config.r_max_cap:
                raise NoBoundStateError(
                    f"no bound state for {shape.describe()} at v={v:g}",
                    evidence=_evidence(shape, v, r_max, 0))
            r_max = min(r_max * 2.0, config.r_max_cap)
            e_lo = e_hi = None
            continue
        tol = config.tolerance(E_new)
        needed = max(config.r_max_initial, 12.0 / math.sqrt(m * abs(E_new)))
        if prob.r_max < needed:
            # box was too small; the true level may sit far below its value
            r_max = needed * 1.05
            E, e_lo, e_hi = E_new, None, E_new + 0.5 * tol
            continue
        if E is not None and abs(E_new - E) <= tol:
            E = E_new
            break
        # boundary-effect check: enlarging the box must not move E
        E = E_new
        r_max = prob.r_max * config.boundary_factor
        e_lo = E - max(0.01 * abs(E), 100 * tol)
        e_hi = E + 0.5 * tol
    else:
        raise ConvergenceError("box-radius adaptation did not settle",
                               residual=r_max)
    u = prob.wavefunction(v, E)
    hx = prob.hx
    w = _simpson_weights(prob.n + 1)
    # analytic [0, r_min] slice from the series start u ~ c r: the density
    # misses ~ c^2 r0^3/3 but the 1/r-weighted mean misses ~ c^2 g0 r0^2/2
    r0 = float(prob.r[0])
    c_lin = float(u[0]) / (r0 * (1.0 + 0.5 * m * v * prob.g0 * r0))
    norm_head = c_lin * c_lin * r0**3 / 3.0
    fmean_head = c_lin * c_lin * (prob.g0 * r0**2 / 2.0 + prob.c0 * r0**3 / 3.0)
    norm2 = float(np.dot(w, u * u * prob.r) * hx / 3.0) + norm_head
    u = u / math.sqrt(norm2)
    if u[np.argmax(np.abs(u))] < 0:
        u = -u
    fmean = (float(np.dot(w, u * u * prob.fr * prob.r) * hx / 3.0)
             + fmean_head / norm2)
    kappa = math.sqrt(m * abs(E))
    wf = RadialWavefunction(
        r=prob.r, u=u, energy=E, m=m, v=v, normalized=True,
        norm_residual=0.0, tail_bound=float(u[-1] ** 2 / (2.0 * kappa)))
    return GroundState(energy=E, wavefunction=wf, mean_potential=fmean,
                       r_max=prob.r_max, tolerance=config.tolerance(E))


def _solve_sample(args):
    shape, v, m, config = args
    gs = ground_state(shape, ProblemSetup(m=m, v=v), config)
    return gs.energy, gs.mean_potential


def spectral_curve(shape: PotentialShape, couplings, m=1.0,
                   config: SolverConfig = DEFAULT, jobs=1,
                   v1=None) -> SpectralCurve:
    """Sample E = F(v) by repeated ground-state solves.

    Slopes attached from the solver's <f> (which equals dE/dv), the critical
    coupling computed by zero-energy shooting unless supplied.  Couplings
    that fail to bind are recorded on the curve as ``failed_couplings``.
    """
    cs = sorted(float(v) for v in couplings)
    results, failures = [], []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for v, out in zip(cs, pool.map(
                    _solve_sample, [(shape, v, m, config) for v in cs])):
                results.append((v, out[0], out[1]))
    else:
        for v in cs:
            try:
                E, d = _solve_sample((shape, v, m, config))
            except NoBoundStateError as exc:
                failures.append((v, str(exc)))
                continue
            results.append((v, E, d))
    if len(results) < 2:
        raise InsufficientDataError(
            f"fewer than 2 bound couplings out of {len(cs)}; "
            f"failures: {failures}")
    if v1 is None:
        v1 = critical_coupling(shape, m=m, config=config)
    curve = SpectralCurve([r[0] for r in results], [r[1] for r in results],
                          slopes=[r[2] for r in results], v1=v1,
                          v1_is_estimate=False, provenance="solver")
    curve.failed_couplings = failures
    return curve


def coupling_for_energy(shape: PotentialShape, energy, m=1.0,
                        config: SolverConfig = DEFAULT) -> float:
    """Coupling v with F(v) = energy, by shooting in v at fixed energy.

    At fixed E < 0 the node count of the regular solution is monotone in v,
    so bisection on the first-node appearance inverts the strictly
    decreasing F; a safeguarded secant on the boundary value refines.
    """
    if energy >= 0:
        raise DomainError("target energy must be negative")
    r_max = max(config.r_max_initial, 12.0 / math.sqrt(m * abs(energy)))
    v1 = critical_coupling(shape, m=m, config=config)
    for _ in range(4):
        prob = _RadialProblem(shape, m, r_max, config)
        v = _shoot_coupling(prob, energy, v1, config)
        prob2 = _RadialProblem(shape, m, r_max * config.boundary_factor, config)
        v2 = _shoot_coupling(prob2, energy, v1, config)
        if abs(v2 - v) <= config.tol_abs + 10.0 * config.tol_rel * abs(v):
            return v2
        r_max *= config.boundary_factor
    raise ConvergenceError("coupling search did not settle with box growth",
                           residual=abs(v2 - v))


def _shoot_coupling(prob, energy, v1, config):
    lo = max(v1 * (1.0 + 1e-3), 1e-9)
    hi = max(2.0 * lo, 1.0)
    for _ in range(60):
        if prob.sweep(hi, energy, need_nodes=1)[0] >= 1:
            break
        lo = hi
        hi *= 2.0
        if hi > 1e8:
            raise NoBoundStateError(
                f"energy {energy:g} unreachable below coupling {hi:g}",
                evidence={"coupling_ceiling": hi})
    while hi - lo > 1e-3 * hi:
        mid = 0.5 * (lo + hi)
        if prob.sweep(mid, energy, need_nodes=1)[0] >= 1:
            hi = mid
        else:
            lo = mid
    v0, vb = lo, hi
    f0 = prob.sweep(v0, energy)[1]
    f1 = prob.sweep(vb, energy)[1]
    for _ in range(80):
        if hi - lo <= 0.1 * (config.tol_abs + config.tol_rel * hi):
            break
        v2 = vb - f1 * (vb - v0) / (f1 - f0) if f1 != f0 else 0.5 * (lo + hi)
        if not (lo < v2 < hi):
            v2 = 0.5 * (lo + hi)
        nd, f2 = prob.sweep(v2, energy)
        if nd >= 1:
            hi = v2
        else:
            lo = v2
        v0, f0 = vb, f1
        vb, f1 = v2, f2
    return 0.5 * (lo + hi)


def critical_coupling(shape: PotentialShape, m=1.0,
                      config: SolverConfig = DEFAULT) -> float:
    """Smallest coupling with a bound state, by zero-energy shooting.

    v1 is bracketed by the appearance of a node (or an asymptotically
    falling tail) in the E = 0 solution; pure Coulomb binds at any coupling,
    giving v1 = 0.
    """
    if shape.kind == "coulomb":
        return 0.0
    scale = shape.tail_scale()
    r_max = max(40.0, 30.0 / scale) if scale > 0 else 400.0
    prob = _RadialProblem(shape, m, r_max, config)
    if float(np.min(prob.fr)) >= 0.0:
        raise NoBindingError(
            f"{shape.describe()} is nowhere attractive; no coupling binds")

    def unbinds(v):
        return not _zero_energy_binds(prob, v)

    lo = 1e-8
    if not unbinds(lo):
        return 0.0
    hi = 1.0
    for _ in range(60):
        if not unbinds(hi):
            break
        lo = hi
        hi *= 2.0
        if hi > 1e8:
            raise NoBoundStateError(
                f"{shape.describe()} shows no binding up to coupling {hi:g}",
                evidence=_evidence(shape, hi, r_max, 0))
    while (hi - lo) > config.crit_rel_width * hi:
        mid = 0.5 * (lo + hi)
        if unbinds(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _zero_energy_binds(prob, v):
    """Bound-state indicator at E = 0: an interior node, or a tail already
    falling at the box edge (the free continuation a + b r then crosses zero
    at finite radius)."""
    rrf, h2_12 = prob.rrf, prob.h2_12
    t_prev = 1.0 - h2_12 * (0.25 + v * rrf[0])
    t_cur = 1.0 - h2_12 * (0.25 + v * rrf[1])
    y_prev, y_cur = prob._start(v)
    for i in range(2, prob.n + 1):
        t_next = 1.0 - h2_12 * (0.25 + v * rrf[i])
        y_next = ((12.0 - 10.0 * t_cur) * y_cur - t_prev * y_prev) / t_next
        if y_next * y_cur < 0.0:
            return True
        if abs(y_next) > 1e250:
            y_next *= 1e-250
            y_cur *= 1e-250
        y_prev, y_cur = y_cur, y_next
        t_prev, t_cur = t_cur, t_next
    u_end = y_cur * math.sqrt(prob.r[-1])
    u_prev = y_prev * math.sqrt(prob.r[-2])
    return u_end < u_prev or u_end < 0.0


def energy_lower_bound(shape: PotentialShape, v, m=1.0):
    """Rigorous floor min_r [1/(4 m r^2) + v f(r)] below the ground state."""
    if v <= 0:
        raise DomainError("coupling must be positive")
    res = golden_min(lambda r: 1.0 / (4.0 * m * r * r) + v * shape(r),
                     1e-4, 1e4)
    if res.at_boundary and res.arg > 1.0:
        raise ConvergenceError(
            "lower-bound minimization ran into the scan edge", residual=res.arg)
    return res.value

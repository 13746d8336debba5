"""Kinetic potentials, K-functions, and envelope energy bounds.

The ground-state curve F(v) of H = -(1/m)Delta + v f(r) and the kinetic
potential fbar(s) (the constrained mean of f at fixed mean kinetic energy s)
are Legendre duals of opposite convexity:

    F(v) = min_s [s + v fbar(s)]          fbar(s) = max_v [F(v)/v - s/v]
    fbar(s) = F'(v),  s = F(v) - v F'(v)  at matched points

Changing the kinetic variable s to a radius through the shape itself defines
the K-function K(r) = (fbar^-1 o f)(r), giving F(v) = min_r [K(r) + v f(r)],
and K(r) = max_v [F(v) - v f(r)].  For shapes written as g(h(r)) with g of
definite convexity, using the basis K-function yields one-sided spectral
bounds (upper bounds for concave g).

All maximizations run over the curve's evaluable coupling range; results
pinned to the top of that range are flagged, since they signal truncated
data rather than a true tangency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import SpectralCurve
from .errors import DomainError
from .interpolation import MonotoneCubic
from .optimize import ExtremumResult, golden_max, golden_min
from .shapes import PotentialShape
from ._text import num


def _scan_range(curve: SpectralCurve):
    lo, hi = curve.domain
    if lo <= 0.0:            # coulombic curves have no threshold; scan wide
        lo = hi * 1e-6
    return lo, hi


def kinetic_potential_from_curve(curve: SpectralCurve, s) -> ExtremumResult:
    """fbar(s) = max over v of [F(v)/v - s/v]; maximizer kept for diagnostics."""
    if s <= 0:
        raise DomainError("mean kinetic energy s must be positive")
    lo, hi = _scan_range(curve)
    return golden_max(lambda v: (curve.value(v) - s) / v, lo, hi)


def energy_from_kinetic_potential(kp: "KineticPotential", v) -> ExtremumResult:
    """F(v) = min over s of [s + v fbar(s)]."""
    if v <= 0:
        raise DomainError("coupling must be positive")
    lo, hi = kp.s_domain
    return golden_min(lambda s: s + v * kp.evaluate(s), lo, hi)


def energy_from_coupling_param(curve: SpectralCurve, v) -> ExtremumResult:
    """F(v) via the coupling as minimization parameter:

    F(v) = min over u of [F(u) - u F'(u) + v F'(u)]; for exactly concave F
    the tangent-line envelope touches at u = v.
    """
    if v <= 0:
        raise DomainError("coupling must be positive")
    lo, hi = _scan_range(curve)

    def objective(u):
        du = curve.derivative(u)
        return curve.value(u) - u * du + v * du

    return golden_min(objective, lo, hi)


def k_function_from_curve(curve: SpectralCurve, shape: PotentialShape,
                          r) -> ExtremumResult:
    """K(r) = max over v of [F(v) - v f(r)]."""
    if r <= 0:
        raise DomainError("radius must be positive")
    fr = float(shape(r))
    lo, hi = _scan_range(curve)
    return golden_max(lambda v: curve.value(v) - v * fr, lo, hi)


@dataclass
class KineticPotential:
    """fbar(s) samples plus an exact on-demand evaluator via the source curve."""

    s: np.ndarray
    fbar: np.ndarray
    source_curve: SpectralCurve | None = None
    source: str = ""
    boundary_hits: int = 0
    _interp: object = field(default=None, repr=False, compare=False)

    def evaluate(self, s) -> float:
        if self.source_curve is not None:
            return kinetic_potential_from_curve(self.source_curve, s).value
        if self._interp is None:
            self._interp = MonotoneCubic(np.log(self.s), self.fbar)
        return float(self._interp(math.log(s)))

    @property
    def s_domain(self):
        return float(self.s[0]), float(self.s[-1])

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(f"# kinetic potential from {self.source}\n")
            fh.write("x,y\n")
            for si, fi in zip(self.s, self.fbar):
                fh.write(f"{num(si)},{num(fi)}\n")


def kinetic_potential_curve(curve: SpectralCurve, s_grid=None,
                            n=64) -> KineticPotential:
    """Tabulate fbar over the dual image of the curve's coupling range."""
    if s_grid is None:
        lo, hi = _scan_range(curve)
        # s = F - v F' grows monotonically with v
        s_lo = max(curve.value(lo) - lo * curve.derivative(lo), 1e-12)
        s_hi = curve.value(hi) - hi * curve.derivative(hi)
        if s_hi <= s_lo:
            raise DomainError("curve has an empty dual kinetic range")
        s_grid = np.geomspace(s_lo, s_hi, n)
    s_grid = np.asarray(s_grid, dtype=float)
    vals, hits = [], 0
    for s in s_grid:
        res = kinetic_potential_from_curve(curve, s)
        vals.append(res.value)
        hits += res.at_upper
    return KineticPotential(s=s_grid, fbar=np.array(vals),
                            source_curve=curve, source=repr(curve),
                            boundary_hits=hits)


@dataclass
class KFunction:
    """K(r) samples with an evaluator; analytic for the Coulomb basis.

    Sampled K-functions interpolate log K against log r, which represents
    the positive decreasing power-law-like profiles of this class without
    convexity bias (exact for the Coulomb 1/r^2)."""

    r: np.ndarray
    K: np.ndarray
    source: str = ""
    _fn: object = field(default=None, repr=False)
    _interp: object = field(default=None, repr=False, compare=False)

    def evaluate(self, r) -> float:
        if self._fn is not None:
            return float(self._fn(float(r)))
        if self._interp is None:
            self._interp = MonotoneCubic(np.log(self.r),
                                         np.log(np.maximum(self.K, 1e-300)))
        return math.exp(float(self._interp(math.log(r))))

    @property
    def r_domain(self):
        return float(self.r[0]), float(self.r[-1])

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(f"# K-function from {self.source}\n")
            fh.write("x,y\n")
            for ri, Ki in zip(self.r, self.K):
                fh.write(f"{num(ri)},{num(Ki)}\n")


def k_function_curve(curve: SpectralCurve, shape: PotentialShape,
                     r_grid) -> KFunction:
    r_grid = np.asarray(r_grid, dtype=float)
    vals = [k_function_from_curve(curve, shape, r).value for r in r_grid]
    return KFunction(r=r_grid, K=np.array(vals),
                     source=f"{repr(curve)} with {shape.describe()}")


def coulomb_k_function(r_grid=None) -> KFunction:
    """Exact Coulomb K-function K(r) = 1/r^2 (from fbar = -sqrt(s))."""
    if r_grid is None:
        r_grid = np.geomspace(1e-3, 1e3, 61)
    r_grid = np.asarray(r_grid, dtype=float)
    return KFunction(r=r_grid, K=1.0 / (r_grid * r_grid),
                     source="coulomb (analytic)", _fn=lambda r: 1.0 / (r * r))


def envelope_energy_bound(k_basis: KFunction, shape: PotentialShape,
                          v) -> ExtremumResult:
    """Envelope energy min_r [K_basis(r) + v f(r)].

    A rigorous bound whenever the shape is a definite-convexity
    transformation of the basis: concave transformations (Yukawa or Hulthen
    over a Coulomb basis) give upper bounds on the true energy, convex ones
    lower bounds.  Exact when the shape is the basis itself.
    """
    if v <= 0:
        raise DomainError("coupling must be positive")
    lo, hi = k_basis.r_domain
    res = golden_min(lambda r: k_basis.evaluate(r) + v * float(shape(r)),
                     lo, hi)
    if res.at_lower and res.arg <= lo * 1.0001:
        raise DomainError(
            "envelope minimum not bracketed by the basis K-function samples")
    return res

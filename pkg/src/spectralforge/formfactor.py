"""Momentum-space form factors of ground states.

F(k) is the Fourier-Bessel transform of the normalized radial density,

    F(k) = (1/k) Integral_0^inf dr sin(k r)/r u^2(r) = Integral sinc(k r) u^2 dr,

so F(0) = 1 exactly for a normalized state.  The kernel sinc(k r) is
evaluated by series below k r = 1e-3 (no cancellation at small argument);
once k r_max exceeds 50 the integral is assembled per half-period of the
sine with composite Simpson inside each panel, which keeps large-k values
alias-free.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .eigensolver import (DEFAULT, RadialWavefunction, SolverConfig,
                          ground_state)
from .errors import DomainError
from .interpolation import MonotoneCubic
from .shapes import PotentialShape, ProblemSetup
from ._text import num

_OSCILLATORY_THRESHOLD = 50.0   # switch to per-half-period panels above this
_NORM_TOLERANCE = 1e-8


def _sinc(x):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < 1e-3
    xs = x[small]
    out[small] = 1.0 - xs * xs / 6.0 * (1.0 - xs * xs / 20.0)
    out[~small] = np.sin(x[~small]) / x[~small]
    return out


@dataclass
class FormFactorCurve:
    """Sampled F(k) with provenance metadata for the JSON sidecar."""

    k: np.ndarray
    F: np.ndarray
    source: str = ""
    meta: dict = field(default_factory=dict)

    def value(self, k):
        return float(np.interp(k, self.k, self.F))

    def to_csv(self, path, meta_path=None):
        with open(path, "w", newline="") as fh:
            fh.write("k,F\n")
            for ki, Fi in zip(self.k, self.F):
                fh.write(f"{num(ki)},{num(Fi)}\n")
        if meta_path:
            payload = dict(self.meta)
            payload["source"] = self.source
            with open(meta_path, "w") as fh:
                json.dump(payload, fh, indent=2, sort_keys=True)


def form_factor(wf: RadialWavefunction, k_grid) -> FormFactorCurve:
    """Form factor of a normalized state on the given momenta (k >= 0)."""
    k_grid = np.asarray(k_grid, dtype=float)
    if np.any(k_grid < 0):
        raise DomainError("momenta must be non-negative")
    norm = wf.norm()
    if abs(norm - 1.0) > _NORM_TOLERANCE:
        raise DomainError(
            f"wavefunction must be normalized; measured norm {norm:.10f}")
    r = wf.r
    u2 = wf.u * wf.u
    hx = math.log(r[1] / r[0])
    w = np.ones(len(r))
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    density_interp = MonotoneCubic(r, u2) if len(r) >= 2 else None
    r_max = float(r[-1])
    decay = 1.0 / math.sqrt(wf.m * abs(wf.energy))   # density length scale
    out = np.empty_like(k_grid)
    for i, k in enumerate(k_grid):
        if k * r_max <= _OSCILLATORY_THRESHOLD:
            # log-grid Simpson: integrand sinc(k r) u^2(r) r dx
            out[i] = float(np.dot(w, _sinc(k * r) * u2 * r) * hx / 3.0)
        else:
            out[i] = _oscillatory_panels(density_interp, r[0], r_max, k,
                                         decay)
    meta = {"v": wf.v, "m": wf.m, "energy": wf.energy,
            "norm_residual": abs(norm - 1.0),
            "tail_bound": wf.tail_bound}
    return FormFactorCurve(k=k_grid, F=out, source="radial density", meta=meta)


def _oscillatory_panels(density, r_lo, r_hi, k, decay):
    """Integrate sinc(k r) u^2(r) per half-period of sin with Simpson.

    Each panel spans at most half a period of sin(k r); the Simpson node
    count inside also resolves the density's decay length, so neither the
    oscillation nor the bound-state peak is aliased.
    """
    half = math.pi / k
    per_unit = 48.0 / decay          # nodes per unit r to resolve the density
    total = 0.0
    a = r_lo
    while a < r_hi:
        b = min(a + half, r_hi)
        n = max(8, int(math.ceil((b - a) * per_unit)))
        n += n % 2
        xs = np.linspace(a, b, n + 1)
        ys = _sinc(k * xs) * density(xs)
        wts = np.ones(n + 1)
        wts[1:-1:2], wts[2:-1:2] = 4.0, 2.0
        total += float(np.dot(wts, ys)) * (b - a) / n / 3.0
        a = b
    return total


def ground_state_form_factor(shape: PotentialShape, v, m=1.0, k_grid=None,
                             config: SolverConfig = DEFAULT) -> FormFactorCurve:
    """Solve the ground state of (shape, v, m) and transform its density."""
    if k_grid is None:
        k_grid = np.linspace(0.0, 10.0, 200)
    gs = ground_state(shape, ProblemSetup(m=m, v=v), config)
    curve = form_factor(gs.wavefunction, k_grid)
    curve.source = f"{shape.describe()} at v={v:g}, m={m:g}"
    return curve


def half_maximum_crossing(curve: FormFactorCurve) -> float:
    """First momentum where F(k) falls through 1/2 (linear interpolation)."""
    F, k = curve.F, curve.k
    below = np.nonzero(F <= 0.5)[0]
    if len(below) == 0 or below[0] == 0:
        raise DomainError("form factor never crosses one half on this k grid")
    j = below[0]
    t = (0.5 - F[j - 1]) / (F[j] - F[j - 1])
    return float(k[j - 1] + t * (k[j] - k[j - 1]))


def mean_square_radius(wf: RadialWavefunction) -> float:
    """<r^2> of the radial density (sets the small-k curvature of F)."""
    return wf.density_moment(2)

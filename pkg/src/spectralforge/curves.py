"""Spectral curves E = F(v): ground-state energy versus coupling.

A curve is concave and strictly decreasing on its sampled range.  Below the
first sample it is continued by a concave quadratic bridge pinned to the
critical coupling, q(v1) = 0, matching value and slope at the first sample;
when v1 comes from tangent extrapolation of the data the bridge degenerates
to the tangent line.  Above the last sample evaluation is refused: concave
data must not be extrapolated upward.
"""

from __future__ import annotations

import csv

import numpy as np

from .errors import BadDataError, InsufficientDataError, OutOfRangeError
from .interpolation import MonotoneCubic
from ._text import num

_CONCAVITY_SLACK_REL = 1e-9   # allowed growth of successive secants ...
_CONCAVITY_SLACK_ABS = 1e-6   # ... relative part plus solver-noise floor


class SpectralCurve:
    """Concave decreasing map v -> F(v) with critical-coupling anchor."""

    def __init__(self, couplings, energies, slopes=None, v1=None,
                 v1_is_estimate=None, provenance="dataset", validate=True):
        v = np.asarray(couplings, dtype=float)
        E = np.asarray(energies, dtype=float)
        if v.ndim != 1 or v.shape != E.shape:
            raise BadDataError("couplings and energies must be 1-d and equal length")
        if len(v) < 2:
            raise InsufficientDataError("need at least 2 (v, E) samples")
        order = np.argsort(v)
        v, E = v[order], E[order]
        if slopes is not None:
            slopes = np.asarray(slopes, dtype=float)[order]
        if validate:
            self._validate(v, E)
        self.v = v
        self.E = E
        self.provenance = provenance
        self.interp = MonotoneCubic(v, E, slopes=slopes)
        F0 = E[0]
        Fp0 = slopes[0] if slopes is not None else self._left_slope()
        if v1 is None:
            # tangent root of the first sample; an estimate, flagged as such
            v1 = v[0] - F0 / Fp0
            if v1_is_estimate is None:
                v1_is_estimate = True
        self.v1 = max(float(v1), 0.0)
        self.v1_is_estimate = bool(v1_is_estimate)
        if np.any(self.v <= self.v1):
            raise BadDataError(
                f"sampled couplings must exceed the critical coupling {self.v1:g}")
        # concave quadratic bridge on [v1, v[0]]: q(v1) = 0, C^1 at v[0]
        w = v[0] - self.v1
        self._bridge_A = (Fp0 - F0 / w) / w
        self._bridge_B = 2.0 * F0 / w - Fp0

    @staticmethod
    def _validate(v, E):
        if np.any(np.diff(v) <= 0):
            raise BadDataError("couplings must be strictly increasing")
        if np.any(np.diff(E) >= 0):
            rows = [i for i in range(len(E) - 1) if E[i + 1] >= E[i]]
            raise BadDataError("energies must be strictly decreasing in v",
                               rows=rows)
        sec = np.diff(E) / np.diff(v)
        scale = np.abs(sec[:-1]) + np.abs(sec[1:])
        slack = _CONCAVITY_SLACK_REL * scale + _CONCAVITY_SLACK_ABS
        bad = np.nonzero(np.diff(sec) > slack)[0]
        if len(bad):
            i = int(bad[0])
            triple = [(float(v[i + k]), float(E[i + k])) for k in range(3)]
            raise BadDataError(
                f"data not concave: secants increase across points {triple}",
                rows=triple)

    def _left_slope(self):
        eps = 1e-7 * self.v[0]
        return (self.interp(self.v[0] + eps) - self.E[0]) / eps

    # -- evaluation -----------------------------------------------------------

    @property
    def hull(self):
        """Sampled coupling range (v_min, v_max)."""
        return float(self.v[0]), float(self.v[-1])

    @property
    def domain(self):
        """Evaluable range: bridge from v1 up to the last sample."""
        lo = self.v1 if self.v1 > 0.0 else float(self.v[0])
        return lo, float(self.v[-1])

    def value(self, u):
        u = float(u)
        if u >= self.v[0]:
            if u > self.v[-1] * (1.0 + 1e-12):
                raise OutOfRangeError(
                    f"coupling {u:g} above sampled range {self.hull[1]:g}; "
                    "concave data is not extrapolated")
            return float(self.interp(min(u, self.v[-1])))
        if u >= self.v1 > 0.0:
            d = u - self.v1
            return (self._bridge_A * d + self._bridge_B) * d
        raise OutOfRangeError(
            f"coupling {u:g} below evaluable range {self.domain[0]:g}")

    def __call__(self, u):
        return self.value(u)

    def derivative(self, u, rel_step=1e-3):
        """dF/dv by centered differences on the interpolant/bridge."""
        u = float(u)
        lo, hi = self.domain
        h = max(rel_step * abs(u), 1e-12)
        a, b = u - h, u + h
        if a < lo:
            a = u
        if b > hi:
            b = u
        if a == b:
            raise OutOfRangeError("cannot differentiate at an empty interval")
        return (self.value(b) - self.value(a)) / (b - a)

    def __repr__(self):
        lo, hi = self.hull
        return (f"SpectralCurve<{self.provenance}, {len(self.v)} samples on "
                f"[{lo:g}, {hi:g}], v1={self.v1:g}"
                f"{' (est)' if self.v1_is_estimate else ''}>")

    # -- file interface -------------------------------------------------------

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write("v,E\n")
            for vi, Ei in zip(self.v, self.E):
                fh.write(f"{num(vi)},{num(Ei)}\n")

    @classmethod
    def from_csv(cls, path_or_text, provenance="dataset", **kwargs):
        if hasattr(path_or_text, "read"):
            rows = list(csv.reader(path_or_text))
        else:
            with open(path_or_text, newline="") as fh:
                rows = list(csv.reader(fh))
        if not rows or [c.strip() for c in rows[0][:2]] != ["v", "E"]:
            raise BadDataError("curve CSV must start with header 'v,E'")
        data = [(float(a), float(b)) for a, b, *_ in rows[1:] if a.strip()]
        if len(data) < 2:
            raise InsufficientDataError("curve CSV needs at least 2 rows")
        v = [a for a, _ in data]
        E = [b for _, b in data]
        return cls(v, E, provenance=provenance, **kwargs)


class AnalyticCurve(SpectralCurve):
    """Curve defined by closed-form F(v), F'(v); samples only guide scans."""

    def __init__(self, fn, dfn, v1, hull=(1e-2, 1e2), provenance="analytic",
                 n_samples=33):
        self._fn = fn
        self._dfn = dfn
        lo, hi = hull
        vs = np.geomspace(max(lo, v1 * (1 + 1e-9)) if v1 > 0 else lo, hi,
                          n_samples)
        super().__init__(vs, [fn(v) for v in vs], slopes=[dfn(v) for v in vs],
                         v1=v1, v1_is_estimate=False, provenance=provenance,
                         validate=False)

    def value(self, u):
        u = float(u)
        if u < self.v1 or (u <= 0.0 and self.v1 == 0.0):
            raise OutOfRangeError(f"coupling {u:g} below threshold {self.v1:g}")
        return float(self._fn(u))

    def derivative(self, u, rel_step=None):
        return float(self._dfn(float(u)))


def coulomb_curve(hull=(1e-2, 1e2)):
    """Exact ground-state curve of the Coulomb shape: F(v) = -v^2/4."""
    return AnalyticCurve(lambda v: -0.25 * v * v, lambda v: -0.5 * v,
                         v1=0.0, hull=hull)


def hulthen_curve(a=1.0, hull=None):
    """Exact ground-state curve of the Hulthen shape (a=1): F = -((v-1)/2)^2.

    General a by scaling: F(v, a) = -((v/a - a)/2)^2 for v > a^2.
    """
    v1 = a * a
    if hull is None:
        hull = (v1 * 1.02, v1 * 100.0)
    return AnalyticCurve(
        lambda v: -0.25 * (v / a - a) ** 2,
        lambda v: -0.5 * (v / a - a) / a,
        v1=v1, hull=hull)

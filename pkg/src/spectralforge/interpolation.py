"""Shape-preserving cubic Hermite interpolation.

The interpolant uses parabolic (three-point) slope estimates clamped into the
bracket of adjacent secants, so monotone data yields a monotone interpolant
and concave data keeps every interval midpoint above its chord.  Quadratic
data is reproduced exactly, which matters for Coulomb-like spectral curves
F(v) = -v^2/4.  Exact slopes (e.g. Hellmann-Feynman derivatives of a solved
spectrum) may be supplied to bypass the estimates.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidShapeError


class MonotoneCubic:
    """Piecewise-cubic Hermite interpolant through (x, y) with safe slopes."""

    def __init__(self, x, y, slopes=None):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape or len(x) < 2:
            raise InvalidShapeError("need two or more (x, y) knots of equal length")
        if np.any(np.diff(x) <= 0):
            raise InvalidShapeError("knots must be strictly increasing in x")
        h = np.diff(x)
        d = np.diff(y) / h
        if slopes is not None:
            m = np.asarray(slopes, dtype=float)
            if m.shape != y.shape:
                raise InvalidShapeError("slopes must match the knot count")
        else:
            m = self._estimate_slopes(h, d, y)
        self.x = x
        self.y = y
        self.h = h
        self.secants = d
        self.m = m

    @staticmethod
    def _estimate_slopes(h, d, y):
        n = len(y)
        m = np.empty(n)
        if n == 2:
            m[:] = d[0]
            return m
        # interior: h-weighted parabolic mean, exact for quadratics
        m[1:-1] = (h[1:] * d[:-1] + h[:-1] * d[1:]) / (h[:-1] + h[1:])
        m[0] = d[0] + h[0] * (d[0] - d[1]) / (h[0] + h[1])
        m[-1] = d[-1] + h[-1] * (d[-1] - d[-2]) / (h[-1] + h[-2])
        # clamp interior slopes into adjacent-secant brackets (shape keeping)
        lo = np.minimum(d[:-1], d[1:])
        hi = np.maximum(d[:-1], d[1:])
        m[1:-1] = np.clip(m[1:-1], lo, hi)
        # Fritsch-Carlson: zero slope across secant sign changes, magnitude
        # at most three times the smaller adjacent secant
        for i in range(1, n - 1):
            if d[i - 1] * d[i] <= 0.0:
                m[i] = 0.0
            else:
                cap = 3.0 * min(abs(d[i - 1]), abs(d[i]))
                if abs(m[i]) > cap:
                    m[i] = math.copysign(cap, d[i])
        for i, dd in ((0, d[0]), (n - 1, d[-1])):
            if m[i] * dd <= 0.0:
                m[i] = 0.0
            elif abs(m[i]) > 3.0 * abs(dd):
                m[i] = 3.0 * dd
        return m

    def _locate(self, xq):
        i = np.searchsorted(self.x, xq, side="right") - 1
        return np.clip(i, 0, len(self.h) - 1)

    def __call__(self, xq):
        xq = np.asarray(xq, dtype=float)
        scalar = xq.ndim == 0
        xq = np.atleast_1d(xq)
        i = self._locate(xq)
        t = (xq - self.x[i]) / self.h[i]
        t2 = t * t
        t3 = t2 * t
        h00 = 2 * t3 - 3 * t2 + 1
        h10 = t3 - 2 * t2 + t
        h01 = -2 * t3 + 3 * t2
        h11 = t3 - t2
        out = (h00 * self.y[i] + h10 * self.h[i] * self.m[i]
               + h01 * self.y[i + 1] + h11 * self.h[i] * self.m[i + 1])
        return float(out[0]) if scalar else out

    def derivative(self, xq):
        """Derivative of the interpolant (analytic within each interval)."""
        xq = np.asarray(xq, dtype=float)
        scalar = xq.ndim == 0
        xq = np.atleast_1d(xq)
        i = self._locate(xq)
        t = (xq - self.x[i]) / self.h[i]
        dh00 = (6 * t * t - 6 * t) / self.h[i]
        dh10 = 3 * t * t - 4 * t + 1
        dh01 = -dh00
        dh11 = 3 * t * t - 2 * t
        out = (dh00 * self.y[i] + dh10 * self.m[i]
               + dh01 * self.y[i + 1] + dh11 * self.m[i + 1])
        return float(out[0]) if scalar else out

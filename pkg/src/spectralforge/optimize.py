"""One-dimensional extremum search: coarse log scan, then golden section.

All dual transformations in this package maximize or minimize unimodal
objectives over positive arguments.  A 64-point logarithmic scan brackets the
extremum (guarding against flat stretches), golden-section refines to a
relative width of 1e-8, ties break toward the smaller argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExtremumResult:
    """Location/value of a 1-d extremum plus boundary diagnostics."""

    arg: float
    value: float
    at_lower: bool = False
    at_upper: bool = False

    @property
    def at_boundary(self) -> bool:
        return self.at_lower or self.at_upper

    def __float__(self) -> float:
        return self.value


def golden_max(fn, lo, hi, n_scan=64, rel_tol=1e-8, log_scan=True):
    """Maximize fn on [lo, hi]; returns an ExtremumResult.

    ``at_lower``/``at_upper`` flag an extremum pinned to the interval edge,
    which for hull-clamped spectral maximizations signals truncated data
    rather than an interior tangency.
    """
    if not (hi > lo):
        raise DomainError(f"empty search interval [{lo}, {hi}]")
    if log_scan and lo <= 0.0:
        log_scan = False
    xs = np.geomspace(lo, hi, n_scan) if log_scan else np.linspace(lo, hi, n_scan)
    vals = [fn(float(x)) for x in xs]
    i = int(np.argmax(vals))
    at_lower = i == 0
    at_upper = i == n_scan - 1
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, n_scan - 1)])
    best_x, best_v = float(xs[i]), vals[i]

    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    scale = max(abs(a), abs(b), 1e-300)
    while (b - a) > rel_tol * scale:
        if fc >= fd:          # ties shrink toward the smaller argument
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
        scale = max(abs(a), abs(b), 1e-300)
    if fc >= fd:
        x, v = c, fc
    else:
        x, v = d, fd
    if v < best_v:
        x, v = best_x, best_v
    return ExtremumResult(arg=x, value=v, at_lower=at_lower, at_upper=at_upper)


def golden_min(fn, lo, hi, **kwargs):
    """Minimize fn on [lo, hi]; see golden_max."""
    res = golden_max(lambda x: -fn(x), lo, hi, **kwargs)
    return ExtremumResult(arg=res.arg, value=-res.value,
                          at_lower=res.at_lower, at_upper=res.at_upper)

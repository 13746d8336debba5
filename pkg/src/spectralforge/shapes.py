"""Radial potential shapes f(r) and their evaluation.

The admissible family is f(r) = g(r)/r with g(0) < 0 and g non-decreasing:
monotone shapes no more singular than Coulomb at the origin.  Built-ins:

    coulomb          f(r) = -1/r
    yukawa(mu)       f(r) = -exp(-mu r)/r
    hulthen(a)       f(r) = -1/(exp(a r) - 1)
    tabulated        monotone-cubic through knots, coulombic core below the
                     first knot, exponential-family tail beyond the last

The full interaction is v*f(r) with dimensionless coupling v > 0; the radial
equation carries kinetic coefficient 1/m (default m = 1).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidShapeError, OutOfRangeError
from .interpolation import MonotoneCubic
from ._text import num

_HULTHEN_SERIES_R = 1e-4    # below this, 1/(e^t - 1) by series to avoid cancellation


@dataclass(frozen=True)
class ProblemSetup:
    """Mass/coupling pair for -(1/m) u'' + v f(r) u = E u."""

    m: float = 1.0
    v: float = 1.0

    def __post_init__(self):
        if self.m <= 0:
            raise DomainError(f"constituent mass must be positive, got {self.m}")
        if self.v <= 0:
            raise DomainError(f"coupling must be positive, got {self.v}")


class PotentialShape:
    """A radial shape f(r); analytic kind or tabulated knots.

    Attributes
    ----------
    kind : 'coulomb' | 'yukawa' | 'hulthen' | 'tabulated'
    singularity_class : 'coulombic' | 'bounded'
    strength_at_origin : limit of r*f(r) as r -> 0 (negative for coulombic)
    """

    def __init__(self, kind, mu=None, a=None, table=None,
                 singularity_class=None):
        self.kind = kind
        self.mu = mu
        self.a = a
        self._interp = None
        self._core = None
        self._tail = None
        if kind == "coulomb":
            self.strength_at_origin = -1.0
            self.origin_offset = 0.0
            self.singularity_class = "coulombic"
        elif kind == "yukawa":
            if mu is None or mu <= 0:
                raise InvalidShapeError("yukawa needs exchange mass mu > 0")
            self.strength_at_origin = -1.0
            self.origin_offset = mu            # -exp(-mu r)/r = -1/r + mu - ...
            self.singularity_class = "coulombic"
        elif kind == "hulthen":
            if a is None or a <= 0:
                raise InvalidShapeError("hulthen needs screening parameter a > 0")
            self.strength_at_origin = -1.0 / a
            self.origin_offset = 0.5           # -1/(e^{ar}-1) = -1/(ar) + 1/2 - ...
            self.singularity_class = "coulombic"
        elif kind == "tabulated":
            if table is None:
                raise InvalidShapeError("tabulated shape with empty table")
            r, f = table
            r = np.asarray(r, dtype=float)
            f = np.asarray(f, dtype=float)
            if len(r) < 2:
                raise InvalidShapeError("tabulated shape needs >= 2 knots")
            if np.any(np.diff(r) <= 0):
                raise InvalidShapeError("table knots must be strictly increasing")
            if r[0] <= 0:
                raise InvalidShapeError("table radii must be positive")
            self.table_r = r
            self.table_f = f
            # interpolate g(r) = r f(r) against ln r: g is the smooth factor
            # of the admissible class f = g(r)/r, so Coulomb-like cores cost
            # no interpolation accuracy; g non-decreasing with g <= 0 keeps
            # f monotone automatically
            self._interp = MonotoneCubic(np.log(r), r * f)
            self._fit_core()
            self._fit_tail()
            self.singularity_class = (
                singularity_class
                or ("coulombic" if self._core[0] < 0 else "bounded"))
            self.strength_at_origin = (
                self._core[0] if self.singularity_class == "coulombic" else 0.0)
            self.origin_offset = self._core[1]
        else:
            raise InvalidShapeError(f"unknown shape kind {kind!r}")

    # -- tabulated-shape extension models -----------------------------------

    def _fit_core(self):
        # g0/r + c0 through the first two knots: the two-term expansion of
        # the singular class g(r)/r near the origin
        r0, r1 = self.table_r[0], self.table_r[1]
        f0, f1 = self.table_f[0], self.table_f[1]
        g0 = (f0 - f1) / (1.0 / r0 - 1.0 / r1)
        if g0 < 0.0:
            self._core = (g0, f0 - g0 / r0)
        else:
            self._core = (0.0, f0)       # bounded at the origin: hold

    def _fit_tail(self):
        # c exp(-b r)/r through the last two knots when the values are
        # negative and rising toward zero; b clamped to [0, 100/rN] so a
        # noisy fit can never produce a growing tail.  Otherwise hold.
        ra, rb = self.table_r[-2], self.table_r[-1]
        fa, fb = self.table_f[-2], self.table_f[-1]
        self._tail = None
        if fb < 0.0 and fa <= fb:
            b = math.log((fa * ra) / (fb * rb)) / (rb - ra)
            if math.isfinite(b) and b < 100.0 / rb:
                b = max(b, 0.0)
                self._tail = (b, fb * rb * math.exp(b * rb))

    # -- evaluation ----------------------------------------------------------

    def __call__(self, r):
        r_arr = np.asarray(r, dtype=float)
        scalar = r_arr.ndim == 0
        r_arr = np.atleast_1d(r_arr)
        if np.any(r_arr <= 0.0):
            raise DomainError("potential shapes are defined for r > 0")
        if self.kind == "coulomb":
            out = -1.0 / r_arr
        elif self.kind == "yukawa":
            out = -np.exp(-self.mu * r_arr) / r_arr
        elif self.kind == "hulthen":
            out = self._eval_hulthen(r_arr)
        else:
            out = self._eval_tabulated(r_arr)
        return float(out[0]) if scalar else out

    def _eval_hulthen(self, r):
        t = self.a * r
        out = np.empty_like(r)
        small = r < _HULTHEN_SERIES_R
        ts = t[small]
        # 1/(e^t - 1) = 1/t - 1/2 + t/12 + O(t^3)
        out[small] = -(1.0 / ts - 0.5 + ts / 12.0)
        out[~small] = -1.0 / np.expm1(np.minimum(t[~small], 700.0))
        return out

    def _eval_tabulated(self, r):
        out = np.empty_like(r)
        below = r < self.table_r[0]
        above = r > self.table_r[-1]
        mid = ~(below | above)
        out[mid] = self._interp(np.log(r[mid])) / r[mid]
        g0, c0 = self._core
        out[below] = g0 / r[below] + c0
        if self._tail is not None:
            b, c = self._tail
            out[above] = c * np.exp(-b * r[above]) / r[above]
        else:
            out[above] = self.table_f[-1]
        return out

    # -- metadata for solver policies ----------------------------------------

    def tail_scale(self):
        """Approximate exponential decay rate of the shape's tail (0 = none)."""
        if self.kind == "coulomb":
            return 0.0
        if self.kind == "yukawa":
            return self.mu
        if self.kind == "hulthen":
            return self.a
        return self._tail[0] if self._tail is not None else 0.0

    def describe(self):
        if self.kind == "yukawa":
            return f"yukawa(mu={self.mu:g})"
        if self.kind == "hulthen":
            return f"hulthen(a={self.a:g})"
        if self.kind == "tabulated":
            return (f"tabulated({len(self.table_r)} knots on "
                    f"[{self.table_r[0]:g}, {self.table_r[-1]:g}])")
        return self.kind

    def __repr__(self):
        return f"PotentialShape<{self.describe()}>"


def coulomb():
    return PotentialShape("coulomb")


def yukawa(mu):
    return PotentialShape("yukawa", mu=mu)


def hulthen(a=1.0):
    return PotentialShape("hulthen", a=a)


def tabulated(r, f, singularity_class=None):
    return PotentialShape("tabulated", table=(r, f),
                          singularity_class=singularity_class)


def eval_potential(shape: PotentialShape, r):
    """Functional form of shape evaluation; r > 0 required."""
    return shape(r)


# -- file interface ----------------------------------------------------------

def shape_to_csv(shape: PotentialShape, path):
    """Write a tabulated shape (or any shape sampled on its grid) as 'r,f'."""
    if shape.kind != "tabulated":
        raise InvalidShapeError("only tabulated shapes have a canonical table")
    with open(path, "w", newline="") as fh:
        fh.write("r,f\n")
        for r, f in zip(shape.table_r, shape.table_f):
            fh.write(f"{num(r)},{num(f)}\n")


def shape_from_csv(path_or_text, singularity_class=None):
    """Load a tabulated shape from two-column CSV with header 'r,f'."""
    if hasattr(path_or_text, "read"):
        fh = path_or_text
        rows = list(csv.reader(fh))
    else:
        with open(path_or_text, newline="") as fh:
            rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0][:2]] != ["r", "f"]:
        raise InvalidShapeError("shape CSV must start with header 'r,f'")
    data = [(float(a), float(b)) for a, b, *_ in rows[1:] if a.strip()]
    if not data:
        raise InvalidShapeError("tabulated shape with empty table")
    r = np.array([a for a, _ in data])
    f = np.array([b for _, b in data])
    return tabulated(r, f, singularity_class=singularity_class)


def shape_from_spec(text):
    """Parse a shape mini-spec: 'coulomb', 'yukawa:mu=0.5', 'table:path.csv'."""
    name, _, rest = text.partition(":")
    name = name.strip().lower()
    if name == "coulomb":
        return coulomb()
    if name in ("yukawa", "hulthen"):
        params = {}
        for item in filter(None, (p.strip() for p in rest.split(","))):
            key, _, val = item.partition("=")
            if not val:
                raise InvalidShapeError(f"malformed shape parameter {item!r}")
            params[key.strip()] = float(val)
        if name == "yukawa":
            return yukawa(params.get("mu", 1.0))
        return hulthen(params.get("a", 1.0))
    if name == "table":
        if not rest:
            raise InvalidShapeError("table shape needs a CSV path: 'table:path.csv'")
        return shape_from_csv(rest)
    raise InvalidShapeError(f"unknown shape spec {text!r}")


# -- field-theory coupling map and scaling law ------------------------------

def coupling_from_field_theory(g1, g2, m1, m2):
    """Effective Schroedinger coupling from boson-exchange field theory.

    One-boson exchange between scalar constituents of masses m1, m2 with
    vertex strengths g1, g2 gives the Yukawa interaction v = g1 g2/(16 pi m1 m2).
    """
    if m1 <= 0 or m2 <= 0:
        raise DomainError("constituent masses must be positive")
    return g1 * g2 / (16.0 * math.pi * m1 * m2)


def scaled_energy(curve, mass_ratio, v, m=1.0):
    """Energy at exchange mass mu2 from the curve at mu1 = R*mu2.

    For shapes of the family f(mu r)/r the spectrum obeys the scaling law
    E2(v) = F1(R v)/R^2 with R = mu1/mu2 (the constituent mass drops out when
    both curves share the same kinetic convention).  The scaled coupling must
    stay inside the curve's trusted range; no silent extrapolation.
    """
    if mass_ratio <= 0:
        raise DomainError("mass ratio must be positive")
    if m <= 0:
        raise DomainError("constituent mass must be positive")
    w = mass_ratio * v
    lo, hi = curve.hull
    if not (lo <= w <= hi):
        raise OutOfRangeError(
            f"scaled coupling {w:g} outside curve range [{lo:g}, {hi:g}]")
    return curve.value(w) / mass_ratio**2


def unit_curve_energy(curve_unit, mu, v, m=1.0):
    """Energy for kinetic coefficient 1/m and shape f(mu r)/r from the
    mass-free unit curve of -Laplacian + w f(r)/r:  E = (mu^2/m) F(m v / mu)."""
    if mu <= 0 or m <= 0:
        raise DomainError("mu and m must be positive")
    w = m * v / mu
    lo, hi = curve_unit.hull
    if not (lo <= w <= hi):
        raise OutOfRangeError(
            f"scaled coupling {w:g} outside curve range [{lo:g}, {hi:g}]")
    return (mu * mu / m) * curve_unit.value(w)

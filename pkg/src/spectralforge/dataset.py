"""Bundled two-scalar-boson bound-state spectra and the scaling comparison.

Couplings v and binding energies E from published Minkowski-space
Bethe-Salpeter calculations for two scalar constituents of common mass m = 1
exchanging a scalar of mass mu, in ladder and ladder-plus-cross-ladder
kernel truncations, plus the couplings of the nonrelativistic-limit
Schroedinger equation with the matching Yukawa potential.  Values are carried
with the published decimals; the missing ladder mu=0.15 row at E = -0.05 is
represented explicitly, never imputed.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field

import numpy as np

from .curves import SpectralCurve
from .errors import BadDataError, DomainError, InsufficientDataError
from ._text import num

ENERGY_LEVELS = (-0.01, -0.05, -0.10, -0.20, -0.50, -1.00)

# series -> (exchange mass, couplings aligned with ENERGY_LEVELS, None = missing)
_SERIES = {
    "ladder-0.15": (0.15, (0.5716, None, 1.437, 2.100, 3.611, 5.315)),
    "ladder-0.5": (0.50, (1.440, 2.01, 2.498, 3.251, 4.901, 6.712)),
    "lcl-0.5": (0.50, (1.21, 1.62, 1.93, 2.42, 3.47, 4.56)),
    "yukawa-0.5": (0.50, (1.034, 1.285, 1.532, 1.848, 2.204, 2.918)),
}

SERIES_NAMES = tuple(_SERIES)


@dataclass(frozen=True)
class BSDataset:
    """Immutable view of the bundled (series, mu, v, E) table."""

    series: dict = field(default_factory=dict)
    m: float = 1.0

    def couplings(self, name):
        mu, vs = self.series[name]
        return [(v, E) for v, E in zip(vs, ENERGY_LEVELS) if v is not None]

    def mu(self, name):
        return self.series[name][0]

    def lookup(self, name, energy):
        """Coupling at one tabulated energy; None marks a missing row."""
        mu, vs = self.series[name]
        for v, E in zip(vs, ENERGY_LEVELS):
            if abs(E - energy) < 1e-12:
                return v
        raise DomainError(f"energy {energy} is not a tabulated level")

    def checksum(self):
        """SHA-256 over the canonical decimal representation."""
        parts = []
        for name in SERIES_NAMES:
            mu, vs = self.series[name]
            row = ",".join("missing" if v is None else num(v) for v in vs)
            parts.append(f"{name}:{num(mu)}:{row}")
        canon = "|".join(parts) + f"|E:{','.join(repr(e) for e in ENERGY_LEVELS)}"
        return hashlib.sha256(canon.encode()).hexdigest()

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write("series,mu,v,E\n")
            for name in SERIES_NAMES:
                mu, vs = self.series[name]
                for v, E in zip(vs, ENERGY_LEVELS):
                    if v is not None:
                        fh.write(f"{name},{num(mu)},{num(v)},{num(E)}\n")


def builtin_dataset() -> BSDataset:
    return BSDataset(series=dict(_SERIES))


def dataset_from_csv(path_or_text) -> dict:
    """Read 'series,mu,v,E' rows into {name: (mu, [(v, E), ...])}."""
    if hasattr(path_or_text, "read"):
        rows = list(csv.reader(path_or_text))
    else:
        with open(path_or_text, newline="") as fh:
            rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0][:4]] != ["series", "mu", "v", "E"]:
        raise BadDataError("dataset CSV must start with header 'series,mu,v,E'")
    out = {}
    for name, mu, v, E, *_ in rows[1:]:
        if not name.strip():
            continue
        entry = out.setdefault(name.strip(), (float(mu), []))
        entry[1].append((float(v), float(E)))
    return out


def curve_from_points(points, energies=None, provenance="dataset",
                      v1=None) -> SpectralCurve:
    """Concave monotone spectral curve through discrete (v, E) data.

    Accepts a list of pairs or two parallel sequences.  The critical
    coupling, unless given, is the tangent-root estimate of the first sample
    and is flagged as an estimate on the curve.  Raw concavity violations are
    rejected with the offending triple.
    """
    if energies is not None:
        v = np.asarray(points, dtype=float)
        E = np.asarray(energies, dtype=float)
    else:
        pts = [(float(a), float(b)) for a, b in points]
        v = np.array([a for a, _ in pts])
        E = np.array([b for _, b in pts])
    if len(v) < 3:
        raise InsufficientDataError("need at least 3 points for a curve")
    return SpectralCurve(v, E, v1=v1, provenance=provenance)


def builtin_curve(name, dataset: BSDataset | None = None) -> SpectralCurve:
    """Spectral curve of one bundled series."""
    ds = dataset or builtin_dataset()
    pts = ds.couplings(name)
    return curve_from_points(pts)


@dataclass(frozen=True)
class ScalingRow:
    """One row of the exchange-mass scaling comparison."""

    v: float                  # coupling at the target (smaller) exchange mass
    e_scaled: float | None    # prediction F1(R v)/R^2 from the base series
    e_actual: float | None    # target-series value (interpolated), if in hull
    in_hull: bool
    source: str               # 'base-knot' (exact decimals) or 'target-row'

    @property
    def discrepancy(self):
        if self.e_actual is None or self.e_scaled is None:
            return None
        return self.e_actual - self.e_scaled


def scaling_comparison(base_curve: SpectralCurve, target_curve: SpectralCurve,
                       mass_ratio, base_points=None, target_points=None):
    """Exchange-mass scaling comparison E2(v) ~ F1(R v)/R^2.

    Two row families: base-series knots mapped down to v/R (the prediction is
    then exact in the tabulated decimals), and target-series rows compared
    against the interpolated base curve at R v.  Rows falling outside the
    relevant hull are flagged, not extrapolated.
    """
    if mass_ratio <= 0:
        raise DomainError("mass ratio must be positive")
    R = float(mass_ratio)
    inv = 1.0 / R          # multiplying by mu2/mu1 keeps decimal knots exact
    rows = []
    base_pts = base_points if base_points is not None \
        else list(zip(base_curve.v, base_curve.E))
    target_pts = target_points if target_points is not None \
        else list(zip(target_curve.v, target_curve.E))
    tlo, thi = target_curve.hull
    for w, E in base_pts:
        v = w * inv
        in_hull = tlo <= v <= thi
        e_actual = float(target_curve.value(v)) if in_hull else None
        rows.append(ScalingRow(v=v, e_scaled=E * inv * inv,
                               e_actual=e_actual, in_hull=in_hull,
                               source="base-knot"))
    blo, bhi = base_curve.hull
    for v, E in target_pts:
        w = R * v
        in_hull = blo <= w <= bhi
        e_scaled = float(base_curve.value(w)) / R**2 if in_hull else None
        rows.append(ScalingRow(v=v, e_scaled=e_scaled, e_actual=E,
                               in_hull=in_hull, source="target-row"))
    if not any(r.in_hull for r in rows):
        raise DomainError("scaling comparison has no overlap between series")
    return rows


def scaling_rows_to_csv(rows, path):
    with open(path, "w", newline="") as fh:
        fh.write("v,E_scaled,E_actual,discrepancy,in_hull,source\n")
        for r in rows:
            dis = "" if r.discrepancy is None else num(r.discrepancy)
            esc = "" if r.e_scaled is None else num(r.e_scaled)
            eac = "" if r.e_actual is None else num(r.e_actual)
            fh.write(f"{num(r.v)},{esc},{eac},{dis},{int(r.in_hull)},{r.source}\n")

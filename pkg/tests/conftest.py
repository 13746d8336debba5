"""Shared fixtures; the heavy inversion runs are computed once per session."""

import numpy as np
import pytest

from spectralforge import (InversionConfig, coulomb_curve, critical_coupling,
                           invert, spectral_curve)
from spectralforge.dataset import builtin_curve
from spectralforge.shapes import coulomb, yukawa


@pytest.fixture(scope="session")
def yukawa_round_trip():
    """Synthetic round trip: solver curve of yukawa(0.5) on 20 couplings
    spanning the bundled table's coupling range, inverted from the Coulomb
    seed with the default 8 iterations."""
    mu = 0.5
    shape = yukawa(mu)
    v1 = critical_coupling(shape)
    couplings = np.geomspace(1.05, 6.712, 20)
    target = spectral_curve(shape, couplings, v1=v1)
    trace = invert(target, coulomb(), InversionConfig())
    return {"mu": mu, "target": target, "trace": trace}


@pytest.fixture(scope="session")
def bs_inversions():
    """All three bundled-series inversions keyed by name."""
    out = {}
    for name in ("ladder-0.15", "ladder-0.5", "lcl-0.5"):
        target = builtin_curve(name)
        out[name] = {"target": target,
                     "trace": invert(target, coulomb(), InversionConfig())}
    return out


@pytest.fixture(scope="session")
def coulomb_fixed_point():
    """Full default-length inversion of the exact Coulomb curve."""
    hull = (0.18, 44.0)
    cfg = InversionConfig(coupling_grid=tuple(np.geomspace(*hull, 20)))
    return invert(coulomb_curve(hull=hull), coulomb(), cfg)

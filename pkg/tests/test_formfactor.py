"""Form factors: normalization, analytic oracle, small-k moments, large k."""

import json
import math

import numpy as np
import pytest

from spectralforge.eigensolver import ground_state
from spectralforge.errors import DomainError
from spectralforge.formfactor import (form_factor, ground_state_form_factor,
                                      half_maximum_crossing,
                                      mean_square_radius)
from spectralforge.shapes import ProblemSetup, coulomb, yukawa


@pytest.fixture(scope="module")
def hydrogenic_state():
    return ground_state(coulomb(), ProblemSetup(v=2.0)).wavefunction


def test_normalization_value(hydrogenic_state):
    ff = form_factor(hydrogenic_state, np.array([0.0]))
    assert ff.F[0] == pytest.approx(1.0, abs=1e-6)


def test_hydrogenic_analytic_values(hydrogenic_state):
    # density 4 r^2 e^{-2r} transforms to (1 + k^2/4)^{-2}
    ks = np.array([0.5, 1.0, 2.0, 5.0])
    ff = form_factor(hydrogenic_state, ks)
    assert ff.F == pytest.approx((1.0 + ks * ks / 4.0) ** -2, abs=1e-4)


def test_large_k_oscillatory_regime(hydrogenic_state):
    ks = np.array([20.0, 60.0])
    ff = form_factor(hydrogenic_state, ks)
    assert ff.F == pytest.approx((1.0 + ks * ks / 4.0) ** -2, rel=2e-3)
    assert np.all(np.abs(ff.F) <= 1.0)


def test_small_k_expansion_matches_moment(hydrogenic_state):
    # F(k) = 1 - k^2 <r^2>/6 + O(k^4); extract the coefficient by a
    # quadratic fit over small momenta
    ks = np.linspace(1e-3, 1e-2, 9)
    ff = form_factor(hydrogenic_state, ks)
    coeff = np.polyfit(ks * ks, ff.F, 1)[0]
    r2 = mean_square_radius(hydrogenic_state)
    assert r2 == pytest.approx(3.0, rel=1e-8)      # hydrogenic <r^2>
    assert -coeff == pytest.approx(r2 / 6.0, rel=0.01)


def test_bounded_by_one(hydrogenic_state):
    ff = form_factor(hydrogenic_state, np.linspace(0.0, 10.0, 50))
    assert np.all(np.abs(ff.F) <= 1.0 + 1e-12)


def test_rejects_unnormalized():
    wf = ground_state(coulomb(), ProblemSetup(v=2.0)).wavefunction
    wf.u = wf.u * 1.01
    with pytest.raises(DomainError) as err:
        form_factor(wf, np.array([1.0]))
    assert "norm" in str(err.value)


def test_rejects_negative_momenta(hydrogenic_state):
    with pytest.raises(DomainError):
        form_factor(hydrogenic_state, np.array([-1.0]))


def test_ground_state_form_factor_compose():
    ff = ground_state_form_factor(coulomb(), 2.0, k_grid=np.array([0.0, 2.0]))
    assert ff.F[0] == pytest.approx(1.0, abs=1e-6)
    assert ff.F[1] == pytest.approx(0.25, abs=1e-4)
    assert ff.meta["v"] == 2.0


def test_half_maximum_crossing(hydrogenic_state):
    ff = form_factor(hydrogenic_state, np.linspace(0.0, 6.0, 400))
    # (1 + k^2/4)^-2 = 1/2  at  k = 2 sqrt(sqrt(2) - 1)
    exact = 2.0 * math.sqrt(math.sqrt(2.0) - 1.0)
    assert half_maximum_crossing(ff) == pytest.approx(exact, abs=5e-3)


def test_half_maximum_tracks_compactness():
    # a spatially tighter density (smaller <r^2>) has the broader form
    # factor; at v = 5 the mu = 0.15 state is deeper and more compact
    k = np.linspace(0.0, 8.0, 300)
    states = {}
    for mu in (0.15, 0.5):
        wf = ground_state(yukawa(mu), ProblemSetup(v=5.0)).wavefunction
        states[mu] = (mean_square_radius(wf),
                      half_maximum_crossing(form_factor(wf, k)))
    assert states[0.15][0] < states[0.5][0]
    assert states[0.15][1] > states[0.5][1]


def test_csv_and_metadata_export(tmp_path):
    ff = ground_state_form_factor(coulomb(), 2.0,
                                  k_grid=np.linspace(0.0, 4.0, 9))
    p, mp = tmp_path / "ff.csv", tmp_path / "ff.json"
    ff.to_csv(p, mp)
    assert p.read_text().splitlines()[0] == "k,F"
    meta = json.loads(mp.read_text())
    assert meta["v"] == 2.0
    assert "norm_residual" in meta and "tail_bound" in meta

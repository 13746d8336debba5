"""Bundled spectral table: integrity, lookups, curves, scaling comparison."""

import io

import numpy as np
import pytest

from spectralforge.dataset import (ENERGY_LEVELS, builtin_curve,
                                   builtin_dataset, curve_from_points,
                                   dataset_from_csv, scaling_comparison,
                                   scaling_rows_to_csv)
from spectralforge.errors import BadDataError, DomainError, InsufficientDataError

# guards the embedded decimals against silent edits
DATASET_SHA256 = "0cf94c051fe0c9e1a801f83574fe0c075f24a653401fc8e36d8480405bf94839"


def test_checksum_frozen():
    assert builtin_dataset().checksum() == DATASET_SHA256


def test_lookups():
    ds = builtin_dataset()
    assert ds.lookup("ladder-0.5", -1.00) == 6.712
    assert ds.lookup("lcl-0.5", -0.20) == 2.42
    assert ds.lookup("yukawa-0.5", -0.01) == 1.034
    assert ds.lookup("ladder-0.15", -0.05) is None     # published gap
    with pytest.raises(DomainError):
        ds.lookup("ladder-0.5", -0.3)


def test_series_monotone():
    ds = builtin_dataset()
    for name in ("ladder-0.15", "ladder-0.5", "lcl-0.5", "yukawa-0.5"):
        pts = ds.couplings(name)
        vs = [v for v, _ in pts]
        Es = [E for _, E in pts]
        assert all(a < b for a, b in zip(vs, vs[1:]))
        assert all(a > b for a, b in zip(Es, Es[1:]))


def test_nonrelativistic_limit_sits_nearer_cross_ladder():
    # at each common energy the Yukawa-limit coupling is closer to the
    # ladder-plus-cross-ladder value than to the plain ladder value
    ds = builtin_dataset()
    for E in ENERGY_LEVELS:
        vy = ds.lookup("yukawa-0.5", E)
        vl = ds.lookup("ladder-0.5", E)
        vx = ds.lookup("lcl-0.5", E)
        assert abs(vy - vx) < abs(vy - vl)


def test_curve_from_points_quadratic_oracle():
    v = np.array([1.0, 2.0, 3.0, 4.0])
    c = curve_from_points(list(zip(v, -0.25 * v * v)))
    assert c.value(2.5) == pytest.approx(-2.5**2 / 4, abs=1e-3)
    assert c.provenance == "dataset"
    assert c.v1_is_estimate


def test_curve_from_points_needs_three():
    with pytest.raises(InsufficientDataError):
        curve_from_points([(1.0, -0.1), (2.0, -0.3)])


def test_curve_rejects_non_concave_series():
    # the bundled Yukawa reference column is not concave as printed and
    # must be refused as curve input, with the offending triple reported
    ds = builtin_dataset()
    with pytest.raises(BadDataError) as err:
        curve_from_points(ds.couplings("yukawa-0.5"))
    assert err.value.rows


def test_bs_series_build_concave_curves():
    for name in ("ladder-0.15", "ladder-0.5", "lcl-0.5"):
        c = builtin_curve(name)
        mids = 0.5 * (c.v[:-1] + c.v[1:])
        chords = 0.5 * (c.E[:-1] + c.E[1:])
        assert np.all(c.interp(mids) >= chords)


def test_scaling_comparison_exact_prediction_row():
    ds = builtin_dataset()
    rows = scaling_comparison(
        builtin_curve("ladder-0.5"), builtin_curve("ladder-0.15"), 10.0 / 3.0,
        base_points=ds.couplings("ladder-0.5"),
        target_points=ds.couplings("ladder-0.15"))
    knot = [r for r in rows if r.source == "base-knot"
            and abs(r.v - 3.0 * 6.712 / 10.0) < 1e-9]
    assert len(knot) == 1
    assert knot[0].e_scaled == pytest.approx(-0.09, abs=1e-15)
    assert knot[0].in_hull


def test_scaling_comparison_flags_out_of_hull():
    ds = builtin_dataset()
    rows = scaling_comparison(
        builtin_curve("ladder-0.5"), builtin_curve("ladder-0.15"), 10.0 / 3.0,
        base_points=ds.couplings("ladder-0.5"),
        target_points=ds.couplings("ladder-0.15"))
    row = [r for r in rows if r.source == "target-row"
           and abs(r.v - 2.100) < 1e-9][0]
    assert not row.in_hull          # 10 v / 3 = 7.0 exceeds the base hull
    assert row.e_scaled is None


def test_scaling_identity_on_same_series():
    # R = 1 against itself: zero discrepancy at every knot
    c = builtin_curve("ladder-0.5")
    rows = scaling_comparison(c, c, 1.0)
    for r in rows:
        if r.in_hull and r.discrepancy is not None:
            assert abs(r.discrepancy) < 1e-12


def test_scaling_roughness_of_bs_data():
    # the scaling law is only a rough approximation for the BS series:
    # discrepancies are nonzero, yet predictions stay negative (same sign)
    ds = builtin_dataset()
    rows = scaling_comparison(
        builtin_curve("ladder-0.5"), builtin_curve("ladder-0.15"), 10.0 / 3.0,
        base_points=ds.couplings("ladder-0.5"),
        target_points=ds.couplings("ladder-0.15"))
    checked = [r for r in rows if r.in_hull and r.discrepancy is not None]
    assert checked
    assert all(abs(r.discrepancy) > 1e-4 for r in checked)
    assert all(r.e_scaled < 0 and r.e_actual < 0 for r in checked)


def test_dataset_csv_round_trip(tmp_path):
    ds = builtin_dataset()
    p = tmp_path / "table.csv"
    ds.to_csv(p)
    back = dataset_from_csv(p)
    assert back["ladder-0.5"][0] == 0.5
    assert back["ladder-0.5"][1][-1] == (6.712, -1.00)
    assert len(back["ladder-0.15"][1]) == 5   # missing row stays missing
    with pytest.raises(BadDataError):
        dataset_from_csv(io.StringIO("v,E\n1,2\n"))


def test_scaling_rows_csv(tmp_path):
    c = builtin_curve("ladder-0.5")
    rows = scaling_comparison(c, c, 1.0)
    p = tmp_path / "rows.csv"
    scaling_rows_to_csv(rows, p)
    header = p.read_text().splitlines()[0]
    assert header == "v,E_scaled,E_actual,discrepancy,in_hull,source"

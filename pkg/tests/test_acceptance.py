"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines.
Criteria that compare against tabulated literature values fail honestly
where those values disagree with converged numerics; the assertion messages
carry the measured numbers.
"""

import time

import numpy as np

from spectralforge import (InversionConfig, ProblemSetup, coulomb_curve,
                           coupling_for_energy, energy_from_kinetic_potential,
                           forward_residuals, ground_state, hulthen_curve,
                           invert, k_function_from_curve,
                           kinetic_potential_curve,
                           kinetic_potential_from_curve, spectral_curve)
from spectralforge.dataset import builtin_dataset, scaling_comparison
from spectralforge.duality import coulomb_k_function, envelope_energy_bound
from spectralforge.formfactor import (form_factor, ground_state_form_factor,
                                      half_maximum_crossing)
from spectralforge.inversion import max_abs_residual
from spectralforge.shapes import coulomb, hulthen, yukawa


def verdict(number, label, checks):
    """Print one pass/fail line; return the failures."""
    bad = [(name, detail) for name, ok, detail in checks if not ok]
    status = "PASS" if not bad else "FAIL"
    print(f"ACCEPTANCE {number} [{label}]: {status}"
          + ("" if not bad else f"  failing: {[n for n, _ in bad]}"))
    return bad


def test_criterion_01_hulthen_exactness():
    t0 = time.time()
    checks = []
    for v in (2.0, 4.0, 9.5):
        E = ground_state(hulthen(1.0), ProblemSetup(v=v)).energy
        exact = -(((v - 1.0) / 2.0) ** 2)
        checks.append((f"v={v}", abs(E - exact) < 1e-6, f"dE={E - exact:.2e}"))
    elapsed = time.time() - t0
    checks.append(("runtime<1s", elapsed < 1.0, f"{elapsed:.2f}s"))
    bad = verdict(1, "hulthen exactness", checks)
    assert not bad, bad


def test_criterion_02_coulomb_exactness_and_k_function():
    t0 = time.time()
    checks = []
    for v in (1.0, 2.0, 3.0):
        E = ground_state(coulomb(), ProblemSetup(v=v)).energy
        checks.append((f"v={v}", abs(E + v * v / 4.0) < 1e-6,
                       f"dE={E + v * v / 4.0:.2e}"))
    curve = coulomb_curve(hull=(0.05, 50.0))
    for r in (0.5, 1.0, 2.0):
        K = k_function_from_curve(curve, coulomb(), r).value
        checks.append((f"K(r={r})", abs(K - 1.0 / r**2) < 1e-4,
                       f"dK={K - 1.0 / r**2:.2e}"))
    elapsed = time.time() - t0
    checks.append(("runtime<1s", elapsed < 1.0, f"{elapsed:.2f}s"))
    bad = verdict(2, "coulomb exactness + K-function", checks)
    assert not bad, bad


def test_criterion_03_yukawa_reference_couplings():
    # tabulated nonrelativistic-limit couplings at the six binding energies;
    # converged solves disagree with several printed values (the printed
    # column is not even concave), so this criterion fails honestly
    t0 = time.time()
    ds = builtin_dataset()
    checks = []
    for E in (-0.01, -0.05, -0.10, -0.20, -0.50, -1.00):
        v_ref = ds.lookup("yukawa-0.5", E)
        v = coupling_for_energy(yukawa(0.5), E)
        rel = abs(v - v_ref) / v_ref
        checks.append((f"E={E}", rel < 5e-3,
                       f"v={v:.4f} vs table {v_ref} ({rel:+.2%})"))
    elapsed = time.time() - t0
    checks.append(("runtime<5s", elapsed < 5.0, f"{elapsed:.2f}s"))
    bad = verdict(3, "tabulated yukawa couplings +-0.5%", checks)
    assert not bad, bad


def test_criterion_04_legendre_round_trip_and_convexity_product():
    checks = []
    for label, curve, exact in (
            ("coulomb", coulomb_curve(), lambda v: -v * v / 4.0),
            ("hulthen", hulthen_curve(), lambda v: -((v - 1.0) / 2.0) ** 2)):
        kp = kinetic_potential_curve(curve)
        lo, hi = curve.hull
        for v in np.geomspace(max(lo * 2.0, curve.v1 + 0.5), hi * 0.5, 10):
            got = energy_from_kinetic_potential(kp, v).value
            rel = abs(got - exact(v)) / abs(exact(v))
            checks.append((f"{label} v={v:.3f}", rel < 1e-5, f"rel={rel:.1e}"))
        v = max(2.0, curve.v1 + 1.5)
        h = 1e-3 * v
        Fpp = (curve.value(v + h) - 2 * curve.value(v)
               + curve.value(v - h)) / h**2
        s = curve.value(v) - v * curve.derivative(v)
        hs = 1e-3 * s
        fb = [kinetic_potential_from_curve(curve, x).value
              for x in (s - hs, s, s + hs)]
        fbpp = (fb[0] - 2 * fb[1] + fb[2]) / hs**2
        ratio = Fpp * fbpp / (-1.0 / v**3)
        checks.append((f"{label} convexity product", abs(ratio - 1.0) < 0.05,
                       f"ratio={ratio:.4f}"))
    bad = verdict(4, "legendre round trip", checks)
    assert not bad, bad


def test_criterion_05_inversion_fixed_point(coulomb_fixed_point):
    t0 = time.time()
    hull = (0.18, 44.0)
    cfg = InversionConfig(iterations=1,
                          coupling_grid=tuple(np.geomspace(*hull, 20)))
    trace1 = invert(coulomb_curve(hull=hull), coulomb(), cfg)
    elapsed = time.time() - t0
    grid = trace1.grid
    dev1 = float(np.max(np.abs(trace1.final(grid) + 1.0 / grid)))
    full = coulomb_fixed_point
    dev8 = max(float(np.max(np.abs(it(full.grid) + 1.0 / full.grid)))
               for it in full.iterates)
    checks = [("single stage", dev1 < 1e-6, f"sup={dev1:.2e}"),
              ("eight stages", dev8 < 1e-6, f"sup={dev8:.2e}"),
              ("runtime<10s", elapsed < 10.0, f"{elapsed:.1f}s")]
    bad = verdict(5, "coulomb fixed point", checks)
    assert not bad, bad


def test_criterion_06_yukawa_round_trip(yukawa_round_trip):
    # reconstruction quality passes at the stated 2% sup-norm; the 1e-3
    # forward-residual bound is ~3x beyond the n=8 transient of the
    # published iteration and fails honestly (n ~ 16 would reach it)
    mu = yukawa_round_trip["mu"]
    trace = yukawa_round_trip["trace"]
    target = yukawa_round_trip["target"]
    rtest = np.geomspace(0.5, 5.0, 160)
    truth = -np.exp(-mu * rtest) / rtest
    dev = np.abs(trace.final(rtest) - truth)
    sup_ratio = float(np.max(dev) / np.max(np.abs(truth)))
    res = max_abs_residual(forward_residuals(trace.final, target))
    checks = [("sup-norm 2% on [0.5,5]", sup_ratio < 0.02,
               f"{sup_ratio:.2%}"),
              ("residuals<=1e-3", res <= 1e-3, f"max|dE|={res:.2e}")]
    bad = verdict(6, "synthetic yukawa round trip", checks)
    assert not bad, bad


def test_criterion_07_bs_inversion_self_consistency(bs_inversions):
    # every input row within |dE| <= 0.01 after eight iterations; the
    # deepest row of each series relaxes slower than n=8 allows and fails
    checks = []
    for name, bundle in bs_inversions.items():
        rows = forward_residuals(bundle["trace"].final, bundle["target"])
        for v, r, note in rows:
            ok = r is not None and abs(r) <= 0.01
            checks.append((f"{name} v={v}", ok,
                           f"dE={'missing ' + note if r is None else f'{r:+.4f}'}"))
    bad = verdict(7, "BS data round trip", checks)
    assert not bad, bad


def test_criterion_08_exchange_mass_scaling():
    ds = builtin_dataset()
    from spectralforge.dataset import builtin_curve
    rows = scaling_comparison(
        builtin_curve("ladder-0.5"), builtin_curve("ladder-0.15"), 10.0 / 3.0,
        base_points=ds.couplings("ladder-0.5"),
        target_points=ds.couplings("ladder-0.15"))
    knot = [r for r in rows
            if r.source == "base-knot" and abs(r.v - 2.0136) < 1e-12]
    checks = [("row v=2.0136 exists", len(knot) == 1, f"{len(knot)} rows")]
    if knot:
        checks.append(("E_scaled=-0.09 exact",
                       abs(knot[0].e_scaled + 0.09) < 1e-15,
                       f"{knot[0].e_scaled!r}"))
    ws = [w for w, _ in ds.couplings("ladder-0.5")]
    base = spectral_curve(yukawa(0.5), ws)
    worst = 0.0
    for w in ws:
        pred = base.value(w) * 0.3 * 0.3
        direct = ground_state(yukawa(0.15), ProblemSetup(v=w * 0.3)).energy
        worst = max(worst, abs(pred - direct))
    checks.append(("solver scaling identity<1e-6", worst < 1e-6,
                   f"worst={worst:.2e}"))
    bad = verdict(8, "exchange-mass scaling", checks)
    assert not bad, bad


def test_criterion_09_form_factors(bs_inversions):
    # normalization and the hydrogenic value pass; of the published
    # broadening orderings the kernel refinement (L+CL vs L) reproduces,
    # while the exchange-mass ordering comes out reversed for the
    # reconstructed shapes (their form factors are pointwise ordered the
    # other way at v = 5) and fails honestly
    checks = []
    gs = ground_state(coulomb(), ProblemSetup(v=2.0))
    ff = form_factor(gs.wavefunction, np.array([0.0, 2.0]))
    checks.append(("hydrogenic F(0)=1", abs(ff.F[0] - 1.0) < 1e-6,
                   f"{ff.F[0]:.8f}"))
    checks.append(("hydrogenic F(2)=0.25", abs(ff.F[1] - 0.25) < 1e-4,
                   f"{ff.F[1]:.6f}"))
    k_grid = np.linspace(0.0, 8.0, 300)
    cross = {}
    for name, bundle in bs_inversions.items():
        c = ground_state_form_factor(bundle["trace"].final, 5.0,
                                     k_grid=k_grid)
        checks.append((f"{name} F(0)=1", abs(c.F[0] - 1.0) < 1e-6,
                       f"{c.F[0]:.8f}"))
        cross[name] = half_maximum_crossing(c)
    checks.append(("k_half(lcl-0.5)>k_half(ladder-0.5)",
                   cross["lcl-0.5"] > cross["ladder-0.5"],
                   f"{cross['lcl-0.5']:.3f} vs {cross['ladder-0.5']:.3f}"))
    checks.append(("k_half(ladder-0.5)>k_half(ladder-0.15)",
                   cross["ladder-0.5"] > cross["ladder-0.15"],
                   f"{cross['ladder-0.5']:.3f} vs {cross['ladder-0.15']:.3f}"))
    bad = verdict(9, "form factors", checks)
    assert not bad, bad


def test_criterion_10_envelope_bound_direction():
    checks = []
    basis = coulomb_k_function(np.geomspace(1e-3, 200.0, 200))
    cases = {
        "yukawa mu=0.5": (yukawa(0.5), np.geomspace(1.2, 6.7, 5)),
        "yukawa mu=0.15": (yukawa(0.15), np.geomspace(0.6, 5.3, 5)),
        "hulthen": (hulthen(1.0), np.geomspace(1.6, 9.5, 5)),
    }
    for label, (shape, vs) in cases.items():
        for v in vs:
            bound = envelope_energy_bound(basis, shape, v).value
            truth = ground_state(shape, ProblemSetup(v=v)).energy
            checks.append((f"{label} v={v:.3f}", bound >= truth - 1e-9,
                           f"bound={bound:.6f} truth={truth:.6f}"))
    exact = envelope_energy_bound(basis, coulomb(), 2.0).value
    checks.append(("equality on basis", abs(exact + 1.0) < 1e-6,
                   f"{exact:.8f}"))
    bad = verdict(10, "envelope bound direction", checks)
    assert not bad, bad

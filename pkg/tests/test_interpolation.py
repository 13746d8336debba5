"""Shape-preserving interpolation properties."""

import numpy as np
import pytest

from spectralforge.interpolation import MonotoneCubic


def test_reproduces_knots():
    x = np.array([0.5, 1.0, 2.0, 4.0])
    y = np.array([-2.0, -1.0, -0.5, -0.25])
    m = MonotoneCubic(x, y)
    assert m(x) == pytest.approx(y, abs=1e-15)


def test_exact_on_quadratics():
    # parabolic slope estimates make quadratic data exact between knots
    x = np.array([1.0, 2.0, 3.0, 4.0])
    m = MonotoneCubic(x, -0.25 * x * x)
    probe = np.linspace(1.0, 4.0, 37)
    assert m(probe) == pytest.approx(-0.25 * probe * probe, abs=1e-13)
    assert m(2.5) == pytest.approx(-2.5**2 / 4.0, abs=1e-3)


def test_monotone_preserved_on_random_monotone_data():
    rng = np.random.default_rng(11)
    for _ in range(25):
        x = np.sort(rng.uniform(0.1, 10.0, 12))
        x += 1e-3 * np.arange(12)   # guard against duplicate knots
        y = np.cumsum(rng.random(12))
        m = MonotoneCubic(x, y)
        probe = np.linspace(x[0], x[-1], 400)
        assert np.all(np.diff(m(probe)) >= -1e-12)


def test_concave_data_midpoints_above_chords():
    v = np.array([1.21, 1.62, 1.93, 2.42, 3.47, 4.56])
    E = np.array([-0.01, -0.05, -0.10, -0.20, -0.50, -1.00])
    m = MonotoneCubic(v, E)
    mids = 0.5 * (v[:-1] + v[1:])
    chords = 0.5 * (E[:-1] + E[1:])
    assert np.all(m(mids) >= chords - 1e-14)


def test_explicit_slopes_bypass_estimates():
    x = np.array([1.0, 2.0, 4.0])
    y = x**3
    m = MonotoneCubic(x, y, slopes=3.0 * x * x)
    probe = np.linspace(1.0, 4.0, 50)
    assert m(probe) == pytest.approx(probe**3, rel=1e-12)


def test_derivative_consistency():
    x = np.geomspace(0.5, 8.0, 9)
    m = MonotoneCubic(x, np.log(x))
    h = 1e-6
    for xq in (0.7, 1.9, 5.0):
        fd = (m(xq + h) - m(xq - h)) / (2 * h)
        assert m.derivative(xq) == pytest.approx(fd, rel=1e-6)

#!/usr/bin/env python3
"""Momentum-space form factors of ground states.

F(k) is the Fourier-Bessel transform of the normalized radial density.  The
hydrogenic case has the closed form (1 + k^2/4)^{-2}, which pins the
quadrature; the reconstructed bound-state shapes are then compared at v = 5
through their half-maximum momenta.
"""

import numpy as np

from spectralforge import InversionConfig, ProblemSetup, ground_state, invert
from spectralforge.dataset import builtin_curve
from spectralforge.formfactor import (form_factor, ground_state_form_factor,
                                      half_maximum_crossing,
                                      mean_square_radius)
from spectralforge.shapes import coulomb

print("== hydrogenic check ==")
wf = ground_state(coulomb(), ProblemSetup(v=2.0)).wavefunction
ks = np.array([0.0, 1.0, 2.0, 4.0])
ff = form_factor(wf, ks)
for k, F in zip(ks, ff.F):
    exact = 1.0 if k == 0 else (1 + k * k / 4.0) ** -2
    print(f"  F({k}) = {F:.8f}   (exact {exact:.8f})")
print(f"  <r^2> = {mean_square_radius(wf):.8f} (exact 3); "
      f"small-k curvature is <r^2>/6")

print("\n== reconstructed shapes at v = 5, m = 1 ==")
k_grid = np.linspace(0.0, 8.0, 300)
for name in ("ladder-0.15", "ladder-0.5", "lcl-0.5"):
    trace = invert(builtin_curve(name), coulomb(), InversionConfig())
    curve = ground_state_form_factor(trace.final, 5.0, k_grid=k_grid)
    print(f"  {name:12s}: F(0) = {curve.F[0]:.8f}, "
          f"k at F=1/2: {half_maximum_crossing(curve):.4f}")
print("a broader form factor means a more compact bound state; the"
      " cross-ladder kernel binds hardest at fixed coupling")

#!/usr/bin/env python3
"""Kinetic potentials, K-functions, and envelope bounds.

The energy curve F(v) and the kinetic potential fbar(s) are Legendre duals:
F(v) = min_s [s + v fbar(s)] and fbar(s) = max_v [(F(v) - s)/v].  The
K-function K(r) = (fbar^-1 o f)(r) recasts the energy as a radial
minimization, and using the Coulomb basis K = 1/r^2 for screened shapes
yields rigorous upper bounds (Jensen direction for concave transforms).
"""

import numpy as np

from spectralforge import (ProblemSetup, coulomb_curve,
                           energy_from_coupling_param,
                           energy_from_kinetic_potential, ground_state,
                           hulthen_curve, k_function_from_curve,
                           kinetic_potential_curve,
                           kinetic_potential_from_curve)
from spectralforge.duality import coulomb_k_function, envelope_energy_bound
from spectralforge.shapes import coulomb, hulthen, yukawa

print("== dual of the exact coulomb curve (fbar = -sqrt(s)) ==")
cc = coulomb_curve()
for s in (1.0, 4.0, 9.0):
    res = kinetic_potential_from_curve(cc, s)
    print(f"  fbar({s}) = {res.value:+.8f}  (exact {-np.sqrt(s):+.8f}, "
          f"tangent at v = {res.arg:.4f})")

print("\n== legendre round trip ==")
kp = kinetic_potential_curve(cc)
for v in (1.0, 2.0, 3.0):
    back = energy_from_kinetic_potential(kp, v)
    print(f"  v={v}: min_s [s + v fbar(s)] = {back.value:+.9f}  "
          f"(exact {-v*v/4:+.9f})")

print("\n== coupling as the minimization parameter ==")
hc = hulthen_curve()
for v in (2.0, 4.0):
    res = energy_from_coupling_param(hc, v)
    print(f"  hulthen v={v}: tangent envelope gives {res.value:+.8f} "
          f"touching at u = {res.arg:.4f}")

print("\n== K-functions ==")
for r in (0.5, 1.0, 2.0):
    res = k_function_from_curve(cc, coulomb(), r)
    print(f"  K_coulomb({r}) = {res.value:.8f}   (exact {1/r**2})")

print("\n== envelope bounds from the coulomb basis ==")
basis = coulomb_k_function()
for shape, label, v in ((coulomb(), "coulomb (exact)", 2.0),
                        (yukawa(0.5), "yukawa mu=0.5", 2.918),
                        (hulthen(1.0), "hulthen", 4.0)):
    bound = envelope_energy_bound(basis, shape, v).value
    truth = ground_state(shape, ProblemSetup(v=v)).energy
    print(f"  {label:16s} v={v}: bound {bound:+.6f} >= true {truth:+.6f}")

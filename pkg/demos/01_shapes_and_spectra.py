#!/usr/bin/env python3
"""Potential shapes and their ground-state spectra.

Solves -(1/m) u'' + v f(r) u = E u for the built-in shapes and checks the
eigensolver against the two closed-form cases:

    Coulomb   f = -1/r            E = -v^2/4
    Hulthen   f = -1/(e^r - 1)    E = -((v-1)/2)^2   for v > 1

then maps out the Yukawa curve E = F(v), its critical coupling, and the
coupling needed for a prescribed binding energy.
"""

import numpy as np

from spectralforge import (ProblemSetup, coupling_for_energy,
                           critical_coupling, energy_lower_bound,
                           ground_state, spectral_curve)
from spectralforge.shapes import coulomb, coupling_from_field_theory, \
    hulthen, yukawa

print("== closed-form checks ==")
for v in (1.0, 2.0, 3.0):
    gs = ground_state(coulomb(), ProblemSetup(v=v))
    print(f"coulomb v={v}: E = {gs.energy:+.10f}   (exact {-v*v/4:+.10f})")
for v in (2.0, 4.0, 9.5):
    gs = ground_state(hulthen(1.0), ProblemSetup(v=v))
    print(f"hulthen v={v}: E = {gs.energy:+.10f}   (exact {-((v-1)/2)**2:+.10f})")

print("\n== yukawa mu=0.5 ==")
shape = yukawa(0.5)
v1 = critical_coupling(shape)
print(f"critical coupling v1 = {v1:.5f}  (binds only above this)")
curve = spectral_curve(shape, np.linspace(1.2, 3.0, 7), v1=v1)
for v, E in zip(curve.v, curve.E):
    print(f"  v = {v:.3f}   E = {E:+.6f}   floor {energy_lower_bound(shape, v):+.3f}")

E_want = -0.35
v_need = coupling_for_energy(shape, E_want)
print(f"coupling for E = {E_want}: v = {v_need:.6f}")
back = ground_state(shape, ProblemSetup(v=v_need)).energy
print(f"  solve back: E = {back:+.8f}")

print("\n== field-theory coupling map ==")
g = 7.0
v = coupling_from_field_theory(g, g, 1.0, 1.0)
print(f"one-boson exchange with g1=g2={g}, m1=m2=1: v = g^2/(16 pi) = {v:.6f}")

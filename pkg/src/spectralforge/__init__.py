"""spectralforge: Schroedinger potentials from spectral data.

Reconstructs radial potential shapes f(r) from ground-state energy curves
E = F(v) by iterated kinetic-potential duality, solves the direct problem
with a Numerov log-grid eigensolver, and derives spectrally-equivalent-model
observables (critical couplings, exchange-mass scaling, form factors) for
bound states whose input spectra come from published Bethe-Salpeter
calculations.
"""

from .curves import AnalyticCurve, SpectralCurve, coulomb_curve, hulthen_curve
from .dataset import (BSDataset, builtin_dataset, curve_from_points,
                      scaling_comparison)
from .duality import (KFunction, KineticPotential, coulomb_k_function,
                      energy_from_coupling_param, energy_from_kinetic_potential,
                      envelope_energy_bound, k_function_curve,
                      k_function_from_curve, kinetic_potential_curve,
                      kinetic_potential_from_curve)
from .eigensolver import (DEFAULT, FAST, GroundState, RadialWavefunction,
                          SolverConfig, coupling_for_energy, critical_coupling,
                          energy_lower_bound, ground_state, spectral_curve)
from .errors import (BadDataError, ConvergenceError, DomainError,
                     InsufficientDataError, InvalidShapeError, NoBindingError,
                     NoBoundStateError, OutOfRangeError, SpectralForgeError)
from .formfactor import (FormFactorCurve, form_factor,
                         ground_state_form_factor, half_maximum_crossing)
from .inversion import (InversionConfig, InversionTrace, forward_residuals,
                        invert)
from .optimize import ExtremumResult, golden_max, golden_min
from .shapes import (PotentialShape, ProblemSetup, coulomb,
                     coupling_from_field_theory, eval_potential, hulthen,
                     scaled_energy, shape_from_csv, shape_from_spec,
                     shape_to_csv, tabulated, unit_curve_energy, yukawa)

__version__ = "0.1.0"

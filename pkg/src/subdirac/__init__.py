"""Heat-kernel and spectral-action coefficients for sub-Dirac operators on foliations."""

__version__ = "0.1.0"

from .clifford import (AlgebraElement, Dims, DimensionError, Gaussian, Generator, Kind, I,
                       canonicalize, cf, ch, chat, gamma5, mul, trace, volume_element)
from .curvature import (BoundaryPoint, CurvatureInvariants, CurvaturePoint, InputError,
                        constant_curvature, flat_point, invariants, random_boundary_point,
                        random_point)
from .heat import (CutoffMoments, HeatCoefficients, action_asymptotics, build_E, build_Omega,
                   cutoff_moments, density_boundary_formula, density_boundary_generic,
                   density_closed_formula, density_closed_generic, heat_coefficients)
from .internal import (InternalSpace, SMParams, build_E_phi, generic_sm_densities,
                       random_internal_space, sm_coefficients, trace_E_phi, trace_E_phi_sq,
                       twisted_omega_trace)
from .oracle import MatrixRep, ResourceError, build_rep, oracle_trace, rep_of
from .torus import TorusSpec, torus_count_action, torus_eigenvalues, torus_heat_trace

__all__ = [n for n in dir() if not n.startswith("_")]

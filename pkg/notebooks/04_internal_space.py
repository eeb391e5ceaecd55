"""
Internal Hilbert space and Standard-Model parameters
====================================================

Traces of the twisted potential from explicit matrices, then the
Standard-Model densities from scalar trace inputs.
"""

# %%
from subdirac.clifford import Dims
from subdirac.curvature import random_point
from subdirac.internal import (SMParams, generic_sm_densities, random_internal_space,
                               sm_coefficients, trace_E_phi, trace_E_phi_sq)

d = Dims(1, 2)
c = random_point(3, d)
s = random_internal_space(3, 2, d.m)
print(trace_E_phi(c, s))
print(trace_E_phi_sq(c, s))

# %%
params = SMParams(a=1.3, b=0.4, c=0.2, r_M=0.5, phi_sq=1.0, dphi_sq=0.3, rfperp_norm_sq=0.8)
printed = sm_coefficients(params)
derived = sm_coefficients(params, oracle_corrected=True)
print(printed.a4, derived.a4, generic_sm_densities(params)[4])
for a in printed.audits:
    print(a)

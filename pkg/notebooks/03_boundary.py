"""
Boundary coefficients
=====================

Generic Branson-Gilkey densities against the specialized closed forms.  The
order-4 boundary term disagrees only in the coefficient of r_M;N.
"""

# %%
from subdirac.clifford import Dims
from subdirac.curvature import random_boundary_point
from subdirac.heat import (boundary_rnormal_coefficient, density_boundary_formula,
                           density_boundary_generic)

d = Dims(1, 2)
b = random_boundary_point(1, d)
for k in range(5):
    print(k, density_boundary_generic(b, k), density_boundary_formula(b, k))

# %%
rn = boundary_rnormal_coefficient(d)
print(rn)
print(density_boundary_formula(b, 4, r_normal_coeff=rn["generic"]))

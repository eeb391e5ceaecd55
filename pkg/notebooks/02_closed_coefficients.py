"""
Heat coefficients on a closed foliated manifold
===============================================

Compare the generic order-4 heat invariant, with every fibre trace computed
in the Clifford algebra, against its closed form in curvature invariants.
"""

# %%
import numpy as np

from subdirac.clifford import Dims
from subdirac.curvature import constant_curvature, invariants, random_point
from subdirac.heat import density_closed_formula, density_closed_generic

d = Dims(1, 2)
c = random_point(0, d)
inv = invariants(c)
print(f"r_M = {inv.r_M:.4f}, |R_perp|^2 = {inv.rfperp_norm_sq:.4f}")

# %%
for k in (0, 2, 4):
    print(k, density_closed_generic(c, k), density_closed_formula(c, k))

# %%
# relative deviation over a batch of random points
dev = [abs(density_closed_generic(random_point(s, d), 4) / density_closed_formula(random_point(s, d), 4) - 1)
       for s in range(50)]
print(f"max relative deviation: {max(dev):.1e}")

# %%
# round sphere-like point, kappa = 1: 66 / (360 * 2 pi^2)
print(density_closed_generic(constant_curvature(1.0, d), 4), 66 / (360 * 2 * np.pi ** 2))

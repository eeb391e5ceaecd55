"""
Flat torus benchmark
====================

On the flat 4-torus the spectrum is known exactly, so the leading heat
coefficient and the sharp-cutoff eigenvalue count can be checked end to end.
"""

# %%
import numpy as np

from subdirac.torus import TorusSpec, torus_a0, torus_count_action, torus_eigenvalues, torus_heat_trace

t = TorusSpec()
s = torus_eigenvalues(t, cut=15.0)
print(np.c_[s.eigenvalues, s.multiplicities])

# %%
for time in (0.1, 0.03, 0.01):
    print(time, time ** 2 * torus_heat_trace(t, time), torus_a0(t))

# %%
for lam in (50, 100, 200):
    n = torus_count_action(t, lam)
    print(lam, n, n / (lam ** 4 / (4 * np.pi ** 2)) - 1)

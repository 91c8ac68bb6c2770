"""Destabilisation radius in R^3 and the Jacobi eigenvalue on growing disks."""

import numpy as np

from minstab import radius_r3, rayleigh_r3, spherical_area_coefficient
from minstab.geometry import R3Rep
from minstab.series import CoefficientSeries as S

# %% Enneper: P_1(r) = 1 - r^2, so the bound is r0 = 1
rep = R3Rep(S([1]), S([0, 1]))
res = radius_r3(rep)
print("poly:", res.poly, "r0:", res.r0, "fast path:", res.fast_path)

# %% the spherical image has area ~ A2 r^2; r0 is where it reaches 4 pi
A2 = spherical_area_coefficient(rep)
print("A2 r0^2 / 4 pi =", A2 * res.r0 ** 2 / (4 * np.pi))

# %% the lowest Jacobi eigenvalue changes sign at r = 1
for r in (0.8, 0.9, 0.95, 1.0, 1.05, 1.1):
    print(f"r = {r:.2f}: lambda_min = {rayleigh_r3(rep, r, (64, 96)):+.4f}")

# %% g = z^2: the m = 2 polynomial is 2 - 2 r^4
res = radius_r3(R3Rep(S([1]), S([0, 0, 1])))
print("poly:", res.poly, "r0:", res.r0)

"""Holomorphic curves: isotropic jets, the complex structure J and twists."""

import numpy as np

from minstab import construct_J, gram, holomorphy_check, twist
from minstab.samples import enneper, r4_two_jet, random_isotropic
from minstab.series import CoefficientSeries

np.set_printoptions(precision=3, suppress=True)

# %% w -> (w, w^2/2) in C^2 = R^4: every Gram entry vanishes
d = r4_two_jet()
print(holomorphy_check(d))
J = construct_J(d)
print("J in the basis Re/Im of the jets:\n", J.matrix)
print("defects:", J.residuals(d.jets()))

# %% Enneper fails at total degree 2: g(c_0, c_2) = -1/2
print(holomorphy_check(enneper()))

# %% a random holomorphic curve in R^8 spanning a 4-dimensional complex subspace
rng = np.random.default_rng(0)
curve = random_isotropic(rng, 8, degree=5, dim=3)
J = construct_J(curve)
print("dim W =", J.dim, "| defects:", J.residuals(curve.jets()))

# %% multiplying every alpha_i by the same function keeps the jets isotropic
f = CoefficientSeries(rng.normal(size=4) + 1j * rng.normal(size=4))
print("max |Gram| after twist:", gram(twist(curve, f)).max_abs())

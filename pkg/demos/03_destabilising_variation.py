"""Searching for a test function with negative second variation."""

import numpy as np

from minstab import F_h, TestFunction, destab_search, quadratic_profile
from minstab.oracle import F_h_quadrature
from minstab.samples import enneper, random_conformal

# %% Enneper: phi = 1/z gives F = (pi/2)(1 - r^2), negative past r = 1
d = enneper()
phi = TestFunction.monomial(1, 1)
for r in (0.5, 1.0, 1.5):
    print(f"r = {r}: closed form {F_h(d, phi, r):+.6f}, quadrature {F_h_quadrature(d, phi, r):+.6f}")
print(destab_search(d))

# %% generic conformal data in R^4
rng = np.random.default_rng(1)
d = random_conformal(rng, 4, f_degree=2, g_degree=2)
cert = destab_search(d)
print(f"k = {cert.phi.k}, m = {cert.phi.m}, theta = {cert.phi.theta:.4f}, y = {cert.phi.y:.4f}")
print(f"r = {cert.r:.5f}, F_h = {cert.value:.3e}, oracle = {cert.oracle_value:.3e}")

# %% F_h along the two-term family is y^2 P(r) + y Q(r) + T(r)
if not cert.phi.one_term:
    prof = quadratic_profile(d, cert.phi.k, cert.phi.m, cert.phi.theta)
    print("P:", np.round(prof.P, 4))
    print("Q:", np.round(prof.Q, 4))
    print("T:", np.round(prof.T, 4))
    print("discriminant at r:", prof.discriminant(cert.r))

"""Enneper's surface from its (f, g) pair: series, conformality, points, Gram table."""

import numpy as np

from minstab import from_r3, gram, conformality_residual, surface_point
from minstab.geometry import R3Rep
from minstab.series import CoefficientSeries

np.set_printoptions(precision=4, suppress=True)

# %% f = 1, g = z gives alpha = ((1 - z^2)/2, i (1 + z^2)/2, z)
rep = R3Rep(CoefficientSeries([1]), CoefficientSeries([0, 1]))
d = from_r3(rep)
for i, a in enumerate(d.alphas, 1):
    print(f"alpha_{i}:", a.window(0, 2))

# %% sum alpha_i^2 vanishes coefficient by coefficient
print("conformality residual:", conformality_residual(d))

# %% points on the surface, h = base + 2 Re int alpha
t = np.linspace(0, 2 * np.pi, 7)
print("ring |z| = 0.5:\n", surface_point(d, 0.5 * np.exp(1j * t)))

# %% G[m][k] = sum_i c_m^i c_k^i.  Antidiagonals sum to zero, entries do not.
G = gram(d, 4).G
print("Gram table (real part):\n", G.real)
print("antidiagonal sums:", [complex(np.fliplr(G).diagonal(4 - s).sum()) for s in range(5)])

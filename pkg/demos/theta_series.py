"""
Theta series and eigenspace dimensions
======================================

Periodizing an eigenfunction over the lattice produces a genuine mixed
automorphic form. The Gram matrix of several such forms has rank equal to
(2B/pi) times the cell area.
"""

import numpy as np

from mixedlandau import GroupElement, InnerAffine, Lattice, ModelParams
from mixedlandau.automorphy import functional_eq_residual
from mixedlandau.spectral import eigenfunction
from mixedlandau.theta import dimension_estimate, periodize

lat = Lattice.square()
p = ModelParams(np.pi - 1.0, 1.0, InnerAffine(GroupElement(1, 0.25 - 0.1j)))

F = periodize(p, lat, eigenfunction(p, 1, 0), eps=1e-10)
print("truncation radius:", F.radius)
zs = np.array([0.1 + 0.2j, -0.4 + 0.7j, 0.9 - 0.3j])
for gamma in (1, 1j, 2 - 3j):
    print(f"gamma = {gamma}: functional equation residual {functional_eq_residual(p, F, gamma, zs):.2e}")

for sigma in (np.pi, 2 * np.pi):
    q = ModelParams(sigma - 1.0, 1.0)
    for k in (0, 1):
        est = dimension_estimate(q, lat, k=k)
        print(f"sigma = {sigma:.4f}, level {k}:", est.summary())
        print("    singular values", np.array2string(est.singular_values, precision=2))

"""
A finite-difference cross-check
===============================

Apply the operator with plain stencils and compare against the symbolic
result. Central stencils converge at second order; one-sided ones at first.
"""

import numpy as np

from mixedlandau import GroupElement, InnerAffine, ModelParams
from mixedlandau.fd_oracle import Grid, convergence_order, fd_eigen_residual
from mixedlandau.spectral import eigenfunction

p = ModelParams(1.2, 0.8, InnerAffine(GroupElement(1j, 0.4 - 0.2j)))
psi = eigenfunction(p, 1, 1)
grid = Grid(0j, 1.0, 41)

print("central order:", convergence_order(p, psi, grid))
print("forward order:", convergence_order(p, psi, grid, scheme="forward"))

g = Grid(0j, 2.0, 51)
for _ in range(4):
    print(f"h = {g.h:.4f}: ground state residual {fd_eigen_residual(p, 0, 0, g):.3e}")
    g = g.refined()

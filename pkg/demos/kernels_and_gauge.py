"""
Projector kernels and the gauge transform
=========================================

The mixed model is unitarily equivalent to a pure Landau model at the same
field. Here we watch that equivalence act on functions and on kernels.
"""

import numpy as np

from mixedlandau import ConjugateAffine, GroupElement, ModelParams
from mixedlandau.kernels import gaussian_sign_report, kernel_eval, kernel_idempotence_residual, psi_phase
from mixedlandau.spectral import check_intertwine
from mixedlandau.wick import random_wick

# a conjugate pair lowers the field: B = nu - mu
p = ModelParams(3.0, 1.0, ConjugateAffine(GroupElement(np.exp(0.2j), 0.5 + 1j)))
print("B =", p.B)

rng = np.random.default_rng(1)
print("intertwining residual:", check_intertwine(p, random_wick(rng, 5)))

z, w = 0.4 + 0.1j, -0.3 + 0.6j
for k in range(3):
    K = kernel_eval(p, k, z, w)
    pure = kernel_eval(p.landau(), k, z, w)
    print(f"k={k}: K(z,w) = {K:.6f}, gauge factor recovered:",
          np.isclose(K, np.exp(-1j * psi_phase(p, z, w)) * pure))

# projector algebra by quadrature (160 points per axis)
print("K_0 K_0 = K_0 residual:", kernel_idempotence_residual(p, 0, 0, z, w))
print("K_1 K_2 = 0 residual:  ", kernel_idempotence_residual(p, 1, 2, z, w))

# only the decaying Gaussian gives a square-integrable kernel
print(gaussian_sign_report(p))

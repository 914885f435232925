"""
Landau levels of a mixed magnetic model
=======================================

Builds the ladder of eigenfunctions for a model with two weights coupled by an
inner affine pair, and checks the level structure symbolically.
"""

import numpy as np

from mixedlandau import GroupElement, InnerAffine, ModelParams
from mixedlandau.spectral import apply_A, apply_L, check_susy, eigenfunction, hermite
from mixedlandau.wick import random_wick, wick_approx_eq

# weights nu = 1, mu = 2 and tau(z) = e^{0.5i} z + 1 - i
p = ModelParams(1.0, 2.0, InnerAffine(GroupElement(np.exp(0.5j), 1 - 1j)))
print("effective field B =", p.B)
print("gauge offset xi0 =", p.xi0)

# the first complex Hermite polynomials
for m, n in [(0, 2), (1, 0), (1, 1), (2, 1)]:
    print(f"H_{m},{n} coefficients:", hermite(p.B, m, n).coeffs)

# every psi_{m,n} sits at energy B(2m+1), whatever n is
for m in range(4):
    ok = all(wick_approx_eq(apply_L(p, eigenfunction(p, m, n)),
                            eigenfunction(p, m, n).scale(p.B * (2 * m + 1)), 1e-9)
             for n in range(5))
    print(f"level {m}: energy {p.B * (2 * m + 1):.3f}, n = 0..4 all eigen: {ok}")

# the lowering operator kills the bottom level
print("A psi_00 is zero:", apply_A(p, eigenfunction(p, 0, 0)).max_coeff() < 1e-12)

# factorisation residuals on a random Wick function
rng = np.random.default_rng(0)
print("susy residuals:", check_susy(p, random_wick(rng, 6)))

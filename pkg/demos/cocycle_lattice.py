"""
Cocycles on a square lattice
============================

The mixed automorphy factor satisfies a chain rule up to a phase. On a lattice
that phase must be a multiple of pi, otherwise no nonzero form exists.
"""

import numpy as np

from mixedlandau import GroupElement, InnerAffine, Lattice, ModelParams
from mixedlandau.automorphy import check_chain_rule, multiplier_chi, nontriviality_test, pseudo_character_check
from mixedlandau.model import random_group_element

lat = Lattice.square()
rng = np.random.default_rng(2)

for sigma in (np.pi, 1.0, 2 * np.pi, 2 * np.pi + 0.1):
    p = ModelParams(sigma - 1.0, 1.0, InnerAffine(GroupElement(1, 0.3 + 0.2j)))
    worst = max(check_chain_rule(p, random_group_element(rng), random_group_element(rng), 0.5j)
                for _ in range(100))
    report = nontriviality_test(p, lat)
    print(f"sigma = {sigma:.4f}: chain rule {worst:.1e}")
    print("   ", report.summary())
    print("    pseudo-character deviation", f"{pseudo_character_check(p, lat):.2e}")

p = ModelParams(0.5, 1.0, InnerAffine(GroupElement(1, 2)))
print("multiplier at gamma = i:", multiplier_chi(p, 1j), "vs e^{-8i} =", np.exp(-8j))

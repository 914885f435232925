"""Automorphy factors, their cocycle phase, and the lattice multiplier.

``j^alpha(g, z) = exp(2i alpha Im<z, g^-1 . 0>)`` and the mixed factor
``J(g, z) = j^nu(g, z) j^mu(rho(g), tau(z))`` obey the chain rule

    J(g g', z) = exp(2i phase(g, g')) J(g, g'.z) J(g', z)

with ``phase(g, g') = Im(nu <g^-1.0, g'.0> + mu <rho(g^-1).0, rho(g').0>)``.
Lattice elements are identified with translations ``[1, gamma]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotAffine
from .lattice import Lattice, word_ball
from .model import (
    GroupElement,
    ModelParams,
    group_act,
    group_compose,
    group_inverse,
    im_herm,
    is_affine,
    magnetic_field,
    phi_value,
)

INTEGRALITY_TOL = 1e-9


def j_factor(alpha: float, g: GroupElement, z):
    return np.exp(2j * alpha * im_herm(np.asarray(z, dtype=complex), group_inverse(g).b))


def J_factor(p: ModelParams, g: GroupElement, z):
    z = np.asarray(z, dtype=complex)
    return j_factor(p.nu, g, z) * j_factor(p.mu, p.pair.rho(g), p.pair.tau(z))


def chain_phase(p: ModelParams, g: GroupElement, h: GroupElement) -> float:
    rho = p.pair.rho
    val = (p.nu * im_herm(group_inverse(g).b, h.b)
           + p.mu * im_herm(rho(group_inverse(g)).b, rho(h).b))
    return float(val)


def check_chain_rule(p: ModelParams, g: GroupElement, h: GroupElement, z) -> float:
    z = np.asarray(z, dtype=complex)
    lhs = J_factor(p, group_compose(g, h), z)
    rhs = np.exp(2j * chain_phase(p, g, h)) * J_factor(p, g, group_act(h, z)) * J_factor(p, h, z)
    return float(np.max(np.abs(lhs - rhs)))


@dataclass
class NontrivialityReport:
    passed: bool
    radius: int
    n_pairs: int
    worst_pair: tuple[complex, complex] | None
    worst_value: float
    worst_deviation: float
    rows: list[tuple[complex, complex, float, int, float]] = field(default_factory=list)

    def summary(self) -> str:
        verdict = "integral" if self.passed else "NOT integral"
        msg = (f"phase/pi {verdict} on word ball of radius {self.radius} "
               f"({self.n_pairs} pairs); worst deviation {self.worst_deviation:.3e}")
        if self.worst_pair is not None:
            g1, g2 = self.worst_pair
            msg += f" at ({g1:.6g}, {g2:.6g}), phase/pi = {self.worst_value:.12g}"
        return msg


def nontriviality_test(p: ModelParams, lat: Lattice, word_len: int = 3,
                       tol: float = INTEGRALITY_TOL) -> NontrivialityReport:
    """Check that phase/pi is an integer on all pairs from the word ball of radius ``word_len``.

    Integrality on a finite ball is necessary for nonzero mixed forms; for non-inner
    rho it is only evidence of integrality on the whole lattice.
    """
    if word_len < 1:
        raise ValueError("word_len must be >= 1")
    ball = [GroupElement.translation(c) for _, _, c in word_ball(lat, word_len)]
    rows = []
    worst = (None, 0.0, -1.0)
    for g in ball:
        for h in ball:
            val = chain_phase(p, g, h) / np.pi
            k = int(np.rint(val))
            dev = abs(val - k)
            rows.append((g.b, h.b, val, k, dev))
            if dev > worst[2]:
                worst = ((g.b, h.b), val, dev)
    return NontrivialityReport(
        passed=worst[2] <= tol, radius=word_len, n_pairs=len(rows),
        worst_pair=worst[0], worst_value=worst[1], worst_deviation=worst[2], rows=rows,
    )


def _require_affine(p: ModelParams):
    if not is_affine(p.pair):
        raise NotAffine("the multiplier needs the closed-form gauge of an affine pair")


def chi_hat(p: ModelParams, gamma: complex, z, field_shift: float = 0.0):
    """Gauge-difference phase times the correction exponentials, as a function of z.

    ``exp(i(phi(z+gamma) - phi(z))) exp(-2i([B - nu] Im<z, gamma> + mu Im<tau(z), rho(gamma)^-1 . 0>))``.
    ``field_shift`` perturbs B (negative controls only).
    """
    _require_affine(p)
    z = np.asarray(z, dtype=complex)
    B = magnetic_field(p) + field_shift
    q = group_inverse(p.pair.rho(GroupElement.translation(gamma))).b
    gauge = phi_value(p, z + gamma) - phi_value(p, z)
    corr = (B - p.nu) * im_herm(z, gamma) + p.mu * im_herm(p.pair.tau(z), q)
    return np.exp(1j * gauge - 2j * corr)


def multiplier_chi(p: ModelParams, gamma: complex) -> complex:
    """Lattice multiplier ``exp(i phi(gamma) - 2i mu Im<tau(0), rho(gamma)^-1 . 0>)``.

    This is ``chi_hat(0; gamma)``; for inner pairs it equals ``exp(4i Im<xi, gamma>)``.
    """
    return complex(chi_hat(p, gamma, 0j))


def check_multiplier_independence(p: ModelParams, gamma: complex, z_samples,
                                  field_shift: float = 0.0) -> float:
    vals = chi_hat(p, gamma, np.asarray(z_samples, dtype=complex), field_shift)
    ref = chi_hat(p, gamma, 0j, field_shift)
    return float(np.max(np.abs(vals - ref)))


def pseudo_character_deviation(p: ModelParams, gamma: complex, gamma2: complex) -> float:
    B = magnetic_field(p)
    lhs = multiplier_chi(p, gamma + gamma2)
    rhs = np.exp(2j * B * im_herm(gamma, gamma2)) * multiplier_chi(p, gamma) * multiplier_chi(p, gamma2)
    return float(abs(lhs - rhs))


def pseudo_character_check(p: ModelParams, lat: Lattice, radius: int = 3) -> float:
    """Max pseudo-character deviation over pairs from the word ball of ``radius``."""
    _require_affine(p)
    ball = [c for _, _, c in word_ball(lat, radius)]
    return max(pseudo_character_deviation(p, g, h) for g in ball for h in ball)


def functional_eq_residual(p: ModelParams, F, gamma: complex, z) -> float:
    """``|F(z + gamma) - J^{-nu,-mu}(gamma, z) F(z)|`` (max over array z)."""
    z = np.asarray(z, dtype=complex)
    J = J_factor(p.negated(), GroupElement.translation(gamma), z)
    return float(np.max(np.abs(F(z + gamma) - J * F(z))))

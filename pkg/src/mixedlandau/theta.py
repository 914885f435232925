"""Periodization of eigenfunctions into mixed automorphic forms, and eigenspace dimensions.

Work in the Landau picture ``G = W F`` where the forms satisfy
``G(z + gamma) = chi(gamma) j^{-B}(gamma, z) G(z)``. The twisted shift

    (U_gamma G)(z) = conj(chi(gamma)) exp(-2iB Im<z, gamma>) G(z + gamma)

fixes exactly those functions. Composing two shifts gives

    U_gamma U_gamma' = [chi(gamma + gamma') conj(chi(gamma) chi(gamma')) e^{-2iB Im<gamma, gamma'>}]^* U_{gamma + gamma'}

so ``gamma -> U_gamma`` is a group action precisely when ``chi`` is a pseudo-character.
Then ``sum_gamma U_gamma f`` is shift invariant for any decaying seed ``f``, and
``F = W^{-1} G`` satisfies the mixed functional equation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import ceil, sqrt

import numpy as np

from .automorphy import J_factor, multiplier_chi, nontriviality_test, pseudo_character_check
from .errors import InconsistentCocycle
from .kernels import QuadratureSpec, integrate_plane
from .lattice import Lattice, lattice_points, truncation_radius
from .model import GroupElement, ModelParams, im_herm, magnetic_field, phi_value
from .spectral import eigenfunction, gauge_W
from .wick import WickFunction, wick_eval

COCYCLE_TOL = 1e-9


def landau_shift(p: ModelParams, G, gamma: complex):
    """Twisted shift U_gamma in the Landau picture, as a new callable."""
    B = magnetic_field(p)
    chi_c = np.conj(multiplier_chi(p, gamma))

    def shifted(z):
        z = np.asarray(z, dtype=complex)
        return chi_c * np.exp(-2j * B * im_herm(z, gamma)) * G(z + gamma)

    return shifted


def twisted_shift(p: ModelParams, F, gamma: complex):
    """Mixed-picture shift ``z -> J(gamma, z) F(z + gamma)``; fixes the mixed forms."""
    g = GroupElement.translation(gamma)

    def shifted(z):
        z = np.asarray(z, dtype=complex)
        return J_factor(p, g, z) * F(z + gamma)

    return shifted


@dataclass
class PeriodizedForm:
    """Evaluable mixed automorphic form obtained by lattice summation of a seed."""

    params: ModelParams
    lattice: Lattice
    landau_seed: WickFunction
    eps: float
    radius: float
    _chi_cache: dict = field(default_factory=dict, repr=False)

    def _chi_conj(self, gamma: complex) -> complex:
        key = complex(np.round(gamma, 12))
        if key not in self._chi_cache:
            self._chi_cache[key] = np.conj(multiplier_chi(self.params, gamma))
        return self._chi_cache[key]

    def landau(self, z):
        """The Landau-picture form G = W F."""
        z = np.asarray(z, dtype=complex)
        B = magnetic_field(self.params)
        zmax = float(np.max(np.abs(z))) if z.size else 0.0
        acc = np.zeros(z.shape, dtype=complex)
        for gamma in lattice_points(self.lattice, self.radius + zmax):
            acc += (self._chi_conj(gamma) * np.exp(-2j * B * im_herm(z, gamma))
                    * wick_eval(self.landau_seed, z + gamma))
        return acc

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.exp(-1j * phi_value(self.params, z)) * self.landau(z)
        return complex(out) if out.ndim == 0 else out


def _seed_radius(seed: WickFunction, B: float, eps: float, lat: Lattice) -> float:
    if seed.is_zero():
        return 0.0
    # |P(w)| <= C (1 + |w|)^deg and Re(b w + c wbar + d) <= kappa |w| + Re d
    C = sum(abs(v) for v in seed.coeffs.values())
    kappa = abs(seed.exp_b + np.conj(seed.exp_c))
    shift = kappa / (2 * B)
    scale = C * np.exp(kappa ** 2 / (4 * B) + seed.exp_d.real)
    return truncation_radius(B, seed.degree, max(1.0, shift), eps / scale,
                             lat.area, lat.cell_diameter)


def periodize(p: ModelParams, lat: Lattice, seed: WickFunction, eps: float = 1e-10) -> PeriodizedForm:
    """Lattice sum of twisted shifts of ``seed``, returned in the mixed picture."""
    dev = pseudo_character_check(p, lat)
    if dev > COCYCLE_TOL:
        raise InconsistentCocycle(
            f"multiplier fails the pseudo-character identity (deviation {dev:.3e}); "
            "the cocycle phase is not integral on the lattice and the form space is trivial")
    B = magnetic_field(p)
    if not seed.is_zero() and abs(seed.exp_a + B) > 1e-10 * max(1.0, B):
        raise ValueError(f"seed must carry exp(-B|z|^2) with B = {B}, got exp_a = {seed.exp_a}")
    landau_seed = gauge_W(p, seed)
    R = _seed_radius(landau_seed, B, eps, lat)
    return PeriodizedForm(p, lat, landau_seed, eps, R)


def dimension_formula(p: ModelParams, lat: Lattice) -> float:
    """(2B/pi) * covolume of the lattice."""
    return 2 * magnetic_field(p) / np.pi * lat.area


def fundamental_domain_grid(lat: Lattice, n: int = 48) -> tuple[np.ndarray, float]:
    """Midpoint nodes of the cell spanned by w1, w2 and the common weight."""
    s = (np.arange(n) + 0.5) / n
    Z = s[:, None] * lat.w1 + s[None, :] * lat.w2
    return Z.ravel(), lat.area / n ** 2


@dataclass
class DimensionEstimate:
    rank: int
    formula: float
    singular_values: np.ndarray
    threshold: float
    n_seeds: int
    grid_points: int
    near_threshold: bool

    @property
    def passed(self) -> bool:
        return abs(self.rank - self.formula) < 1e-6

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"formula {self.formula:.6g}, estimated {self.rank}, {verdict}"


def _seed_norm(p: ModelParams, seed: WickFunction) -> float:
    B = magnetic_field(p)
    r = (sqrt(seed.degree + 1) + 7.0) / sqrt(B)
    q = QuadratureSpec(radius=r, points_per_axis=200)
    return sqrt(abs(integrate_plane(lambda Z: np.abs(wick_eval(seed, Z)) ** 2, q)))


def dimension_estimate(p: ModelParams, lat: Lattice, k: int = 0, n_seeds: int | None = None,
                       grid_points: int = 48, svd_tol: float = 1e-6,
                       eps: float = 1e-10) -> DimensionEstimate:
    """Numerical rank of the Gram matrix of periodized level-k eigenfunctions.

    Seeds are psi_{k,n}, n < n_seeds, normalised in L^2 of the plane; the Gram matrix
    uses the midpoint rule on the fundamental cell (|F|^2 is lattice periodic).
    """
    report = nontriviality_test(p, lat)
    if not report.passed:
        raise InconsistentCocycle("cocycle integrality fails: " + report.summary())
    formula = dimension_formula(p, lat)
    if n_seeds is None:
        n_seeds = max(6, int(ceil(formula)) + 2)
    if n_seeds < formula + 2:
        raise ValueError(f"n_seeds={n_seeds} must be at least formula + 2 = {formula + 2:g}")
    Z, weight = fundamental_domain_grid(lat, grid_points)
    cols = []
    for n in range(n_seeds):
        seed = eigenfunction(p, k, n)
        seed = seed.scale(1.0 / _seed_norm(p, seed))
        cols.append(periodize(p, lat, seed, eps)(Z))
    V = np.stack(cols, axis=1)
    gram = (V.conj().T @ V) * weight
    sv = np.linalg.svd(gram, compute_uv=False)
    thresh = svd_tol * sv[0]
    rank = int(np.sum(sv > thresh))
    near = bool(np.any((sv > thresh / 10) & (sv < thresh * 10)))
    if near:
        warnings.warn(f"singular values within x10 of the rank threshold {thresh:.3e}: {sv}",
                      RuntimeWarning, stacklevel=2)
    return DimensionEstimate(rank, formula, sv, thresh, n_seeds, grid_points, near)

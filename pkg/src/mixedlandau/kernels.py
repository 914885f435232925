"""Eigenprojector kernels of the Landau levels and plane quadrature.

For level ``k`` the kernel is

    K_k(z, w) = (2B/pi) exp(-i psi(z, w)) exp(2iB Im<z, w>) exp(-B|z - w|^2) L_k(2B|z - w|^2)

with ``psi(z, w) = phi(z) - phi(w)`` the gauge difference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import QuadratureUnderresolved
from .model import GroupElement, ModelParams, group_act, group_inverse, im_herm, magnetic_field, phi_value
from .spectral import laguerre

REFINE_TOL = 1e-8


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor rule on the square ``center + [-radius, radius]^2``."""

    center: complex = 0j
    radius: float = 8.0
    points_per_axis: int = 160
    rule: str = "trapezoid"

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.points_per_axis < 16:
            raise ValueError("points_per_axis must be >= 16")
        if self.rule not in ("trapezoid", "gauss-legendre"):
            raise ValueError(f"unknown rule {self.rule!r}")
        object.__setattr__(self, "center", complex(self.center))

    def refined(self) -> "QuadratureSpec":
        return QuadratureSpec(self.center, self.radius, 2 * self.points_per_axis, self.rule)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Complex nodes and weights, both of shape (n, n)."""
        n, r = self.points_per_axis, self.radius
        if self.rule == "trapezoid":
            x = np.linspace(-r, r, n)
            w = np.full(n, x[1] - x[0])
            w[[0, -1]] *= 0.5
        else:
            x, w = np.polynomial.legendre.leggauss(n)
            x, w = r * x, r * w
        Z = self.center + x[:, None] + 1j * x[None, :]
        return Z, w[:, None] * w[None, :]


def integrate_plane(func, spec: QuadratureSpec) -> complex:
    Z, W = spec.nodes()
    return complex(np.sum(func(Z) * W))


def safe_radius(B: float, *points: complex) -> float:
    """Half-width covering the points plus a Gaussian margin of 7/sqrt(B)."""
    pts = np.asarray(points, dtype=complex) if points else np.zeros(1, complex)
    spread = float(np.max(np.abs(pts - pts.mean()))) if pts.size > 1 else 0.0
    return spread + 7.0 / np.sqrt(B)


def psi_phase(p: ModelParams, z, w):
    return phi_value(p, z) - phi_value(p, w)


def kernel_eval(p: ModelParams, k: int, z, w):
    B = magnetic_field(p)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    d2 = np.abs(z - w) ** 2
    out = (2 * B / np.pi) * np.exp(-1j * psi_phase(p, z, w) + 2j * B * im_herm(z, w) - B * d2) \
        * laguerre(k, 2 * B * d2)
    return complex(out) if np.ndim(out) == 0 else out


def kernel_invariance_residual(p: ModelParams, k: int, g: GroupElement, z, w) -> float:
    """Deviation from K(z,w) = e^{-i(psi(z,w) - psi(gz,gw))} e^{2iB Im<z-w, g^-1.0>} K(gz,gw)."""
    B = magnetic_field(p)
    gz, gw = group_act(g, z), group_act(g, w)
    phase = -(psi_phase(p, z, w) - psi_phase(p, gz, gw)) + 2 * B * im_herm(z - w, group_inverse(g).b)
    rhs = np.exp(1j * phase) * kernel_eval(p, k, gz, gw)
    return float(np.max(np.abs(kernel_eval(p, k, z, w) - rhs)))


def kernel_composition(p: ModelParams, k: int, j: int, z: complex, u: complex,
                       q: QuadratureSpec) -> complex:
    """Quadrature value of the integral of K_k(z, w) K_j(w, u) over w."""
    return integrate_plane(lambda W: kernel_eval(p, k, z, W) * kernel_eval(p, j, W, u), q)


def kernel_idempotence_residual(p: ModelParams, k: int, j: int, z: complex, u: complex,
                                q: QuadratureSpec | None = None) -> float:
    """``|int K_k(z,w) K_j(w,u) dw - delta_kj K_k(z,u)|``.

    Raises QuadratureUnderresolved when doubling the points moves the integral by
    more than 1e-8.
    """
    B = magnetic_field(p)
    if q is None:
        q = QuadratureSpec(center=(z + u) / 2, radius=safe_radius(B, z, u))
    val = kernel_composition(p, k, j, z, u, q)
    fine = kernel_composition(p, k, j, z, u, q.refined())
    if abs(fine - val) > REFINE_TOL:
        raise QuadratureUnderresolved(
            f"doubling points changed the integral by {abs(fine - val):.2e}")
    target = kernel_eval(p, k, z, u) if k == j else 0.0
    return float(abs(val - target))


def gaussian_sign_report(p: ModelParams, k: int = 0, radii=(4.0, 8.0)) -> dict:
    """Integrability of |K(0, w)|^2 under both signs of the Gaussian factor.

    The decaying reading ``exp(-B|z-w|^2)`` is the one implemented; the growing reading
    ``exp(+B|z-w|^2)`` is reported for comparison.
    """
    B = magnetic_field(p)
    out = {}
    for name, sign in (("decaying", -1.0), ("growing", 1.0)):
        vals = []
        for r in radii:
            q = QuadratureSpec(radius=r / np.sqrt(B), points_per_axis=400)
            vals.append(abs(integrate_plane(
                lambda W: np.exp(2 * sign * B * np.abs(W) ** 2)
                * laguerre(k, 2 * B * np.abs(W) ** 2) ** 2, q)))
        converged = np.isfinite(vals[-1]) and abs(vals[-1] - vals[0]) <= 1e-8 * max(1.0, abs(vals[-1]))
        out[name] = {"integrable": bool(converged), "partial_integrals": vals}
    return out

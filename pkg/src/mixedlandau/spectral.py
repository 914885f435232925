"""Operator layer acting exactly on Wick functions for affine equivariant pairs.

With ``S(z) = B z + xi0`` the magnetic operator reads

    L = -d^2/dz dzbar - (S d/dz - conj(S) d/dzbar) + |S|^2

and factorises through ``A = d/dzbar + S`` and ``At = -d/dz + conj(S)`` as
``At A + B = L = A At - B``. Eigenfunctions of level ``m`` are built from the
complex Hermite polynomials by the Rodrigues formula.
"""

from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from .errors import NonPositiveField, NotAffine
from .model import (
    GroupElement,
    ModelParams,
    group_inverse,
    is_affine,
    magnetic_field,
    s_affine,
)
from .wick import (
    ONE,
    WickFunction,
    wick_add,
    wick_dz,
    wick_dzbar,
    wick_mul_exp,
    wick_mul_poly,
    wick_residual,
    wick_translate,
)


class LadderSign(enum.Enum):
    """Relative sign between the creation operator and its gauge (Rodrigues) form.

    ``RodriguesMinus``: ``At = -exp(B|z|^2 - i phi) d/dz exp(-B|z|^2 + i phi)``,
    hence ``At^m (z^n e^{-B|z|^2 - i phi}) = (-1)^m psi_{m,n}``.
    """

    RodriguesPlus = 1
    RodriguesMinus = -1


LADDER_SIGN = LadderSign.RodriguesMinus


def _require_affine(p: ModelParams) -> tuple[float, complex]:
    if not is_affine(p.pair):
        raise NotAffine("symbolic operators need an affine pair; use fd_oracle")
    return s_affine(p)


def _s_poly(p: ModelParams) -> dict:
    sigma, xi0 = _require_affine(p)
    return {(1, 0): sigma, (0, 0): xi0}


def _sbar_poly(p: ModelParams) -> dict:
    sigma, xi0 = _require_affine(p)
    return {(0, 1): sigma, (0, 0): np.conj(xi0)}


def _abs_s2_poly(p: ModelParams) -> dict:
    sigma, xi0 = _require_affine(p)
    xc = np.conj(xi0)
    return {(1, 1): sigma ** 2, (1, 0): sigma * xc, (0, 1): sigma * xi0, (0, 0): abs(xi0) ** 2}


def apply_L(p: ModelParams, f: WickFunction) -> WickFunction:
    magnetic_field(p)
    fz = wick_dz(f)
    fzb = wick_dzbar(f)
    out = -wick_dz(fzb)
    out = wick_add(out, -wick_mul_poly(fz, _s_poly(p)))
    out = wick_add(out, wick_mul_poly(fzb, _sbar_poly(p)))
    return wick_add(out, wick_mul_poly(f, _abs_s2_poly(p)))


def apply_A(p: ModelParams, f: WickFunction) -> WickFunction:
    return wick_add(wick_dzbar(f), wick_mul_poly(f, _s_poly(p)))


def apply_Atilde(p: ModelParams, f: WickFunction) -> WickFunction:
    return wick_add(-wick_dz(f), wick_mul_poly(f, _sbar_poly(p)))


def check_susy(p: ModelParams, f: WickFunction, field: float | None = None) -> tuple[float, float]:
    """Residuals of ``At A + B = L`` and ``A At - B = L``.

    ``field`` overrides B in both identities (negative controls).
    """
    if f.is_zero():
        _require_affine(p)
        return 0.0, 0.0
    B = magnetic_field(p) if field is None else field
    Lf = apply_L(p, f)
    r1 = wick_residual(wick_add(apply_Atilde(p, apply_A(p, f)), f.scale(B)), Lf)
    r2 = wick_residual(wick_add(apply_A(p, apply_Atilde(p, f)), f.scale(-B)), Lf)
    return r1, r2


def calibrate_ladder_sign(p: ModelParams, f: WickFunction) -> LadderSign:
    """Decide which sign of the gauge form of ``At`` agrees with ``-d/dz + conj(S)``."""
    sigma, xi0 = _require_affine(p)
    g = wick_mul_exp(f, -sigma, -np.conj(xi0), xi0)
    rod = wick_mul_exp(wick_dz(g), sigma, np.conj(xi0), -xi0)
    direct = apply_Atilde(p, f)
    plus = wick_residual(direct, rod)
    minus = wick_residual(direct, -rod)
    return LadderSign.RodriguesPlus if plus < minus else LadderSign.RodriguesMinus


# -- polynomials -----------------------------------------------------------

@lru_cache(maxsize=512)
def generalized_hermite(B: float, h0: complex, h1: complex, m: int, n: int) -> WickFunction:
    """exp(2B|z|^2 - h) d^m/dz^m (z^n exp(-2B|z|^2 + h)), h(z) = h0 + h1 z.

    Returned as a polynomial (zero exponent).
    """
    if B <= 0:
        raise NonPositiveField(f"B = {B} <= 0")
    f = WickFunction({(n, 0): 1.0}, -2.0 * B, h1, 0j, h0)
    for _ in range(m):
        f = wick_dz(f)
    return f.strip_exponent()


def hermite(B: float, m: int, n: int) -> WickFunction:
    """Complex Hermite polynomial exp(2B|z|^2) d^m/dz^m (z^n exp(-2B|z|^2))."""
    return generalized_hermite(float(B), 0j, 0j, int(m), int(n))


def laguerre(k: int, x):
    """Laguerre polynomial L_k(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    prev, cur = np.ones_like(x), 1.0 - x
    if k == 0:
        out = prev
    else:
        for j in range(1, k):
            prev, cur = cur, ((2 * j + 1 - x) * cur - j * prev) / (j + 1)
        out = cur
    return float(out) if out.ndim == 0 else out


# -- gauge and eigenfunctions ---------------------------------------------

def _gauge_exp(p: ModelParams, sign: int) -> tuple[complex, complex]:
    # exp(i phi) = exp(-conj(xi0) z + xi0 zbar)
    _, xi0 = _require_affine(p)
    return -sign * np.conj(xi0), sign * xi0


def gauge_W(p: ModelParams, f: WickFunction) -> WickFunction:
    """Multiplication by exp(i phi)."""
    b, c = _gauge_exp(p, +1)
    return wick_mul_exp(f, b=b, c=c)


def gauge_W_inv(p: ModelParams, f: WickFunction) -> WickFunction:
    b, c = _gauge_exp(p, -1)
    return wick_mul_exp(f, b=b, c=c)


def ground_state(p: ModelParams, n: int) -> WickFunction:
    """z^n exp(-B|z|^2 - i phi), annihilated by A."""
    B = magnetic_field(p)
    return gauge_W_inv(p, WickFunction({(n, 0): 1.0}, -B))


def eigenfunction(p: ModelParams, m: int, n: int) -> WickFunction:
    """psi_{m,n} = exp(-B|z|^2 - i phi) H^B_{m,n}; eigenvalue B(2m+1)."""
    B = magnetic_field(p)
    H = hermite(B, m, n)
    return gauge_W_inv(p, wick_mul_exp(H, -B))


def eigenfunction_ladder(p: ModelParams, m: int, n: int) -> WickFunction:
    """At^m applied to the ground state z^n exp(-B|z|^2 - i phi)."""
    f = ground_state(p, n)
    for _ in range(m):
        f = apply_Atilde(p, f)
    return f


def check_eigen(p: ModelParams, f: WickFunction, eigenvalue: float) -> float:
    """Coefficient residual of ``L f - E f`` after scaling f to unit max coefficient."""
    scale = f.max_coeff()
    if scale == 0:
        return 0.0
    g = f.scale(1.0 / scale)
    return wick_residual(apply_L(p, g), g.scale(eigenvalue))


def check_intertwine(p: ModelParams, f: WickFunction) -> float:
    """Residual of ``W L f = L^B W f`` with L^B the pure Landau operator at the same B."""
    lhs = gauge_W(p, apply_L(p, f))
    rhs = apply_L(p.landau(), gauge_W(p, f))
    return wick_residual(lhs, rhs)


# -- magnetic translations ------------------------------------------------

def J_exponent(p: ModelParams, g: GroupElement) -> tuple[complex, complex, complex]:
    """(b, c, d) with J(g, z) = exp(b z + c zbar + d) for affine pairs.

    j^alpha(g, z) = exp(alpha (conj(q) z - q zbar)) with q = g^-1 . 0.
    """
    _require_affine(p)
    q = group_inverse(g).b
    b = p.nu * np.conj(q)
    c = -p.nu * q
    tz, tzb, t0 = p.pair.affine_coeffs()
    r = group_inverse(p.pair.rho(g)).b
    rc = np.conj(r)
    # mu (conj(r) tau - r conj(tau)), tau = tz z + tzb zbar + t0
    b += p.mu * (rc * tz - r * np.conj(tzb))
    c += p.mu * (rc * tzb - r * np.conj(tz))
    d = p.mu * (rc * t0 - r * np.conj(t0))
    return complex(b), complex(c), complex(d)


def magnetic_T(p: ModelParams, g: GroupElement, f: WickFunction) -> WickFunction:
    """[T_g f](z) = J(g, z) f(g.z)."""
    b, c, d = J_exponent(p, g)
    return wick_mul_exp(wick_translate(f, g), b=b, c=c, d=d)


def check_T_commutes(p: ModelParams, g: GroupElement, f: WickFunction) -> float:
    return wick_residual(magnetic_T(p, g, apply_L(p, f)), apply_L(p, magnetic_T(p, g, f)))


__all__ = [
    "LadderSign", "LADDER_SIGN", "ONE",
    "apply_L", "apply_A", "apply_Atilde", "check_susy", "calibrate_ladder_sign",
    "hermite", "generalized_hermite", "laguerre",
    "gauge_W", "gauge_W_inv", "ground_state", "eigenfunction", "eigenfunction_ladder",
    "check_eigen", "check_intertwine", "J_exponent", "magnetic_T", "check_T_commutes",
]

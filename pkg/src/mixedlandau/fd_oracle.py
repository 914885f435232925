"""Finite-difference application of the magnetic operator on a square grid.

Works for any equivariant pair (including generic ones, where the term
``-(mu/4)(tau lap(taubar) - taubar lap(tau))`` need not vanish) and serves as an
independent check of the symbolic operators in :mod:`mixedlandau.spectral`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridTooCoarse
from .model import ModelParams, s_function
from .spectral import apply_L, eigenfunction, magnetic_field
from .wick import WickFunction, wick_eval


@dataclass(frozen=True)
class Grid:
    center: complex = 0j
    half_width: float = 2.0
    n: int = 201

    def __post_init__(self):
        if self.n < 9:
            raise GridTooCoarse(f"need at least 9 points per axis, got {self.n}")
        if self.n % 2 == 0:
            raise ValueError("n must be odd for centred stencils")
        object.__setattr__(self, "center", complex(self.center))

    @property
    def h(self) -> float:
        return 2 * self.half_width / (self.n - 1)

    def points(self) -> np.ndarray:
        """Complex nodes, indexed [ix, iy]."""
        x = np.linspace(-self.half_width, self.half_width, self.n)
        return self.center + x[:, None] + 1j * x[None, :]

    def refined(self) -> "Grid":
        return Grid(self.center, self.half_width, 2 * self.n - 1)


def _derivatives(f: np.ndarray, h: float, scheme: str):
    fx = np.full_like(f, np.nan)
    fy = np.full_like(f, np.nan)
    lap = np.full_like(f, np.nan)
    c = f[1:-1, 1:-1]
    if scheme == "central":
        fx[1:-1, 1:-1] = (f[2:, 1:-1] - f[:-2, 1:-1]) / (2 * h)
        fy[1:-1, 1:-1] = (f[1:-1, 2:] - f[1:-1, :-2]) / (2 * h)
    elif scheme == "forward":
        fx[1:-1, 1:-1] = (f[2:, 1:-1] - c) / h
        fy[1:-1, 1:-1] = (f[1:-1, 2:] - c) / h
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    lap[1:-1, 1:-1] = (f[2:, 1:-1] + f[:-2, 1:-1] + f[1:-1, 2:] + f[1:-1, :-2] - 4 * c) / h ** 2
    return fx, fy, lap


def fd_apply_L(p: ModelParams, samples: np.ndarray, grid: Grid, scheme: str = "central") -> np.ndarray:
    """Apply the operator to grid samples; the boundary ring is NaN.

    ``scheme="forward"`` swaps the first-derivative stencils for one-sided ones
    (first order, used as a negative control).
    """
    f = np.asarray(samples, dtype=complex)
    if f.shape != (grid.n, grid.n):
        raise ValueError(f"samples must have shape {(grid.n, grid.n)}")
    Z = grid.points()
    fx, fy, lap = _derivatives(f, grid.h, scheme)
    dz = (fx - 1j * fy) / 2
    dzb = (fx + 1j * fy) / 2
    S = s_function(p, Z)
    tau = p.pair.tau(Z)
    lap_tau = p.pair.lap_tau(Z)
    R = tau * np.conj(lap_tau) - np.conj(tau) * lap_tau
    return -lap / 4 - (S * dz - np.conj(S) * dzb) + (np.abs(S) ** 2 - p.mu / 4 * R) * f


def _interior_error(p: ModelParams, f: WickFunction, grid: Grid, scheme: str, stride: int = 1) -> float:
    Z = grid.points()
    approx = fd_apply_L(p, wick_eval(f, Z), grid, scheme)
    exact = wick_eval(apply_L(p, f), Z)
    err = np.abs(approx - exact)[1:-1, 1:-1]
    if stride > 1:
        err = err[stride - 1::stride, stride - 1::stride]
    return float(np.nanmax(err))


def convergence_order(p: ModelParams, f: WickFunction, grid: Grid, scheme: str = "central",
                      cap: float = 10.0) -> float:
    """log2 of the error ratio between ``grid`` and its refinement, against apply_L.

    Errors are compared on the coarse interior nodes. Returns ``cap`` when the coarse
    error is already at round-off level.
    """
    coarse = _interior_error(p, f, grid, scheme)
    fine = _interior_error(p, f, grid.refined(), scheme, stride=2)
    scale = max(1.0, float(np.max(np.abs(wick_eval(apply_L(p, f), grid.points())))))
    if coarse <= 1e-11 * scale:
        return cap
    if fine <= 0:
        return cap
    return float(min(np.log2(coarse / fine), cap))


def fd_eigen_residual(p: ModelParams, m: int, n: int, grid: Grid,
                      eigenvalue: float | None = None) -> float:
    """Interior max of |L_fd psi - E psi| / max|psi| for the level-m eigenfunction."""
    B = magnetic_field(p)
    E = B * (2 * m + 1) if eigenvalue is None else eigenvalue
    psi = wick_eval(eigenfunction(p, m, n), grid.points())
    res = fd_apply_L(p, psi, grid) - E * psi
    return float(np.nanmax(np.abs(res[1:-1, 1:-1])) / np.max(np.abs(psi)))

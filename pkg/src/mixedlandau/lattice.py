"""Planar lattices: enumeration, word balls and Gaussian-tail truncation radii."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, exp, pi, sqrt

import numpy as np
from scipy.integrate import quad


@dataclass(frozen=True)
class Lattice:
    w1: complex = 1.0 + 0j
    w2: complex = 1j

    def __post_init__(self):
        object.__setattr__(self, "w1", complex(self.w1))
        object.__setattr__(self, "w2", complex(self.w2))
        if abs(np.imag(np.conj(self.w1) * self.w2)) <= 1e-14 * max(1.0, abs(self.w1) * abs(self.w2)):
            raise ValueError("lattice generators are R-linearly dependent")

    @property
    def area(self) -> float:
        return abs(float(np.imag(np.conj(self.w1) * self.w2)))

    @property
    def cell_diameter(self) -> float:
        return max(abs(self.w1 + self.w2), abs(self.w1 - self.w2))

    @property
    def generators(self) -> tuple[complex, complex]:
        return (self.w1, self.w2)

    def point(self, a: int, b: int) -> complex:
        return a * self.w1 + b * self.w2

    def scaled(self, s: float) -> "Lattice":
        return Lattice(s * self.w1, s * self.w2)

    @classmethod
    def square(cls, side: float = 1.0) -> "Lattice":
        return cls(side, 1j * side)

    @classmethod
    def from_list(cls, vals) -> "Lattice":
        w1r, w1i, w2r, w2i = (float(v) for v in vals)
        return cls(complex(w1r, w1i), complex(w2r, w2i))


def _coefficient_bounds(lat: Lattice, R: float) -> tuple[int, int]:
    # |a| <= R |w2| / area and |b| <= R |w1| / area for |a w1 + b w2| <= R
    return (int(ceil(R * abs(lat.w2) / lat.area)) + 1, int(ceil(R * abs(lat.w1) / lat.area)) + 1)


def lattice_points(lat: Lattice, R: float) -> np.ndarray:
    """All lattice points with modulus at most R (0 included), sorted by modulus."""
    if R < 0:
        raise ValueError("R must be nonnegative")
    na, nb = _coefficient_bounds(lat, R)
    a, b = np.meshgrid(np.arange(-na, na + 1), np.arange(-nb, nb + 1), indexing="ij")
    pts = (a * lat.w1 + b * lat.w2).ravel()
    pts = pts[np.abs(pts) <= R * (1 + 1e-12) + 1e-15]
    return pts[np.lexsort((np.angle(pts), np.abs(pts)))]


def word_ball(lat: Lattice, radius: int) -> list[tuple[int, int, complex]]:
    """Lattice elements a w1 + b w2 of word length |a| + |b| <= radius."""
    out = []
    for a in range(-radius, radius + 1):
        rest = radius - abs(a)
        for b in range(-rest, rest + 1):
            out.append((a, b, lat.point(a, b)))
    return out


def _tail_bound(B: float, degree: int, zmax: float, R: float, area: float,
                diameter: float) -> float:
    """Upper bound of sum_{|g|>R} (zmax + |g|)^deg exp(-B (|g| - zmax)^2).

    Summation by parts against the counting bound N(r) <= pi (r + d)^2 / area,
    valid for every translate of the lattice (d = cell diameter).
    """
    def f(r):
        x = max(r - zmax, 0.0)
        return (zmax + r) ** degree * exp(-B * x * x)

    def n_plus(r):
        return pi * (r + diameter) ** 2 / area

    # maximiser of f on [zmax, inf)
    peak = sqrt(zmax * zmax + degree / (2 * B))
    head = 0.0
    r0 = R
    if R < peak:
        head = n_plus(peak) * f(peak)
        r0 = peak
    upper = r0 + 40.0 / sqrt(B) + 10.0
    tail, _ = quad(lambda r: 2 * pi * (r + diameter) / area * f(r), r0, upper,
                   limit=200, epsabs=0.0, epsrel=1e-10)
    return head + n_plus(r0) * f(r0) + tail


def truncation_radius(B: float, poly_degree: int, zmax: float, eps: float,
                      area: float = 1.0, cell_diameter: float = sqrt(2.0)) -> float:
    """Smallest radius (on a 0.05 grid) whose Gaussian tail bound falls below ``eps``.

    The lattice enters only through its covolume ``area`` and fundamental cell
    diameter, so the radius is valid for any shifted copy of the lattice.
    """
    if B <= 0 or eps <= 0:
        raise ValueError("B and eps must be positive")
    step = 0.05
    if _tail_bound(B, poly_degree, zmax, 0.0, area, cell_diameter) < eps:
        return 0.0
    R = 0.0
    while _tail_bound(B, poly_degree, zmax, R, area, cell_diameter) >= eps:
        R += step
    return round(R, 10)

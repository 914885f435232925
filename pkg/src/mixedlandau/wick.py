"""Exact calculus on functions of the form

    f(z) = P(z, zbar) * exp(a|z|^2 + b z + c zbar + d)

with ``P`` a polynomial in ``z`` and ``zbar``. This class is closed under the
Wirtinger derivatives, multiplication by polynomials and affine substitution
``z -> a z + b``, which is all the operator algebra in this package needs.

Coefficients are double precision complex numbers; ``coeffs[(m, n)]`` is the
coefficient of ``z**m * zbar**n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Mapping

import numpy as np

from .errors import EvaluationOverflow, ExponentMismatch

PRUNE_REL = 1e-14
DEFAULT_TOL = 1e-10
MAX_EXPONENT = 700.0

Poly = Mapping[tuple[int, int], complex]


def _prune(coeffs: Poly) -> dict[tuple[int, int], complex]:
    items = {k: complex(v) for k, v in coeffs.items() if v != 0}
    if not items:
        return {}
    cutoff = PRUNE_REL * max(abs(v) for v in items.values())
    return {k: v for k, v in sorted(items.items()) if abs(v) >= cutoff}


def approx_eq(x: complex, y: complex, tol: float = DEFAULT_TOL) -> bool:
    """Scalar closeness: ``|x - y| <= tol * max(1, |x|, |y|)``."""
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


@dataclass(frozen=True)
class WickFunction:
    coeffs: dict[tuple[int, int], complex] = field(default_factory=dict)
    exp_a: float = 0.0
    exp_b: complex = 0j
    exp_c: complex = 0j
    exp_d: complex = 0j

    def __post_init__(self):
        a = self.exp_a
        if isinstance(a, complex) or np.iscomplexobj(a):
            if abs(complex(a).imag) > 0:
                raise TypeError("exp_a must be real")
            a = complex(a).real
        object.__setattr__(self, "exp_a", float(a))
        for name in ("exp_b", "exp_c", "exp_d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        for key in self.coeffs:
            m, n = key
            if m < 0 or n < 0:
                raise ValueError(f"negative exponent in monomial {key}")
        values = [self.exp_a, self.exp_b, self.exp_c, self.exp_d, *self.coeffs.values()]
        if not np.all(np.isfinite(np.asarray(values, dtype=complex))):
            raise ValueError("WickFunction values must be finite")
        object.__setattr__(self, "coeffs", _prune(self.coeffs))

    # -- constructors -----------------------------------------------------

    @classmethod
    def poly(cls, coeffs: Poly) -> "WickFunction":
        return cls(dict(coeffs))

    @classmethod
    def gaussian(cls, a: float, b: complex = 0j, c: complex = 0j, d: complex = 0j,
                 coeffs: Poly | None = None) -> "WickFunction":
        return cls(dict(coeffs) if coeffs is not None else {(0, 0): 1.0}, a, b, c, d)

    # -- structure --------------------------------------------------------

    @property
    def exponent(self) -> tuple[float, complex, complex, complex]:
        return (self.exp_a, self.exp_b, self.exp_c, self.exp_d)

    @property
    def degree(self) -> int:
        return max((m + n for m, n in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_coeff(self) -> float:
        return max((abs(v) for v in self.coeffs.values()), default=0.0)

    def with_exponent(self, a=None, b=None, c=None, d=None) -> "WickFunction":
        return WickFunction(
            self.coeffs,
            self.exp_a if a is None else a,
            self.exp_b if b is None else b,
            self.exp_c if c is None else c,
            self.exp_d if d is None else d,
        )

    def strip_exponent(self) -> "WickFunction":
        """Polynomial part alone (zero exponent)."""
        return WickFunction(self.coeffs)

    # -- arithmetic sugar -------------------------------------------------

    def __add__(self, other: "WickFunction") -> "WickFunction":
        return wick_add(self, other)

    def __sub__(self, other: "WickFunction") -> "WickFunction":
        return wick_add(self, other.scale(-1.0))

    def __neg__(self) -> "WickFunction":
        return self.scale(-1.0)

    def __mul__(self, s: complex) -> "WickFunction":
        return self.scale(s)

    __rmul__ = __mul__

    def scale(self, s: complex) -> "WickFunction":
        return WickFunction({k: s * v for k, v in self.coeffs.items()}, *self.exponent)

    def __call__(self, z):
        return wick_eval(self, z)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "coeffs": [[m, n, v.real, v.imag] for (m, n), v in self.coeffs.items()],
            "exp": [self.exp_a, self.exp_b.real, self.exp_b.imag,
                    self.exp_c.real, self.exp_c.imag, self.exp_d.real, self.exp_d.imag],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "WickFunction":
        coeffs: dict[tuple[int, int], complex] = {}
        for m, n, re, im in data["coeffs"]:
            key = (int(m), int(n))
            coeffs[key] = coeffs.get(key, 0j) + complex(re, im)
        a, br, bi, cr, ci, dr, di = data["exp"]
        return cls(coeffs, a, complex(br, bi), complex(cr, ci), complex(dr, di))

    @classmethod
    def from_json(cls, text: str) -> "WickFunction":
        return cls.from_dict(json.loads(text))


ZERO = WickFunction()
ONE = WickFunction({(0, 0): 1.0})
Z = WickFunction({(1, 0): 1.0})
ZBAR = WickFunction({(0, 1): 1.0})


def _exponents_match(f: WickFunction, g: WickFunction, tol: float) -> bool:
    return all(approx_eq(x, y, tol) for x, y in zip(f.exponent, g.exponent))


def wick_add(f: WickFunction, g: WickFunction, tol: float = DEFAULT_TOL) -> WickFunction:
    """Sum of two Wick functions sharing the same exponent.

    A zero function adopts the exponent of the other summand.
    """
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if not _exponents_match(f, g, tol):
        raise ExponentMismatch(f"exponents differ: {f.exponent} vs {g.exponent}")
    out = dict(f.coeffs)
    for k, v in g.coeffs.items():
        out[k] = out.get(k, 0j) + v
    return WickFunction(out, *f.exponent)


def poly_mul(p: Poly, q: Poly) -> dict[tuple[int, int], complex]:
    out: dict[tuple[int, int], complex] = {}
    for (m1, n1), u in p.items():
        for (m2, n2), v in q.items():
            key = (m1 + m2, n1 + n2)
            out[key] = out.get(key, 0j) + u * v
    return out


def wick_mul_poly(f: WickFunction, p: Poly) -> WickFunction:
    return WickFunction(poly_mul(f.coeffs, p), *f.exponent)


def wick_mul_exp(f: WickFunction, a: float = 0.0, b: complex = 0j, c: complex = 0j,
                 d: complex = 0j) -> WickFunction:
    """Multiply by ``exp(a|z|^2 + b z + c zbar + d)``."""
    return WickFunction(f.coeffs, f.exp_a + a, f.exp_b + b, f.exp_c + c, f.exp_d + d)


def wick_dz(f: WickFunction) -> WickFunction:
    """Wirtinger derivative d/dz."""
    out: dict[tuple[int, int], complex] = {}
    for (m, n), v in f.coeffs.items():
        if m:
            out[(m - 1, n)] = out.get((m - 1, n), 0j) + m * v
        # (a zbar + b) * P
        out[(m, n + 1)] = out.get((m, n + 1), 0j) + f.exp_a * v
        out[(m, n)] = out.get((m, n), 0j) + f.exp_b * v
    return WickFunction(out, *f.exponent)


def wick_dzbar(f: WickFunction) -> WickFunction:
    """Wirtinger derivative d/dzbar."""
    out: dict[tuple[int, int], complex] = {}
    for (m, n), v in f.coeffs.items():
        if n:
            out[(m, n - 1)] = out.get((m, n - 1), 0j) + n * v
        out[(m + 1, n)] = out.get((m + 1, n), 0j) + f.exp_a * v
        out[(m, n)] = out.get((m, n), 0j) + f.exp_c * v
    return WickFunction(out, *f.exponent)


def _poly_eval(coeffs: Poly, z: np.ndarray) -> np.ndarray:
    # Horner in zbar inside Horner in z
    if not coeffs:
        return np.zeros_like(z)
    zb = np.conj(z)
    mmax = max(m for m, _ in coeffs)
    rows: dict[int, dict[int, complex]] = {}
    for (m, n), v in coeffs.items():
        rows.setdefault(m, {})[n] = v
    acc = np.zeros_like(z)
    for m in range(mmax, -1, -1):
        row = rows.get(m, {})
        inner = np.zeros_like(z)
        for n in range(max(row, default=0), -1, -1):
            inner = inner * zb + row.get(n, 0j)
        acc = acc * z + inner
    return acc


def wick_eval(f: WickFunction, z):
    """Evaluate ``f`` at a scalar or array of complex points."""
    zz = np.asarray(z, dtype=complex)
    expo = f.exp_a * np.abs(zz) ** 2 + f.exp_b * zz + f.exp_c * np.conj(zz) + f.exp_d
    if f.coeffs and np.any(expo.real > MAX_EXPONENT):
        raise EvaluationOverflow(
            f"exponent real part {float(np.max(expo.real)):.1f} exceeds {MAX_EXPONENT}")
    out = _poly_eval(f.coeffs, zz) * np.exp(expo)
    return complex(out) if out.ndim == 0 else out


def _binom_row(a: complex, b: complex, k: int) -> list[complex]:
    # coefficients of (a x + b)^k in powers of x
    return [comb(k, j) * a ** j * b ** (k - j) for j in range(k + 1)]


def wick_translate(f: WickFunction, g) -> WickFunction:
    """Return the Wick form of ``z -> f(g.a * z + g.b)``.

    Substitution composes contravariantly:
    ``wick_translate(wick_translate(f, h), g) == wick_translate(f, compose(h, g))``.
    """
    a, b = complex(g.a), complex(g.b)
    ab, bb = np.conj(a), np.conj(b)
    out: dict[tuple[int, int], complex] = {}
    for (m, n), v in f.coeffs.items():
        zrow = _binom_row(a, b, m)
        zbrow = _binom_row(ab, bb, n)
        for i, u in enumerate(zrow):
            if u == 0:
                continue
            for j, w in enumerate(zbrow):
                out[(i, j)] = out.get((i, j), 0j) + v * u * w
    A = f.exp_a
    return WickFunction(
        out,
        A * abs(a) ** 2,
        A * a * bb + f.exp_b * a,
        A * ab * b + f.exp_c * ab,
        f.exp_d + A * abs(b) ** 2 + f.exp_b * b + f.exp_c * bb,
    )


def wick_residual(f: WickFunction, g: WickFunction) -> float:
    """Largest absolute coefficient of ``f - g``."""
    return (f - g).max_coeff()


def wick_approx_eq(f: WickFunction, g: WickFunction, tol: float = DEFAULT_TOL) -> bool:
    if f.is_zero() or g.is_zero():
        return f.max_coeff() <= tol and g.max_coeff() <= tol
    if not _exponents_match(f, g, tol):
        return False
    for key in set(f.coeffs) | set(g.coeffs):
        if not approx_eq(f.coeffs.get(key, 0j), g.coeffs.get(key, 0j), tol):
            return False
    return True


def random_wick(rng: np.random.Generator, degree: int = 6, exp_a: float | None = None,
                n_terms: int | None = None) -> WickFunction:
    """Random Wick function with O(1) coefficients, used by property suites."""
    keys = [(m, n) for m in range(degree + 1) for n in range(degree + 1 - m)]
    if n_terms is not None:
        idx = rng.choice(len(keys), size=min(n_terms, len(keys)), replace=False)
        keys = [keys[i] for i in idx]
    coeffs = {k: complex(*rng.normal(size=2)) for k in keys}
    a = -rng.uniform(0.2, 2.0) if exp_a is None else exp_a
    b, c, d = (complex(*rng.normal(scale=0.5, size=2)) for _ in range(3))
    return WickFunction(coeffs, a, b, c, d)

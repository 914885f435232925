"""The group G = T x| C, equivariant pairs (rho, tau) and the derived field data.

Hermitian product convention used everywhere: ``<z, w> = z * conj(w)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import NonPositiveField, NonUnimodular, NotAffine, NotConstant

UNIMODULAR_TOL = 1e-12
CONSTANCY_TOL = 1e-8


def herm(z, w):
    """``<z, w> = z * conj(w)``."""
    return z * np.conj(w)


def im_herm(z, w):
    return np.imag(z * np.conj(w))


@dataclass(frozen=True)
class GroupElement:
    """``[a, b]`` acting on the plane by ``z -> a z + b`` with ``|a| = 1``."""

    a: complex = 1.0 + 0j
    b: complex = 0j

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        if abs(abs(a) - 1.0) > UNIMODULAR_TOL:
            raise NonUnimodular(f"|a| = {abs(a)!r} is not 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return group_compose(self, other)

    def __call__(self, z):
        return group_act(self, z)

    @property
    def inv(self) -> "GroupElement":
        return group_inverse(self)

    @classmethod
    def translation(cls, b: complex) -> "GroupElement":
        return cls(1.0, b)

    @classmethod
    def rotation(cls, theta: float) -> "GroupElement":
        return cls(np.exp(1j * theta), 0j)


IDENTITY = GroupElement()


def group_compose(g: GroupElement, h: GroupElement) -> GroupElement:
    return GroupElement(g.a * h.a, g.a * h.b + g.b)


def group_inverse(g: GroupElement) -> GroupElement:
    ac = np.conj(g.a)
    return GroupElement(ac, -ac * g.b)


def group_act(g: GroupElement, z):
    return g.a * z + g.b


def random_group_element(rng: np.random.Generator, scale: float = 1.0,
                         rotations: bool = True) -> GroupElement:
    a = np.exp(1j * rng.uniform(0, 2 * np.pi)) if rotations else 1.0
    return GroupElement(a, scale * complex(*rng.normal(size=2)))


# -- equivariant pairs -----------------------------------------------------

class _AffinePair:
    """tau(z) = t_z z + t_zbar zbar + t_0, stored through ``affine_coeffs``."""

    h: GroupElement

    @property
    def alpha(self) -> complex:
        return self.h.a

    @property
    def beta(self) -> complex:
        return self.h.b

    def affine_coeffs(self) -> tuple[complex, complex, complex]:
        raise NotImplementedError

    def tau(self, z):
        tz, tzb, t0 = self.affine_coeffs()
        return tz * z + tzb * np.conj(z) + t0

    def dtau_dz(self, z):
        return self.affine_coeffs()[0] + 0 * np.asarray(z)

    def dtau_dzbar(self, z):
        return self.affine_coeffs()[1] + 0 * np.asarray(z)

    def lap_tau(self, z):
        return 0j * np.asarray(z)

    def __post_init__(self):
        rng = np.random.default_rng(7)
        for _ in range(3):
            g = random_group_element(rng)
            z = complex(*rng.normal(size=2))
            if check_equivariance(self, g, z) > 1e-9:
                raise ValueError(f"{type(self).__name__} failed the equivariance check")


@dataclass(frozen=True)
class InnerAffine(_AffinePair):
    """tau = h.z and rho(g) = h g h^-1."""

    h: GroupElement = IDENTITY

    def affine_coeffs(self):
        return (self.h.a, 0j, self.h.b)

    def rho(self, g: GroupElement) -> GroupElement:
        # closed form of h g h^-1; exact on the identity
        return GroupElement(g.a, self.h.a * g.b + self.h.b * (1 - g.a))


@dataclass(frozen=True)
class ConjugateAffine(_AffinePair):
    """tau(z) = alpha zbar + beta and rho([a, b]) = [conj(a), alpha conj(b) + beta (1 - conj(a))]."""

    h: GroupElement = IDENTITY

    def affine_coeffs(self):
        return (0j, self.h.a, self.h.b)

    def rho(self, g: GroupElement) -> GroupElement:
        ac = np.conj(g.a)
        return GroupElement(ac, self.h.a * np.conj(g.b) + self.h.b * (1 - ac))


@dataclass(frozen=True)
class Generic:
    """User-supplied pair. Every callable must accept numpy arrays."""

    tau: Callable
    dtau_dz: Callable
    dtau_dzbar: Callable
    lap_tau: Callable
    rho: Callable[[GroupElement], GroupElement]


EquivariantPair = Union[InnerAffine, ConjugateAffine, Generic]


def identity_generic() -> Generic:
    return Generic(
        tau=lambda z: np.asarray(z, dtype=complex),
        dtau_dz=lambda z: np.ones_like(np.asarray(z, dtype=complex)),
        dtau_dzbar=lambda z: np.zeros_like(np.asarray(z, dtype=complex)),
        lap_tau=lambda z: np.zeros_like(np.asarray(z, dtype=complex)),
        rho=lambda g: g,
    )


def is_affine(pair) -> bool:
    return isinstance(pair, _AffinePair)


def check_equivariance(pair, g: GroupElement, z) -> float:
    """``|tau(g.z) - rho(g).tau(z)|`` (max over array input)."""
    lhs = pair.tau(group_act(g, np.asarray(z, dtype=complex)))
    rhs = group_act(pair.rho(g), pair.tau(np.asarray(z, dtype=complex)))
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class ModelParams:
    nu: float
    mu: float
    pair: EquivariantPair = InnerAffine()

    def __post_init__(self):
        if not (self.nu >= 0 and self.mu >= 0):
            raise ValueError(f"weights must be nonnegative, got nu={self.nu}, mu={self.mu}")
        object.__setattr__(self, "nu", float(self.nu))
        object.__setattr__(self, "mu", float(self.mu))

    @property
    def B(self) -> float:
        return magnetic_field(self)

    @property
    def xi0(self) -> complex:
        return gauge_phi(self)

    def negated(self) -> "ModelParams":
        """Same pair with weights (-nu, -mu); bypasses the sign validation."""
        out = object.__new__(ModelParams)
        object.__setattr__(out, "nu", -self.nu)
        object.__setattr__(out, "mu", -self.mu)
        object.__setattr__(out, "pair", self.pair)
        return out

    def landau(self) -> "ModelParams":
        """Pure Landau model with the same field: nu = B, mu = 0."""
        return ModelParams(self.B, 0.0, InnerAffine())

    # -- JSON ---------------------------------------------------------------

    def to_dict(self) -> dict:
        if isinstance(self.pair, InnerAffine):
            kind = "inner"
        elif isinstance(self.pair, ConjugateAffine):
            kind = "conjugate"
        else:
            raise NotAffine("generic pairs are not serializable")
        h = self.pair.h
        return {"nu": self.nu, "mu": self.mu,
                "pair": {"kind": kind, "alpha": [h.a.real, h.a.imag],
                         "beta": [h.b.real, h.b.imag]}}

    @classmethod
    def from_dict(cls, data: dict) -> "ModelParams":
        unknown = set(data) - {"nu", "mu", "pair"}
        if unknown:
            raise ValueError(f"unknown model keys: {sorted(unknown)}")
        pair_spec = data.get("pair", {"kind": "inner"})
        unknown = set(pair_spec) - {"kind", "alpha", "beta"}
        if unknown:
            raise ValueError(f"unknown pair keys: {sorted(unknown)}")
        alpha = complex(*pair_spec.get("alpha", [1.0, 0.0]))
        beta = complex(*pair_spec.get("beta", [0.0, 0.0]))
        kinds = {"inner": InnerAffine, "conjugate": ConjugateAffine}
        try:
            pair_cls = kinds[pair_spec.get("kind", "inner")]
        except KeyError:
            raise ValueError(f"unknown pair kind {pair_spec.get('kind')!r}") from None
        return cls(float(data["nu"]), float(data["mu"]), pair_cls(GroupElement(alpha, beta)))

    @classmethod
    def from_json(cls, text: str) -> "ModelParams":
        return cls.from_dict(json.loads(text))


# -- derived quantities ----------------------------------------------------

def s_function(p: ModelParams, z):
    """S(z) = nu z + mu (tau dtaubar/dzbar - taubar dtau/dzbar)."""
    z = np.asarray(z, dtype=complex)
    pair = p.pair
    tau = pair.tau(z)
    dtau_dzbar = pair.dtau_dzbar(z)
    dtaubar_dzbar = np.conj(pair.dtau_dz(z))
    out = p.nu * z + p.mu * (tau * dtaubar_dzbar - np.conj(tau) * dtau_dzbar)
    return complex(out) if out.ndim == 0 else out


def s_affine(p: ModelParams) -> tuple[float, complex]:
    """(slope, offset) with S(z) = slope * z + offset, for affine pairs."""
    if not is_affine(p.pair):
        raise NotAffine("closed-form S needs an affine pair")
    tz, tzb, t0 = p.pair.affine_coeffs()
    slope = p.nu + p.mu * (abs(tz) ** 2 - abs(tzb) ** 2)
    offset = p.mu * (np.conj(tz) * t0 - tzb * np.conj(t0))
    return float(slope), complex(offset)


def _raw_field(p: ModelParams, z):
    return p.nu + p.mu * (np.abs(p.pair.dtau_dz(z)) ** 2 - np.abs(p.pair.dtau_dzbar(z)) ** 2)


def magnetic_field(p: ModelParams, check_positive: bool = True) -> float:
    """B = nu + mu (|dtau/dz|^2 - |dtau/dzbar|^2), asserted constant for generic pairs."""
    if is_affine(p.pair):
        B = s_affine(p)[0]
    else:
        rng = np.random.default_rng(0)
        zs = rng.normal(scale=2.0, size=(10, 2)) @ np.array([1.0, 1j])
        vals = np.real(_raw_field(p, zs))
        B = float(np.real(_raw_field(p, 0j)))
        if np.max(np.abs(vals - B)) > CONSTANCY_TOL:
            raise NotConstant(f"field varies by {np.ptp(vals):.3g}; tau is not equivariant")
    if check_positive and B <= 0:
        raise NonPositiveField(f"B = {B} <= 0")
    return B


def gauge_phi(p: ModelParams) -> complex:
    """Offset xi0 = S(z) - B z defining the gauge phi(z) = -2 Im<z, xi0>."""
    return s_affine(p)[1]


def phi_value(p: ModelParams, z):
    """Real gauge function phi(z) = -2 Im(z conj(xi0)), phi(0) = 0."""
    return -2.0 * im_herm(np.asarray(z, dtype=complex), gauge_phi(p))

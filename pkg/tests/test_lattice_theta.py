import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedlandau.automorphy import functional_eq_residual
from mixedlandau.errors import InconsistentCocycle
from mixedlandau.lattice import Lattice, lattice_points, truncation_radius, word_ball
from mixedlandau.model import ConjugateAffine, GroupElement, InnerAffine, ModelParams, im_herm
from mixedlandau.spectral import eigenfunction
from mixedlandau.theta import (
    dimension_estimate,
    dimension_formula,
    fundamental_domain_grid,
    landau_shift,
    periodize,
    twisted_shift,
)
from mixedlandau.wick import WickFunction

SQUARE = Lattice.square()


def sigma_model(sigma, xi=0j):
    return ModelParams(sigma - 1.0, 1.0, InnerAffine(GroupElement(1, xi)))


def test_lattice_validation():
    with pytest.raises(ValueError):
        Lattice(1.0, 2.0)
    lat = Lattice(1 + 0.5j, 0.3 + 2j)
    assert lat.area == pytest.approx(abs((np.conj(lat.w1) * lat.w2).imag))
    assert lat.scaled(2).area == pytest.approx(4 * lat.area)
    assert Lattice.from_list([1, 0, 0, 1]) == SQUARE


def test_lattice_points_examples():
    np.testing.assert_array_equal(lattice_points(SQUARE, 0), [0])
    assert sorted(map(complex, lattice_points(SQUARE, 1)), key=lambda c: (c.real, c.imag)) == [-1, -1j, 0, 1j, 1]
    assert len(lattice_points(SQUARE, 1.5)) == 9
    with pytest.raises(ValueError):
        lattice_points(SQUARE, -1)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.5, 2), st.floats(-1, 1), st.floats(0.5, 2), st.floats(0, 6))
def test_lattice_points_complete(x1, y2, s, R):
    lat = Lattice(complex(x1, 0.2), complex(y2, s))
    pts = lattice_points(lat, R)
    # brute force over a generous coefficient box
    a, b = np.meshgrid(np.arange(-40, 41), np.arange(-40, 41))
    ref = (a * lat.w1 + b * lat.w2).ravel()
    ref = ref[np.abs(ref) <= R * (1 + 1e-12) + 1e-15]
    assert len(pts) == len(ref)
    assert np.all(np.diff(np.abs(pts)) >= -1e-12)


def test_word_ball():
    ball = word_ball(SQUARE, 2)
    assert len(ball) == 13
    assert all(abs(a) + abs(b) <= 2 for a, b, _ in ball)


def direct_tail(B, deg, zmax, R, lat, big=30.0):
    pts = np.abs(lattice_points(lat, big))
    pts = pts[pts > R]
    return float(np.sum((zmax + pts) ** deg * np.exp(-B * np.maximum(pts - zmax, 0) ** 2)))


def test_truncation_radius_example():
    R = truncation_radius(np.pi, 0, 1.0, 1e-10)
    assert 3.5 <= R <= 5.0
    assert direct_tail(np.pi, 0, 1.0, R, SQUARE) < 1e-10
    assert truncation_radius(np.pi, 0, 1.0, 1e6) == 0.0


@pytest.mark.parametrize("B,deg,zmax", [(1.0, 3, 0.5), (np.pi, 6, 2.0), (0.5, 0, 1.0)])
def test_truncation_radius_bound_holds(B, deg, zmax):
    for eps in (1e-4, 1e-8, 1e-12):
        R = truncation_radius(B, deg, zmax, eps)
        # the bound covers every shift of the lattice by |z| <= zmax
        for shift in (0, zmax, zmax * 1j, zmax * np.exp(0.3j)):
            gam = lattice_points(SQUARE, R + 40)
            d = np.abs(gam[np.abs(gam) > R] + shift)
            assert direct_tail(B, deg, zmax, R, SQUARE) < eps
            assert np.sum(d ** deg * np.exp(-B * d ** 2)) < eps


def test_truncation_radius_monotone():
    radii = [truncation_radius(1.0, 2, 1.0, eps) for eps in (1e-2, 1e-4, 1e-8, 1e-12)]
    assert radii == sorted(radii)
    with pytest.raises(ValueError):
        truncation_radius(0.0, 0, 1.0, 1e-3)


def test_dimension_formula():
    assert dimension_formula(sigma_model(np.pi), SQUARE) == pytest.approx(2)
    assert dimension_formula(sigma_model(2 * np.pi), SQUARE) == pytest.approx(4)
    lat2 = Lattice(1.0, 2j)
    assert dimension_formula(sigma_model(np.pi), lat2) == pytest.approx(4)


def test_fundamental_domain_grid():
    lat = Lattice(1 + 0.2j, 0.4 + 1.5j)
    Z, w = fundamental_domain_grid(lat, 10)
    assert Z.size == 100 and w * 100 == pytest.approx(lat.area)


def random_pts(rng, n, scale=1.0):
    return rng.normal(scale=scale, size=n) + 1j * rng.normal(scale=scale, size=n)


@pytest.mark.parametrize("p", [
    sigma_model(np.pi),
    sigma_model(np.pi, 0.4 - 0.3j),
    ModelParams(np.pi - 0.5, 0.5, InnerAffine(GroupElement(np.exp(0.9j), 1 + 1j))),
    ModelParams(np.pi + 1, 1.0, ConjugateAffine(GroupElement(1j, 0.2 - 0.5j))),
    sigma_model(2 * np.pi),
], ids=["pi", "pi-xi", "pi-rotated", "conjugate", "2pi"])
def test_periodized_functional_equation(rng, p):
    for m, n in [(0, 0), (1, 2)]:
        F = periodize(p, SQUARE, eigenfunction(p, m, n))
        gammas = [SQUARE.point(*rng.integers(-3, 4, size=2)) for _ in range(20)]
        zs = random_pts(rng, 20)
        for gamma, z in zip(gammas, zs):
            assert functional_eq_residual(p, F, gamma, z) <= 1e-8
        assert np.max(np.abs(F(zs))) > 1e-3


def test_periodized_fixed_by_twisted_shifts(rng):
    p = sigma_model(np.pi, 0.2 + 0.1j)
    F = periodize(p, SQUARE, eigenfunction(p, 0, 1))
    zs = random_pts(rng, 20)
    for gamma in SQUARE.generators:
        np.testing.assert_allclose(twisted_shift(p, F, gamma)(zs), F(zs), atol=1e-8)
        np.testing.assert_allclose(landau_shift(p, F.landau, gamma)(zs), F.landau(zs), atol=1e-8)


def test_landau_shift_is_group_action(rng):
    seed = eigenfunction(sigma_model(np.pi), 0, 2)

    def G(z):
        return np.exp(-0.5 * np.abs(z - 0.3) ** 2) * (1 + z)

    zs = random_pts(rng, 10)
    g1, g2 = 1.0, 1j
    p = sigma_model(np.pi, 0.3 - 0.2j)
    lhs = landau_shift(p, landau_shift(p, G, g2), g1)(zs)
    np.testing.assert_allclose(lhs, landau_shift(p, G, g1 + g2)(zs), atol=1e-12)
    bad = sigma_model(1.0)
    lhs = landau_shift(bad, landau_shift(bad, G, g2), g1)(zs)
    assert np.max(np.abs(lhs - landau_shift(bad, G, g1 + g2)(zs))) > 1e-2
    assert seed.exp_a == pytest.approx(-np.pi)


def test_periodize_errors_and_zero():
    p = sigma_model(1.0)
    with pytest.raises(InconsistentCocycle):
        periodize(p, SQUARE, eigenfunction(p, 0, 0))
    q = sigma_model(np.pi)
    with pytest.raises(ValueError):
        periodize(q, SQUARE, WickFunction({(0, 0): 1.0}, -1.0))
    F = periodize(q, SQUARE, WickFunction())
    np.testing.assert_array_equal(F(np.array([0.1, 2j])), 0)


def test_truncation_honesty(rng):
    p = sigma_model(np.pi, 0.1j)
    seed = eigenfunction(p, 1, 1)
    zs = random_pts(rng, 20)
    for eps in (1e-4, 1e-6, 1e-8):
        a = periodize(p, SQUARE, seed, eps)(zs)
        b = periodize(p, SQUARE, seed, eps / 2)(zs)
        assert np.max(np.abs(a - b)) < eps


@pytest.mark.parametrize("sigma,k,expected", [(np.pi, 0, 2), (np.pi, 1, 2), (2 * np.pi, 0, 4)])
def test_dimension_estimate(sigma, k, expected):
    est = dimension_estimate(sigma_model(sigma), SQUARE, k=k)
    assert est.rank == expected and est.passed
    assert est.summary() == f"formula {expected}, estimated {expected}, PASS"


def test_dimension_estimate_stable():
    p = sigma_model(np.pi)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert dimension_estimate(p, SQUARE, grid_points=96).rank == 2
        assert dimension_estimate(p, SQUARE, n_seeds=8).rank == 2


def test_dimension_estimate_preconditions():
    with pytest.raises(InconsistentCocycle):
        dimension_estimate(sigma_model(1.0), SQUARE)
    with pytest.raises(ValueError):
        dimension_estimate(sigma_model(2 * np.pi), SQUARE, n_seeds=5)


def test_im_herm_shift_sign():
    # the Landau weight uses Im<z, gamma> = Im(z conj(gamma))
    assert im_herm(1j, 1.0) == pytest.approx(1.0)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedlandau.automorphy import (
    J_factor,
    chain_phase,
    check_chain_rule,
    check_multiplier_independence,
    functional_eq_residual,
    j_factor,
    multiplier_chi,
    nontriviality_test,
    pseudo_character_check,
    pseudo_character_deviation,
)
from mixedlandau.errors import NotAffine
from mixedlandau.lattice import Lattice
from mixedlandau.model import (
    ConjugateAffine,
    GroupElement,
    InnerAffine,
    ModelParams,
    identity_generic,
    im_herm,
    random_group_element,
)
from mixedlandau.spectral import eigenfunction
from mixedlandau.wick import wick_eval

from conftest import random_affine_model

SQUARE = Lattice.square()


def sigma_model(sigma, xi=0j):
    # inner pair with alpha = 1 so that nu + mu = sigma, xi0 = mu * xi
    return ModelParams(sigma - 1.0, 1.0, InnerAffine(GroupElement(1, xi)))


def test_j_factor_examples():
    z = np.array([0.3 + 1j, -2 + 0.5j])
    np.testing.assert_array_equal(j_factor(1.7, GroupElement(), z), 1)
    np.testing.assert_array_equal(j_factor(0.0, GroupElement(1j, 3), z), 1)
    assert j_factor(1.0, GroupElement(1, 1j), 1.0) == pytest.approx(np.exp(2j))


def test_J_factor_examples(rng):
    z = rng.normal(size=5) + 1j * rng.normal(size=5)
    g = random_group_element(rng)
    p0 = ModelParams(1.3, 0.0, InnerAffine(GroupElement(1j, 2)))
    np.testing.assert_allclose(J_factor(p0, g, z), j_factor(1.3, g, z))
    np.testing.assert_allclose(J_factor(random_affine_model(rng), GroupElement(), z), 1)


def test_J_inner_translation():
    alpha, beta = np.exp(0.7j), 1.5 - 0.4j
    p = ModelParams(0.8, 1.3, InnerAffine(GroupElement(alpha, beta)))
    c = 0.6 + 1.1j
    z = np.linspace(-2, 2, 7) + 0.5j
    expect = np.exp(-2j * p.B * im_herm(z, c)) * np.exp(-2j * p.mu * im_herm(beta, alpha * c))
    np.testing.assert_allclose(J_factor(p, GroupElement.translation(c), z), expect, atol=1e-13)


def test_chain_phase_examples(rng):
    p = random_affine_model(rng)
    assert chain_phase(p, GroupElement(), random_group_element(rng)) == 0
    q = sigma_model(np.pi)
    assert chain_phase(q, GroupElement.translation(1), GroupElement.translation(1j)) == pytest.approx(np.pi)


@pytest.mark.parametrize("kind", ["inner", "conjugate"])
def test_chain_rule(rng, kind):
    worst = 0.0
    for _ in range(100):
        p = random_affine_model(rng, kind)
        g, h = random_group_element(rng), random_group_element(rng)
        z = complex(*rng.normal(scale=2, size=2))
        worst = max(worst, check_chain_rule(p, g, h, z))
        assert check_chain_rule(p, g, GroupElement(), z) == 0.0
    assert worst <= 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_chain_rule_property(seed):
    rng = np.random.default_rng(seed)
    p = random_affine_model(rng)
    g, h = random_group_element(rng, scale=3), random_group_element(rng, scale=3)
    assert check_chain_rule(p, g, h, complex(*rng.normal(size=2))) <= 1e-11


@pytest.mark.parametrize("N", [1, 2, 3])
def test_nontriviality_criterion(N):
    assert nontriviality_test(sigma_model(np.pi * N), SQUARE).passed
    assert not nontriviality_test(sigma_model(np.pi * N + 0.1), SQUARE).passed


def test_nontriviality_report_names_offender():
    rep = nontriviality_test(sigma_model(1.0), SQUARE, word_len=1)
    assert not rep.passed
    row = next(r for r in rep.rows if r[0] == 1 and r[1] == 1j)
    assert row[2] * np.pi == pytest.approx(1.0)
    assert "NOT integral" in rep.summary()
    assert rep.radius == 1 and rep.n_pairs == 25


def test_nontriviality_trivial_limit():
    assert nontriviality_test(ModelParams(0.0, 0.0), SQUARE).passed
    with pytest.raises(ValueError):
        nontriviality_test(sigma_model(np.pi), SQUARE, word_len=0)


def test_multiplier_inner_formula(rng):
    for _ in range(10):
        p = random_affine_model(rng, "inner")
        gamma = complex(*rng.normal(size=2))
        assert multiplier_chi(p, gamma) == pytest.approx(np.exp(4j * im_herm(p.xi0, gamma)), abs=1e-12)


def test_multiplier_examples():
    assert multiplier_chi(ModelParams(1.1, 0.0, InnerAffine(GroupElement(1j, 3))), 2 + 1j) == pytest.approx(1)
    p = ModelParams(0.5, 1.0, InnerAffine(GroupElement(1, 2)))
    assert multiplier_chi(p, 1j) == pytest.approx(np.exp(-8j))


def test_multiplier_requires_affine():
    with pytest.raises(NotAffine):
        multiplier_chi(ModelParams(1, 1, identity_generic()), 1.0)


def test_multiplier_independence(rng):
    for kind in ("inner", "conjugate"):
        for _ in range(20):
            p = random_affine_model(rng, kind)
            gamma = complex(*rng.normal(scale=2, size=2))
            zs = rng.normal(scale=2, size=10) + 1j * rng.normal(scale=2, size=10)
            assert check_multiplier_independence(p, gamma, zs) <= 1e-10
            assert check_multiplier_independence(p, gamma, zs, field_shift=0.1) > 1e-3
    p0 = ModelParams(1.0, 0.0)
    assert check_multiplier_independence(p0, 1 + 1j, [0.3, 2j]) == 0.0


def test_pseudo_character():
    assert pseudo_character_check(sigma_model(np.pi), SQUARE) <= 1e-12
    assert pseudo_character_check(sigma_model(np.pi, 0.3 + 0.7j), SQUARE) <= 1e-12
    assert pseudo_character_deviation(sigma_model(1.0), 1.0, 1j) > 0.1
    assert pseudo_character_deviation(sigma_model(1.0), 1.0 + 2j, 0j) == 0.0
    pc = ModelParams(np.pi + 1, 1.0, ConjugateAffine(GroupElement(1j, 0.2)))
    assert pseudo_character_check(pc, SQUARE) <= 1e-12


def test_functional_eq_controls():
    p = sigma_model(np.pi)
    assert functional_eq_residual(p, lambda z: np.zeros_like(z), 1j, [0.1, 0.5j]) == 0.0
    psi = eigenfunction(p, 0, 0)
    assert functional_eq_residual(p, lambda z: wick_eval(psi, z), 1.0, np.array([0.2 + 0.1j, -0.3j])) > 0.1

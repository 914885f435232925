import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedlandau.errors import EvaluationOverflow, ExponentMismatch
from mixedlandau.model import GroupElement, group_compose
from mixedlandau.wick import (
    ONE,
    WickFunction,
    random_wick,
    wick_add,
    wick_approx_eq,
    wick_dz,
    wick_dzbar,
    wick_eval,
    wick_mul_poly,
    wick_translate,
)


def gauss(a, coeffs=None):
    return WickFunction(coeffs or {(0, 0): 1.0}, a)


def test_add_zero_is_identity(rng):
    f = random_wick(rng, 3)
    assert wick_approx_eq(wick_add(f, WickFunction()), f)


def test_add_coefficients():
    f = WickFunction({(1, 0): 1.0}, -1.0)
    g = WickFunction({(0, 1): 1.0}, -1.0)
    assert wick_approx_eq(f + g, WickFunction({(1, 0): 1.0, (0, 1): 1.0}, -1.0))


def test_add_rejects_incompatible_exponents():
    with pytest.raises(ExponentMismatch):
        wick_add(gauss(-1.0), gauss(-2.0))


def test_mul_poly_examples():
    f = WickFunction({(0, 0): 1.0, (1, 0): 1.0}, -1.0)
    assert wick_approx_eq(wick_mul_poly(f, {(0, 0): 1.0}), f)
    assert wick_approx_eq(wick_mul_poly(WickFunction({(1, 0): 1.0}), {(0, 1): 1.0}),
                          WickFunction({(1, 1): 1.0}))
    assert wick_approx_eq(wick_mul_poly(f, {(1, 0): 1.0}),
                          WickFunction({(1, 0): 1.0, (2, 0): 1.0}, -1.0))


def test_dz_examples():
    a = -0.7
    assert wick_approx_eq(wick_dz(gauss(a)), WickFunction({(0, 1): a}, a))
    assert wick_approx_eq(wick_dz(WickFunction({(5, 0): 1.0})), WickFunction({(4, 0): 5.0}))


def test_dzbar_of_z_gaussian():
    f = WickFunction({(1, 0): 1.0}, -1.0)
    assert wick_approx_eq(wick_dzbar(f), WickFunction({(2, 0): -1.0}, -1.0))


def _fd_wirtinger(f, z, h=1e-5):
    fx = (wick_eval(f, z + h) - wick_eval(f, z - h)) / (2 * h)
    fy = (wick_eval(f, z + 1j * h) - wick_eval(f, z - 1j * h)) / (2 * h)
    return (fx - 1j * fy) / 2, (fx + 1j * fy) / 2


def test_dzbar_matches_finite_differences(rng):
    f = WickFunction({(1, 0): 1.0}, -1.0)
    df = wick_dzbar(f)
    for z in rng.normal(size=5) + 1j * rng.normal(size=5):
        _, fd = _fd_wirtinger(f, z)
        exact = wick_eval(df, z)
        assert abs(fd - exact) <= 1e-8 * max(1.0, abs(exact))


def test_derivatives_match_finite_differences_random(rng):
    for _ in range(5):
        f = random_wick(rng, 4)
        for z in rng.normal(scale=0.7, size=3) + 1j * rng.normal(scale=0.7, size=3):
            fd_z, fd_zb = _fd_wirtinger(f, z)
            scale = max(1.0, abs(fd_z), abs(fd_zb))
            assert abs(fd_z - wick_eval(wick_dz(f), z)) <= 1e-7 * scale
            assert abs(fd_zb - wick_eval(wick_dzbar(f), z)) <= 1e-7 * scale


def test_eval_examples():
    assert wick_eval(ONE, 3 - 2j) == 1
    assert wick_eval(WickFunction({(1, 0): 1.0}, -1.0), 1.0) == pytest.approx(np.exp(-1))
    B = 1.0
    f = WickFunction({(0, 0): 1.0, (1, 1): -2 * B})
    assert wick_eval(f, 1 + 1j) == pytest.approx(-3)


def test_eval_overflow():
    with pytest.raises(EvaluationOverflow):
        wick_eval(gauss(1.0), 30.0)


def test_translate_examples():
    f = WickFunction({(1, 0): 1.0})
    assert wick_approx_eq(wick_translate(f, GroupElement()), f)
    assert wick_approx_eq(wick_translate(f, GroupElement(1, 1)),
                          WickFunction({(1, 0): 1.0, (0, 0): 1.0}))
    g = wick_translate(gauss(-1.0), GroupElement(1, 1))
    assert wick_approx_eq(g, WickFunction({(0, 0): 1.0}, -1.0, -1.0, -1.0, -1.0))


def test_translate_pointwise(rng):
    f = random_wick(rng, 4)
    g = GroupElement(np.exp(0.9j), 0.3 - 0.4j)
    zs = rng.normal(size=6) + 1j * rng.normal(size=6)
    np.testing.assert_allclose(wick_eval(wick_translate(f, g), zs), wick_eval(f, g.a * zs + g.b),
                               rtol=1e-11)


def test_approx_eq_tolerance_semantics(rng):
    f = random_wick(rng, 3)
    assert wick_approx_eq(f, f, 1e-10)
    assert not wick_approx_eq(f, f.scale(2.0), 1e-10)
    key = next(iter(f.coeffs))
    bumped = dict(f.coeffs)
    bumped[key] += 1e-12
    assert wick_approx_eq(f, WickFunction(bumped, *f.exponent), 1e-10)


def test_complex_exp_a_rejected():
    with pytest.raises(TypeError):
        WickFunction({(0, 0): 1.0}, -1.0 + 0.5j)


def test_pruning_drops_tiny_coefficients():
    f = WickFunction({(0, 0): 1.0, (1, 0): 1e-16})
    assert (1, 0) not in f.coeffs


def test_json_roundtrip(rng):
    f = random_wick(rng, 3)
    data = json.loads(f.to_json())
    assert set(data) == {"coeffs", "exp"} and len(data["exp"]) == 7
    assert wick_approx_eq(WickFunction.from_json(f.to_json()), f, 1e-15)


@st.composite
def wick_functions(draw):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    deg = draw(st.integers(0, 6))
    return random_wick(np.random.default_rng(seed), deg)


@st.composite
def group_elements(draw):
    theta = draw(st.floats(0, 2 * np.pi))
    re, im = draw(st.floats(-2, 2)), draw(st.floats(-2, 2))
    return GroupElement(np.exp(1j * theta), complex(re, im))


@settings(max_examples=40, deadline=None)
@given(wick_functions())
def test_mixed_partials_commute(f):
    assert wick_approx_eq(wick_dz(wick_dzbar(f)), wick_dzbar(wick_dz(f)), 1e-10)


@settings(max_examples=40, deadline=None)
@given(wick_functions(), group_elements(), group_elements())
def test_translation_composes_contravariantly(f, g, h):
    # f(h.(g.z)) = f((h g).z)
    lhs = wick_translate(wick_translate(f, h), g)
    assert wick_approx_eq(lhs, wick_translate(f, group_compose(h, g)), 1e-9)


@settings(max_examples=25, deadline=None)
@given(wick_functions())
def test_eval_derivative_second_order(f):
    z = 0.3 - 0.2j
    exact = wick_eval(wick_dz(f), z)
    errs = []
    for h in (1e-2, 5e-3):
        fx = (wick_eval(f, z + h) - wick_eval(f, z - h)) / (2 * h)
        fy = (wick_eval(f, z + 1j * h) - wick_eval(f, z - 1j * h)) / (2 * h)
        errs.append(abs((fx - 1j * fy) / 2 - exact))
    if errs[0] > 1e-9 * max(1.0, abs(exact)):
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)

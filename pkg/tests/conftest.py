import numpy as np
import pytest

from mixedlandau.model import ConjugateAffine, GroupElement, InnerAffine, ModelParams


def random_affine_model(rng: np.random.Generator, kind: str | None = None) -> ModelParams:
    kind = kind or rng.choice(["inner", "conjugate"])
    h = GroupElement(np.exp(1j * rng.uniform(0, 2 * np.pi)), complex(*rng.normal(size=2)))
    if kind == "inner":
        return ModelParams(rng.uniform(0.2, 2.0), rng.uniform(0.0, 2.0), InnerAffine(h))
    mu = rng.uniform(0.0, 1.5)
    return ModelParams(mu + rng.uniform(0.2, 2.0), mu, ConjugateAffine(h))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_model():
    return random_affine_model


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

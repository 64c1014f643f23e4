import numpy as np
import pytest

from cuwsd import ExactMatrix, GaussianInt


def random_exact_matrix(rng: np.random.Generator, n: int, span: int = 3) -> ExactMatrix:
    re = rng.integers(-span, span + 1, size=(n, n))
    im = rng.integers(-span, span + 1, size=(n, n))
    return ExactMatrix(re, im)


def random_monomial(rng: np.random.Generator, n: int) -> ExactMatrix:
    """Random unitary monomial matrix with entries in {+-1, +-j}."""
    perm = rng.permutation(n)
    phases = [(GaussianInt(1, 0), GaussianInt(-1, 0), GaussianInt(0, 1), GaussianInt(0, -1))[p]
              for p in rng.integers(0, 4, size=n)]
    re = np.zeros((n, n), dtype=np.int64)
    im = np.zeros((n, n), dtype=np.int64)
    for r, (c, phase) in enumerate(zip(perm, phases)):
        re[r, c] = phase.re
        im[r, c] = phase.im
    return ExactMatrix(re, im)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240810)

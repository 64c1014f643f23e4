import json

import numpy as np
import pytest

from conftest import random_exact_matrix
from cuwsd import ExactMatrix, GaussianInt, J, anticommutes, commutes, pauli
from cuwsd.exact import conj_transpose, kron, matmul


def test_gaussian_int_arithmetic():
    a = GaussianInt(2, -1)
    b = GaussianInt(-3, 4)
    assert a + b == GaussianInt(-1, 3)
    assert a - b == GaussianInt(5, -5)
    assert -a == GaussianInt(-2, 1)
    assert a * b == GaussianInt(-2, 11)
    assert a.conjugate() == GaussianInt(2, 1)
    assert not GaussianInt(0, 0)
    assert a.to_complex() == 2 - 1j


def test_multiplication_by_j_rotates():
    g = GaussianInt(3, 5)
    assert J * g == GaussianInt(-5, 3)


def test_pauli_products_hand_expanded():
    i2 = ExactMatrix.identity(2)
    s1, s2, s3 = pauli(1), pauli(2), pauli(3)
    assert s1 @ s1 == -i2
    assert i2 @ s2 == s2
    assert s1 @ s2 == s3.scale(J)
    assert s2 @ s1 == -s3.scale(J)


def test_matmul_dimension_mismatch():
    with pytest.raises(ValueError):
        ExactMatrix.identity(2) @ ExactMatrix.identity(4)


def test_kron_hand_expanded():
    i2 = ExactMatrix.identity(2)
    s1, s3 = pauli(1), pauli(3)
    block = i2.kron(s1)
    assert block.n == 4
    expected = ExactMatrix(
        np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]),
        np.zeros((4, 4), dtype=np.int64),
    )
    assert block == expected
    diag = s3.kron(s3)
    assert diag == ExactMatrix(np.diag([1, -1, -1, 1]), np.zeros((4, 4), dtype=np.int64))
    assert s1.kron(ExactMatrix.identity(1)) == s1


def test_conj_transpose_hand_expanded():
    i4 = ExactMatrix.identity(4)
    s2, s3 = pauli(2), pauli(3)
    assert conj_transpose(i4) == i4
    assert s2.H == -s2
    assert s3.scale(J).H == -s3.scale(J)


def test_predicates():
    i2 = ExactMatrix.identity(2)
    s1, s2, s3 = pauli(1), pauli(2), pauli(3)
    assert s3.is_hermitian()
    assert not s3.is_anti_hermitian()
    assert s1.is_anti_hermitian() and s2.is_anti_hermitian()
    assert all(m.is_unitary() for m in (i2, s1, s2, s3))
    assert anticommutes(s1, s2)
    assert commutes(i2, s1)
    assert not commutes(s1, s2)
    with pytest.raises(ValueError):
        commutes(i2, ExactMatrix.identity(4))


def test_monomial_and_alphabet():
    s2 = pauli(2)
    assert s2.is_monomial()
    assert s2.has_unit_entries()
    dense = ExactMatrix(np.ones((2, 2), dtype=np.int64), np.zeros((2, 2), dtype=np.int64))
    assert not dense.is_monomial()
    big = ExactMatrix(2 * np.eye(2, dtype=np.int64), np.zeros((2, 2), dtype=np.int64))
    assert not big.has_unit_entries()


def test_immutability():
    m = ExactMatrix.identity(2)
    with pytest.raises(AttributeError):
        m.re = np.zeros((2, 2))
    with pytest.raises(ValueError):
        m.re[0, 0] = 5


def test_rejects_non_square():
    with pytest.raises(ValueError):
        ExactMatrix(np.zeros((2, 3)), np.zeros((2, 3)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_algebra_properties_random(rng, n):
    for _ in range(20):
        a = random_exact_matrix(rng, n)
        b = random_exact_matrix(rng, n)
        c = random_exact_matrix(rng, n)
        assert (a @ b) @ c == a @ (b @ c)
        assert (a @ b).H == b.H @ a.H
        assert a.H.H == a


@pytest.mark.parametrize("dims", [(1, 2), (2, 2), (2, 3)])
def test_kron_mixed_product_random(rng, dims):
    m, n = dims
    for _ in range(10):
        a, c = random_exact_matrix(rng, m), random_exact_matrix(rng, m)
        b, d = random_exact_matrix(rng, n), random_exact_matrix(rng, n)
        assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)
        e = random_exact_matrix(rng, 2)
        assert kron(a, kron(b, e)) == kron(kron(a, b), e)


def test_to_float_roundtrip_exact(rng):
    for n in (1, 2, 4):
        m = random_exact_matrix(rng, n, span=1000)
        f = m.to_float()
        assert np.array_equal(f.real.astype(np.int64), m.re)
        assert np.array_equal(f.imag.astype(np.int64), m.im)


def test_matmul_matches_float_path(rng):
    for _ in range(10):
        a = random_exact_matrix(rng, 4)
        b = random_exact_matrix(rng, 4)
        exact = (a @ b).to_float()
        floats = a.to_float() @ b.to_float()
        assert np.array_equal(exact, floats)


def test_json_roundtrip(rng):
    m = random_exact_matrix(rng, 4)
    data = json.loads(json.dumps(m.to_json_dict()))
    assert ExactMatrix.from_json_dict(data) == m
    assert data["n"] == 4
    assert data["entries"][0][0] == [int(m.re[0, 0]), int(m.im[0, 0])]


def test_json_rejects_bad_shape():
    with pytest.raises(ValueError):
        ExactMatrix.from_json_dict({"n": 2, "entries": [[[1, 0]]]})


def test_entry_accessor():
    s2 = pauli(2)
    assert s2.entry(0, 1) == GaussianInt(0, 1)
    assert s2.entry(0, 0) == GaussianInt(0, 0)


def test_functional_aliases():
    s1, s2 = pauli(1), pauli(2)
    assert matmul(s1, s2) == s1 @ s2
    assert kron(s1, s2) == s1.kron(s2)

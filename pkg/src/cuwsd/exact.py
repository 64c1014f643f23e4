"""Exact dense matrices over the Gaussian integers.

All construction and certification arithmetic in this package runs on
integer pairs, so every structural check (unitarity, commutation,
factorization) is an exact equality with zero tolerance.  Matrices are
immutable after construction and safe to share across workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GaussianInt",
    "ExactMatrix",
    "J",
    "matmul",
    "kron",
    "conj_transpose",
    "commutes",
    "anticommutes",
]


@dataclass(frozen=True)
class GaussianInt:
    """Complex number with integer real and imaginary parts."""

    re: int
    im: int

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


J = GaussianInt(0, 1)


class ExactMatrix:
    """Square matrix of GaussianInt entries, stored as two integer arrays."""

    __slots__ = ("re", "im")

    def __init__(self, re: np.ndarray, im: np.ndarray):
        re = np.array(re, dtype=np.int64)
        im = np.array(im, dtype=np.int64)
        if re.ndim != 2 or re.shape[0] != re.shape[1]:
            raise ValueError(f"matrix must be square, got shape {re.shape}")
        if re.shape != im.shape:
            raise ValueError("real and imaginary parts must have equal shape")
        re.setflags(write=False)
        im.setflags(write=False)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64))

    @classmethod
    def zeros(cls, n: int) -> "ExactMatrix":
        z = np.zeros((n, n), dtype=np.int64)
        return cls(z, z)

    @classmethod
    def from_entries(cls, rows) -> "ExactMatrix":
        """Build from a nested sequence of GaussianInt or (re, im) pairs."""
        re = [[e.re if isinstance(e, GaussianInt) else e[0] for e in row] for row in rows]
        im = [[e.im if isinstance(e, GaussianInt) else e[1] for e in row] for row in rows]
        return cls(np.array(re), np.array(im))

    # -- basic structure ---------------------------------------------------

    @property
    def n(self) -> int:
        return self.re.shape[0]

    def entry(self, r: int, c: int) -> GaussianInt:
        return GaussianInt(int(self.re[r, c]), int(self.im[r, c]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return np.array_equal(self.re, other.re) and np.array_equal(self.im, other.im)

    def __hash__(self) -> int:
        return hash((self.re.tobytes(), self.im.tobytes()))

    def __repr__(self) -> str:
        return f"ExactMatrix(n={self.n})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_side(other)
        return ExactMatrix(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_side(other)
        return ExactMatrix(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(-self.re, -self.im)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_side(other)
        return ExactMatrix(
            self.re @ other.re - self.im @ other.im,
            self.re @ other.im + self.im @ other.re,
        )

    def scale(self, c: GaussianInt | int) -> "ExactMatrix":
        if isinstance(c, int):
            return ExactMatrix(c * self.re, c * self.im)
        return ExactMatrix(
            c.re * self.re - c.im * self.im,
            c.re * self.im + c.im * self.re,
        )

    def conj_transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.re.T, -self.im.T)

    @property
    def H(self) -> "ExactMatrix":
        return self.conj_transpose()

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(
            np.kron(self.re, other.re) - np.kron(self.im, other.im),
            np.kron(self.re, other.im) + np.kron(self.im, other.re),
        )

    def _check_same_side(self, other: "ExactMatrix") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    # -- predicates (all exact, no tolerances) -----------------------------

    def is_zero(self) -> bool:
        return not self.re.any() and not self.im.any()

    def is_hermitian(self) -> bool:
        return np.array_equal(self.re, self.re.T) and np.array_equal(self.im, -self.im.T)

    def is_anti_hermitian(self) -> bool:
        return np.array_equal(self.re, -self.re.T) and np.array_equal(self.im, self.im.T)

    def is_unitary(self) -> bool:
        return self.H @ self == ExactMatrix.identity(self.n)

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry in every row and every column."""
        nz = (self.re != 0) | (self.im != 0)
        return bool((nz.sum(axis=0) == 1).all() and (nz.sum(axis=1) == 1).all())

    def has_unit_entries(self) -> bool:
        """Every entry lies in {0, 1, -1, j, -j}."""
        return bool((np.abs(self.re) + np.abs(self.im) <= 1).all())

    # -- conversions -------------------------------------------------------

    def to_float(self) -> np.ndarray:
        """Lossless complex128 image (entries are small integers)."""
        return self.re.astype(np.complex128) + 1j * self.im.astype(np.complex128)

    def to_json_dict(self) -> dict:
        entries = [
            [[int(self.re[r, c]), int(self.im[r, c])] for c in range(self.n)]
            for r in range(self.n)
        ]
        return {"n": self.n, "entries": entries}

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExactMatrix":
        n = data["n"]
        entries = data["entries"]
        if len(entries) != n or any(len(row) != n for row in entries):
            raise ValueError("matrix entries do not match declared size")
        re = [[pair[0] for pair in row] for row in entries]
        im = [[pair[1] for pair in row] for row in entries]
        return cls(np.array(re), np.array(im))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


# Thin functional aliases; the methods above are the primary surface.

def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a.kron(b)


def conj_transpose(a: ExactMatrix) -> ExactMatrix:
    return a.conj_transpose()


def commutes(a: ExactMatrix, b: ExactMatrix) -> bool:
    return (a @ b - b @ a).is_zero()


def anticommutes(a: ExactMatrix, b: ExactMatrix) -> bool:
    return (a @ b + b @ a).is_zero()

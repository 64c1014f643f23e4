"""Unitary matrix representations of anticommuting generator families.

For side 2^a the family holds 2a+1 generators, each squaring to minus the
identity, pairwise anticommuting, unitary and anti-Hermitian, plus the
identity matrix prepended as index 0.  Entries of every matrix lie in
{0, 1, -1, j, -j}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ExactMatrix, GaussianInt, J, anticommutes
from .report import CertReport, CheckRecord

__all__ = ["pauli", "GeneratorSet", "generator_set", "certify_clifford"]

_PAULI_ENTRIES = {
    1: [[(0, 0), (1, 0)], [(-1, 0), (0, 0)]],
    2: [[(0, 0), (0, 1)], [(0, 1), (0, 0)]],
    3: [[(1, 0), (0, 0)], [(0, 0), (-1, 0)]],
}


def pauli(index: int) -> ExactMatrix:
    """The three 2x2 building blocks: [[0,1],[-1,0]], [[0,j],[j,0]], [[1,0],[0,-1]]."""
    if index not in _PAULI_ENTRIES:
        raise ValueError(f"pauli index must be 1, 2 or 3, got {index!r}")
    return ExactMatrix.from_entries(_PAULI_ENTRIES[index])


def _tensor_power(m: ExactMatrix, k: int) -> ExactMatrix:
    out = ExactMatrix.identity(1)
    for _ in range(k):
        out = out.kron(m)
    return out


@dataclass(frozen=True)
class GeneratorSet:
    """Generator family for side 2^a: matrices[0] is the identity,
    matrices[1] is gamma1_sign * j * sigma3^(tensor a), and matrices[2k],
    matrices[2k+1] carry the sigma1/sigma2 ladder for k = 1..a."""

    a: int
    matrices: tuple[ExactMatrix, ...]
    gamma1_sign: int

    @property
    def n(self) -> int:
        return 1 << self.a


def generator_set(a: int, gamma1_sign: int = 1) -> GeneratorSet:
    """Build the 2a+2 matrices of side 2^a (identity included)."""
    if not isinstance(a, int) or a < 1:
        raise ValueError(f"a must be a positive integer, got {a!r}")
    if gamma1_sign not in (1, -1):
        raise ValueError(f"gamma1_sign must be +1 or -1, got {gamma1_sign!r}")

    s1, s2, s3 = pauli(1), pauli(2), pauli(3)
    mats = [ExactMatrix.identity(1 << a)]
    mats.append(_tensor_power(s3, a).scale(GaussianInt(0, gamma1_sign)))
    for k in range(1, a + 1):
        left = ExactMatrix.identity(1 << (a - k))
        tail = _tensor_power(s3, k - 1)
        mats.append(left.kron(s1.kron(tail)))
        mats.append(left.kron(s2.kron(tail)))
    return GeneratorSet(a=a, matrices=tuple(mats), gamma1_sign=gamma1_sign)


def certify_clifford(gs: GeneratorSet) -> CertReport:
    """Exhaustively check the generator-family invariants.

    Failures are reported, not raised.
    """
    checks: list[CheckRecord] = []
    n = gs.n
    identity = ExactMatrix.identity(n)
    minus_identity = -identity

    m0 = gs.matrices[0]
    checks.append(CheckRecord("identity[R0]", ("R0",), m0 == identity))

    for k, m in enumerate(gs.matrices):
        lab = f"R{k}"
        checks.append(CheckRecord(f"side[{lab}]", (lab,), m.n == n))
        checks.append(CheckRecord(f"alphabet[{lab}]", (lab,), m.has_unit_entries()))
        checks.append(CheckRecord(f"monomial[{lab}]", (lab,), m.is_monomial()))
        if k == 0:
            continue
        checks.append(
            CheckRecord(f"square_is_minus_identity[{lab}]", (lab,), m @ m == minus_identity)
        )
        checks.append(CheckRecord(f"unitary[{lab}]", (lab,), m.is_unitary()))
        checks.append(CheckRecord(f"anti_hermitian[{lab}]", (lab,), m.is_anti_hermitian()))

    for k in range(1, len(gs.matrices)):
        for m in range(k + 1, len(gs.matrices)):
            checks.append(
                CheckRecord(
                    f"anticommute[R{k},R{m}]",
                    (f"R{k}", f"R{m}"),
                    anticommutes(gs.matrices[k], gs.matrices[m]),
                )
            )
    return CertReport(checks)

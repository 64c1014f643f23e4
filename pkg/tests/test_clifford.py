import pytest

from cuwsd import (
    ExactMatrix,
    GeneratorSet,
    J,
    certify_clifford,
    construction_order,
    generator_set,
    pauli,
)


def test_pauli_exact_values():
    assert pauli(1).to_json_dict()["entries"] == [[[0, 0], [1, 0]], [[-1, 0], [0, 0]]]
    assert pauli(2).to_json_dict()["entries"] == [[[0, 0], [0, 1]], [[0, 1], [0, 0]]]
    assert pauli(3).to_json_dict()["entries"] == [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]


@pytest.mark.parametrize("bad", [0, 4, -1, "1"])
def test_pauli_rejects_bad_index(bad):
    with pytest.raises(ValueError):
        pauli(bad)


def test_generator_set_a1():
    gs = generator_set(1, 1)
    i2, s1, s2, s3 = ExactMatrix.identity(2), pauli(1), pauli(2), pauli(3)
    assert gs.matrices == (i2, s3.scale(J), s1, s2)
    flipped = generator_set(1, -1)
    assert flipped.matrices[1] == -s3.scale(J)


def test_generator_set_a2_tail():
    gs = generator_set(2)
    assert len(gs.matrices) == 6
    assert gs.matrices[5] == pauli(2).kron(pauli(3))


def test_generator_set_a3_consumption_order():
    # The construction consumes the family with the diagonal generator
    # last; position 3 and 7 of that order are pinned reference values.
    order = construction_order(generator_set(3))
    i2, s1, s3 = ExactMatrix.identity(2), pauli(1), pauli(3)
    assert order[3] == i2.kron(s1).kron(s3)
    assert order[7] == s3.kron(s3).kron(s3).scale(J)
    assert order[0] == ExactMatrix.identity(8)


def test_generator_set_rejects_bad_args():
    with pytest.raises(ValueError):
        generator_set(0)
    with pytest.raises(ValueError):
        generator_set(2, gamma1_sign=2)


@pytest.mark.parametrize("a", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("sign", [1, -1])
def test_certify_all_sizes(a, sign):
    gs = generator_set(a, sign)
    assert len(gs.matrices) == 2 * a + 2
    report = certify_clifford(gs)
    assert report.verdict, report.failures()[:5]
    for m in gs.matrices:
        assert m.n == 1 << a
        assert m.has_unit_entries()
        assert m.is_monomial()


def test_certify_reports_corruption():
    gs = generator_set(2)
    mats = list(gs.matrices)
    mats[2] = ExactMatrix.identity(4)  # identity commutes with everything
    report = certify_clifford(GeneratorSet(a=2, matrices=tuple(mats), gamma1_sign=1))
    assert not report.verdict
    failed = {c.name for c in report.failures()}
    assert "square_is_minus_identity[R2]" in failed
    assert "anti_hermitian[R2]" in failed
    assert any(name.startswith("anticommute[R2,") for name in failed)


def test_certified_checks_have_stable_names():
    report = certify_clifford(generator_set(1))
    names = [c.name for c in report.checks]
    assert names == [c.name for c in certify_clifford(generator_set(1)).checks]
    assert "anticommute[R1,R2]" in names

import json
from dataclasses import replace

import numpy as np
import pytest

from cuwsd import (
    DesignParams,
    ExactMatrix,
    GaussianInt,
    LinearForm,
    RealVar,
    build_design,
    instantiate,
    instantiate_exact,
    parse_json,
    render,
    symbolic_matrix,
    zero_entry_count,
)

SWEEP = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 2)]


def _design(a, g, **kw):
    return build_design(DesignParams(a=a, g=g, **kw))


def test_linear_form_drops_zeros_and_sorts():
    f = LinearForm(
        {
            RealVar(8, "Q"): GaussianInt(0, -1),
            RealVar(1, "I"): GaussianInt(1, 0),
            RealVar(2, "I"): GaussianInt(0, 0),
        }
    )
    assert f.variables() == [RealVar(1, "I"), RealVar(8, "Q")]
    assert f.text() == "x1I - j x8Q"
    assert f.latex() == "x_{1I} - jx_{8Q}"
    assert LinearForm({}).text() == "0"
    assert not f.is_zero() and LinearForm({}).is_zero()


def test_symbolic_grid_2x2():
    sc = symbolic_matrix(_design(1, 1))
    assert sc.n == 2
    # every entry holds exactly two of the four real variables
    for row in sc.grid:
        for form in row:
            assert len(form.terms()) == 2
    assert sc.grid[0][0].text() == "x1I - j x2Q"
    assert sc.grid[0][1].text() == "j x1Q + x2I"
    assert sc.grid[1][0].text() == "-j x1Q - x2I"
    assert sc.grid[1][1].text() == "x1I - j x2Q"


def test_grid_coefficients_match_weight_matrices():
    d = _design(2, 2)
    sc = symbolic_matrix(d)
    for (k, part), w in d.weights.items():
        var = RealVar(k, part)
        for r in range(d.n):
            for c in range(d.n):
                assert sc.grid[r][c].coefficient(var) == w.entry(r, c)


@pytest.mark.parametrize("a,g", SWEEP)
def test_row_coverage(a, g):
    d = _design(a, g)
    sc = symbolic_matrix(d)
    names = {RealVar(k, p) for k in range(1, d.num_symbols + 1) for p in ("I", "Q")}
    for row in sc.grid:
        seen = [v for form in row for v in form.variables()]
        assert len(seen) == len(set(seen))  # at most once per row
        if (a, g) == (3, 2):
            assert set(seen) == names  # exactly once per row in the 8x8 code


def test_instantiate_zero_and_single_variable():
    d = _design(1, 1)
    sc = symbolic_matrix(d)
    zero_vals = {RealVar(k, p): 0.0 for k in (1, 2) for p in ("I", "Q")}
    assert np.array_equal(instantiate(sc, zero_vals), np.zeros((2, 2)))
    vals = dict(zero_vals)
    vals[RealVar(1, "I")] = 1.0
    assert np.array_equal(instantiate(sc, vals), d.weights[(1, "I")].to_float())


def test_instantiate_rejects_missing_variable():
    sc = symbolic_matrix(_design(1, 1))
    with pytest.raises(ValueError, match="x2Q"):
        instantiate(sc, {RealVar(1, "I"): 1.0, RealVar(1, "Q"): 0.0, RealVar(2, "I"): 0.0})


@pytest.mark.parametrize("a,g", SWEEP)
def test_two_path_instantiation(rng, a, g):
    d = _design(a, g)
    sc = symbolic_matrix(d)
    for _ in range(3):
        ints = {
            RealVar(k, p): int(v)
            for (k, p), v in zip(
                ((k, p) for k in range(1, d.num_symbols + 1) for p in ("I", "Q")),
                rng.integers(-5, 6, size=2 * d.num_symbols),
            )
        }
        direct = ExactMatrix.zeros(d.n)
        for (k, p), w in d.weights.items():
            direct = direct + w.scale(ints[RealVar(k, p)])
        assert instantiate_exact(sc, ints) == direct
        floats = instantiate(sc, {v: float(x) for v, x in ints.items()})
        assert np.array_equal(floats, direct.to_float())


# Zero cells appear exactly where the union of the weight matrices'
# monomial supports misses cells; that union is small once the symbol
# count falls well below n^2.  Expected values below were derived by the
# independent support-union count, which the test recomputes.
ZERO_COUNTS = {
    (1, 1): 0,
    (2, 1): 0,
    (2, 2): 0,
    (3, 1): 16,
    (3, 2): 0,
    (4, 1): 128,
    (4, 2): 64,
    (4, 4): 64,
}


@pytest.mark.parametrize("a,g", sorted(ZERO_COUNTS))
def test_zero_entry_count_matches_support_union(a, g):
    for layout in ("interleaved", "blocked"):
        d = _design(a, g, layout=layout)
        sc = symbolic_matrix(d)
        covered = set()
        for w in d.weights.values():
            nz = (w.re != 0) | (w.im != 0)
            covered.update(zip(*np.nonzero(nz)))
        expected = d.n * d.n - len(covered)
        assert zero_entry_count(sc) == expected == ZERO_COUNTS[(a, g)]


def test_zero_entry_count_all_zero_design():
    d = _design(1, 1)
    zeroed = replace(d, weights={key: ExactMatrix.zeros(d.n) for key in d.weights})
    sc = symbolic_matrix(zeroed)
    assert zero_entry_count(sc) == d.n * d.n


def test_render_text_layout():
    text = render(symbolic_matrix(_design(1, 1)), "text")
    lines = text.splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("x1I - j x2Q")


def test_render_latex_is_array_env():
    tex = render(symbolic_matrix(_design(1, 1)), "latex")
    assert tex.startswith("\\begin{array}{cc}")
    assert tex.rstrip().endswith("\\end{array}")
    assert "x_{1I} - jx_{2Q}" in tex


def test_render_json_roundtrip():
    sc = symbolic_matrix(_design(2, 2))
    payload = render(sc, "json")
    parsed = parse_json(payload)
    assert parsed == sc
    assert render(parsed, "json") == payload


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render(symbolic_matrix(_design(1, 1)), "html")


def test_render_formats_case_insensitive():
    sc = symbolic_matrix(_design(1, 1))
    assert render(sc, "TEXT") == render(sc, "text")


def test_parse_json_validates_shape():
    sc = symbolic_matrix(_design(1, 1))
    data = json.loads(render(sc, "json"))
    data["entries"][0].pop()
    with pytest.raises(ValueError):
        parse_json(json.dumps(data))

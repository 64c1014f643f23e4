"""Symbolic codeword grids: each entry is a linear form in the real
symbol components x_{k,I}, x_{k,Q} with Gaussian-integer coefficients."""

from __future__ import annotations

import json
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .design import Design
from .exact import ExactMatrix, GaussianInt

__all__ = [
    "RealVar",
    "LinearForm",
    "SymbolicCodeword",
    "symbolic_matrix",
    "instantiate",
    "instantiate_exact",
    "render",
    "parse_json",
    "zero_entry_count",
]


class RealVar(NamedTuple):
    """One real symbol component: symbol index k and part "I" or "Q"."""

    k: int
    part: str

    def name(self) -> str:
        return f"x{self.k}{self.part}"


class LinearForm:
    """Immutable linear combination of RealVars; zero coefficients dropped,
    terms kept sorted by (k, part)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[RealVar, GaussianInt] | Iterable):
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned = sorted((RealVar(*v), c) for v, c in items if c)
        object.__setattr__(self, "_terms", tuple(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("LinearForm is immutable")

    def terms(self) -> tuple[tuple[RealVar, GaussianInt], ...]:
        return self._terms

    def coefficient(self, var: RealVar) -> GaussianInt:
        for v, c in self._terms:
            if v == var:
                return c
        return GaussianInt(0, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> list[RealVar]:
        return [v for v, _ in self._terms]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def eval_complex(self, values: Mapping[RealVar, float]) -> complex:
        return sum((c.to_complex() * values[v] for v, c in self._terms), 0j)

    def eval_exact(self, values: Mapping[RealVar, int]) -> GaussianInt:
        out = GaussianInt(0, 0)
        for v, c in self._terms:
            out = out + GaussianInt(c.re * values[v], c.im * values[v])
        return out

    # -- rendering ---------------------------------------------------------

    @staticmethod
    def _term_body(var: RealVar, coef: GaussianInt, latex: bool) -> tuple[bool, str]:
        """(is_negative, body) with the sign folded out of unit coefficients."""
        name = f"x_{{{var.k}{var.part}}}" if latex else var.name()
        if coef.im == 0 and abs(coef.re) == 1:
            return coef.re < 0, name
        if coef.re == 0 and abs(coef.im) == 1:
            return coef.im < 0, (f"j{name}" if latex else f"j {name}")
        return False, f"({coef.re}{coef.im:+}j) {name}"  # not produced by this toolkit

    def _render(self, latex: bool) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, (var, coef) in enumerate(self._terms):
            neg, body = self._term_body(var, coef, latex)
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def text(self) -> str:
        return self._render(latex=False)

    def latex(self) -> str:
        return self._render(latex=True)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"LinearForm({self.text()!r})"


class SymbolicCodeword:
    """n x n grid of LinearForms, optionally tied back to its Design."""

    __slots__ = ("n", "grid", "design")

    def __init__(self, grid: list[list[LinearForm]], design: Design | None = None):
        n = len(grid)
        if any(len(row) != n for row in grid):
            raise ValueError("symbolic grid must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "grid", tuple(tuple(row) for row in grid))
        object.__setattr__(self, "design", design)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolicCodeword is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicCodeword):
            return NotImplemented
        return self.grid == other.grid

    def variables(self) -> list[RealVar]:
        """All variables the grid may reference, sorted.

        Uses the design's full symbol list when available so that a
        variable with an all-zero weight matrix is still required.
        """
        if self.design is not None:
            ks = range(1, self.design.num_symbols + 1)
            return [RealVar(k, p) for k in ks for p in ("I", "Q")]
        seen = {v for row in self.grid for form in row for v in form.variables()}
        return sorted(seen)


def symbolic_matrix(d: Design) -> SymbolicCodeword:
    """Assemble the grid by symbolically summing x_{k,P} * (weight matrix)."""
    n = d.n
    cells: list[list[dict[RealVar, GaussianInt]]] = [[{} for _ in range(n)] for _ in range(n)]
    for (k, part), w in sorted(d.weights.items()):
        var = RealVar(k, part)
        rows, cols = np.nonzero((w.re != 0) | (w.im != 0))
        for r, c in zip(rows.tolist(), cols.tolist()):
            cells[r][c][var] = cells[r][c].get(var, GaussianInt(0, 0)) + w.entry(r, c)
    grid = [[LinearForm(cell) for cell in row] for row in cells]
    return SymbolicCodeword(grid, design=d)


def instantiate(sc: SymbolicCodeword, values: Mapping) -> np.ndarray:
    """Numeric codeword for a full assignment of real values.

    ``values`` maps RealVar (or (k, part) tuples) to reals; every variable
    of the code must be covered.
    """
    vals = {RealVar(*k): float(v) for k, v in values.items()}
    missing = [v for v in sc.variables() if v not in vals]
    if missing:
        raise ValueError(f"missing values for {[v.name() for v in missing]}")
    out = np.zeros((sc.n, sc.n), dtype=np.complex128)
    for r in range(sc.n):
        for c in range(sc.n):
            out[r, c] = sc.grid[r][c].eval_complex(vals)
    return out


def instantiate_exact(sc: SymbolicCodeword, values: Mapping) -> ExactMatrix:
    """Exact codeword for an integer assignment."""
    vals = {RealVar(*k): int(v) for k, v in values.items()}
    missing = [v for v in sc.variables() if v not in vals]
    if missing:
        raise ValueError(f"missing values for {[v.name() for v in missing]}")
    entries = [[sc.grid[r][c].eval_exact(vals) for c in range(sc.n)] for r in range(sc.n)]
    return ExactMatrix.from_entries(entries)


def zero_entry_count(sc: SymbolicCodeword) -> int:
    """Number of identically-zero grid entries (each raises the
    peak-to-average power ratio of the transmitted frame)."""
    return sum(form.is_zero() for row in sc.grid for form in row)


def _to_json_dict(sc: SymbolicCodeword) -> dict:
    return {
        "n": sc.n,
        "entries": [
            [
                [
                    {"k": v.k, "part": v.part, "coef": [c.re, c.im]}
                    for v, c in form.terms()
                ]
                for form in row
            ]
            for row in sc.grid
        ],
    }


def parse_json(text: str) -> SymbolicCodeword:
    data = json.loads(text)
    n = data["n"]
    entries = data["entries"]
    if len(entries) != n or any(len(row) != n for row in entries):
        raise ValueError("symbolic grid entries do not match declared size")
    grid = [
        [
            LinearForm(
                {
                    RealVar(t["k"], t["part"]): GaussianInt(t["coef"][0], t["coef"][1])
                    for t in cell
                }
            )
            for cell in row
        ]
        for row in entries
    ]
    return SymbolicCodeword(grid)


def render(sc: SymbolicCodeword, format: str = "text") -> str:
    """Deterministic rendering; format is "text", "latex" or "json"."""
    fmt = format.lower()
    if fmt == "json":
        return json.dumps(_to_json_dict(sc), indent=2)
    if fmt == "text":
        cells = [[form.text() for form in row] for row in sc.grid]
        widths = [max(len(cells[r][c]) for r in range(sc.n)) for c in range(sc.n)]
        lines = [
            "  ".join(cells[r][c].ljust(widths[c]) for c in range(sc.n)).rstrip()
            for r in range(sc.n)
        ]
        return "\n".join(lines) + "\n"
    if fmt == "latex":
        body = " \\\\\n".join(
            " & ".join(form.latex() for form in row) for row in sc.grid
        )
        cols = "c" * sc.n
        return f"\\begin{{array}}{{{cols}}}\n{body}\n\\end{{array}}\n"
    raise ValueError(f"unknown format {format!r} (expected text, latex or json)")

"""Construction and certification of unitary-weight group-decodable designs.

A design for n = 2^a antennas carries K = 2(a-g+1) symbol groups of g
complex symbols each, i.e. 2gK real weight matrices.  The construction:

1. Take the generator family for side 2^a and order it for consumption:
   identity first, then the sigma1/sigma2 ladder pairs ascending, and the
   diagonal +-j*sigma3^(x a) generator last.  Positions in this order are
   what the group/pair indices below refer to.
2. From the last 2g generators form g Hermitian commuting multipliers,
   m-th = sign * j * (pair m), pairs consecutive ascending; then extend to
   2g-1 multipliers by a pairing tree (products of consecutive pairs of
   the previous level), which terminates only when g is a power of two.
3. Group i (1 <= i <= K) is built on base_i, the i-th matrix of the
   consumption order; each of its 2g slots holds sign * multiplier * base_i.

Layouts fix which multiplier lands in which (symbol, I/Q) slot:

* ``interleaved`` (default): slots ordered (1,I),(1,Q),(2,I),(2,Q),...;
  slot t (0-based) takes multiplier t (0 = none).
* ``blocked``: slots ordered (1,I),(2,I),...,(g,I),(1,Q),...,(g,Q).

Signs are consumed from ``sign_vector`` in a fixed canonical order: first
the 2g-1 multiplier signs (pair products ascending, then tree levels),
then for each group the 2g-1 slot signs in layout order, skipping the
sign-free leader slot (1,I).  Total length (2g-1)(K+1); default all +1.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .clifford import GeneratorSet, generator_set
from .exact import ExactMatrix, GaussianInt, anticommutes, commutes
from .report import CertReport, CheckRecord

__all__ = [
    "LAYOUTS",
    "DesignParams",
    "AlphaSet",
    "Design",
    "construction_order",
    "build_alphas",
    "build_design",
    "normalize",
    "left_multiply",
    "certify_design",
    "rate",
    "corollary_rate",
    "qod_reference_rate",
    "hr_table",
    "weight_label",
]

LAYOUTS = ("interleaved", "blocked")


def weight_label(k: int, part: str) -> str:
    return f"A_{k}{part}"


_LABEL_RE = _re.compile(r"^A_(\d+)([IQ])$")


def _parse_label(label: str) -> tuple[int, str]:
    m = _LABEL_RE.match(label)
    if not m:
        raise ValueError(f"bad weight-matrix label {label!r}")
    return int(m.group(1)), m.group(2)


@dataclass(frozen=True)
class DesignParams:
    """Parameters identifying one design; validated on construction."""

    a: int
    g: int
    sign_vector: tuple[int, ...] = ()
    layout: str = "interleaved"
    gamma1_sign: int = 1

    def __post_init__(self):
        if not isinstance(self.a, int) or self.a < 1:
            raise ValueError(f"a must be a positive integer, got {self.a!r}")
        if not isinstance(self.g, int) or not (1 <= self.g <= self.a):
            raise ValueError(f"g must satisfy 1 <= g <= a, got g={self.g!r}, a={self.a}")
        if self.g & (self.g - 1):
            raise ValueError(
                f"g must be a power of 2 (the multiplier pairing tree "
                f"terminates only then), got {self.g}"
            )
        if self.layout not in LAYOUTS:
            raise ValueError(f"layout must be one of {LAYOUTS}, got {self.layout!r}")
        if self.gamma1_sign not in (1, -1):
            raise ValueError(f"gamma1_sign must be +1 or -1, got {self.gamma1_sign!r}")
        signs = tuple(self.sign_vector) if self.sign_vector else self.all_plus_signs(self.a, self.g)
        if len(signs) != self.sign_count(self.a, self.g):
            raise ValueError(
                f"sign_vector must have length {self.sign_count(self.a, self.g)} "
                f"for a={self.a}, g={self.g}, got {len(signs)}"
            )
        if any(s not in (1, -1) for s in signs):
            raise ValueError("sign_vector entries must be +1 or -1")
        object.__setattr__(self, "sign_vector", signs)

    @property
    def K(self) -> int:
        return 2 * (self.a - self.g + 1)

    @property
    def n(self) -> int:
        return 1 << self.a

    @staticmethod
    def sign_count(a: int, g: int) -> int:
        k = 2 * (a - g + 1)
        return (2 * g - 1) * (k + 1)

    @staticmethod
    def all_plus_signs(a: int, g: int) -> tuple[int, ...]:
        return (1,) * DesignParams.sign_count(a, g)


@dataclass(frozen=True)
class AlphaSet:
    """The 2g-1 Hermitian, mutually commuting multiplier matrices."""

    alphas: tuple[ExactMatrix, ...]


def construction_order(gs: GeneratorSet) -> tuple[ExactMatrix, ...]:
    """Order in which the construction consumes the generator family:
    identity, ladder pairs ascending, diagonal generator last."""
    m = gs.matrices
    return (m[0],) + tuple(m[2:]) + (m[1],)


def _layout_slots(g: int, layout: str) -> list[tuple[int, str]]:
    """Slot sequence for one group; position t takes multiplier t (0 = none)."""
    if layout == "interleaved":
        return [(j, part) for j in range(1, g + 1) for part in ("I", "Q")]
    if layout == "blocked":
        return [(j, "I") for j in range(1, g + 1)] + [(j, "Q") for j in range(1, g + 1)]
    raise ValueError(f"unknown layout {layout!r}")


def build_alphas(gs: GeneratorSet, params: DesignParams) -> AlphaSet:
    """Form the 2g-1 multipliers from the last 2g generators in
    consumption order; consumes the first 2g-1 entries of the sign vector."""
    if gs.a != params.a:
        raise ValueError(f"generator set built for a={gs.a}, params say a={params.a}")
    g = params.g
    order = construction_order(gs)
    tail = order[-2 * g:]
    signs = iter(params.sign_vector[: 2 * g - 1])

    alphas = [
        (tail[2 * m] @ tail[2 * m + 1]).scale(GaussianInt(0, next(signs)))
        for m in range(g)
    ]
    level = list(alphas)
    while len(level) > 1:
        level = [
            (level[t] @ level[t + 1]).scale(next(signs))
            for t in range(0, len(level), 2)
        ]
        alphas.extend(level)
    return AlphaSet(alphas=tuple(alphas))


@dataclass(frozen=True)
class Design:
    """A built (or loaded) set of weight matrices grouped by symbol group.

    ``weights`` maps (k, part) for symbol index k in 1..gK and part in
    {"I", "Q"} to the weight matrix scaling that real symbol component.
    """

    params: DesignParams
    weights: dict[tuple[int, str], ExactMatrix] = field(repr=False)
    normalized: bool = True

    @property
    def a(self) -> int:
        return self.params.a

    @property
    def g(self) -> int:
        return self.params.g

    @property
    def K(self) -> int:
        return self.params.K

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def num_symbols(self) -> int:
        return self.g * self.K

    def group_symbols(self, i: int) -> range:
        """Symbol indices k belonging to group i (1-based)."""
        if not 1 <= i <= self.K:
            raise ValueError(f"group index must be in 1..{self.K}, got {i}")
        return range(self.g * (i - 1) + 1, self.g * i + 1)

    def group_members(self, i: int) -> list[tuple[int, str]]:
        return [(k, part) for k in self.group_symbols(i) for part in ("I", "Q")]

    def leader(self, i: int) -> ExactMatrix:
        """The (1,I)-slot matrix of group i."""
        return self.weights[(self.g * (i - 1) + 1, "I")]

    # -- serialization (the shared design file format) ----------------------

    def to_json_dict(self) -> dict:
        groups = []
        for i in range(1, self.K + 1):
            groups.append(
                {
                    "i": i,
                    "matrices": [
                        {
                            "label": weight_label(k, part),
                            "matrix": self.weights[(k, part)].to_json_dict(),
                        }
                        for (k, part) in self.group_members(i)
                    ],
                }
            )
        return {
            "a": self.a,
            "g": self.g,
            "K": self.K,
            "layout": self.params.layout,
            "gamma1_sign": self.params.gamma1_sign,
            "sign_vector": list(self.params.sign_vector),
            "groups": groups,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Design":
        try:
            params = DesignParams(
                a=data["a"],
                g=data["g"],
                sign_vector=tuple(data["sign_vector"]),
                layout=data["layout"],
                gamma1_sign=data["gamma1_sign"],
            )
            if data["K"] != params.K:
                raise ValueError(f"K={data['K']} inconsistent with a={params.a}, g={params.g}")
            weights: dict[tuple[int, str], ExactMatrix] = {}
            for grp in data["groups"]:
                for item in grp["matrices"]:
                    k, part = _parse_label(item["label"])
                    weights[(k, part)] = ExactMatrix.from_json_dict(item["matrix"])
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed design file: {exc}") from exc
        expected = {(k, p) for k in range(1, params.g * params.K + 1) for p in ("I", "Q")}
        if set(weights) != expected:
            raise ValueError("design file does not cover every (symbol, part) slot")
        n = params.n
        if any(w.n != n for w in weights.values()):
            raise ValueError(f"weight matrices must all have side {n}")
        normalized = weights[(1, "I")] == ExactMatrix.identity(n)
        return cls(params=params, weights=weights, normalized=normalized)


def build_design(params: DesignParams) -> Design:
    """Assemble the K groups of weight matrices for the given parameters."""
    gs = generator_set(params.a, params.gamma1_sign)
    alpha_set = build_alphas(gs, params)
    multipliers: list[ExactMatrix | None] = [None, *alpha_set.alphas]
    bases = construction_order(gs)[: params.K]
    slots = _layout_slots(params.g, params.layout)

    weights: dict[tuple[int, str], ExactMatrix] = {}
    cursor = 2 * params.g - 1
    for i in range(1, params.K + 1):
        base = bases[i - 1]
        for t, (j, part) in enumerate(slots):
            k = params.g * (i - 1) + j
            if t == 0:
                weights[(k, part)] = base
            else:
                sign = params.sign_vector[cursor]
                cursor += 1
                weights[(k, part)] = (multipliers[t] @ base).scale(sign)
    normalized = weights[(1, "I")] == ExactMatrix.identity(params.n)
    return Design(params=params, weights=weights, normalized=normalized)


def left_multiply(d: Design, u: ExactMatrix) -> Design:
    """Left-multiply every weight matrix by ``u`` (e.g. to de-normalize)."""
    if u.n != d.n:
        raise ValueError(f"dimension mismatch: {u.n} vs {d.n}")
    weights = {key: u @ w for key, w in d.weights.items()}
    normalized = weights[(1, "I")] == ExactMatrix.identity(d.n)
    return replace(d, weights=weights, normalized=normalized)


def normalize(d: Design) -> Design:
    """Left-multiply all weight matrices by the conjugate transpose of the
    (1,I) matrix, so that slot becomes the identity."""
    first = d.weights[(1, "I")]
    if first == ExactMatrix.identity(d.n):
        return replace(d, normalized=True)
    return left_multiply(d, first.H)


# -- rates -------------------------------------------------------------------


def rate(d: Design) -> Fraction:
    """Complex symbols per channel use of the actual construction."""
    return Fraction(d.num_symbols, d.n)


def corollary_rate(a: int, g: int) -> Fraction:
    """Closed-form rate (a+1-g) / 2^(a-g).

    Matches ``rate`` exactly for g in {1, 2}; for g = 4 the construction
    achieves half this value (callers should surface the discrepancy,
    never reconcile it silently).
    """
    return Fraction(a + 1 - g, 1 << (a - g))


def qod_reference_rate(a: int) -> Fraction:
    """Best reported rate of the prior quasi-orthogonal-design family."""
    return Fraction(a, 1 << (a - 1))


# -- certification -------------------------------------------------------------


def _first_column_slots(g: int) -> list[tuple[int, str]]:
    """Group-1 slots other than the leader, in table order
    (1,Q),(2,I),(2,Q),...,(g,I),(g,Q)."""
    slots = [(1, "Q")]
    for j in range(2, g + 1):
        slots.extend([(j, "I"), (j, "Q")])
    return slots


def certify_design(d: Design, lemma1_trials: int = 3) -> CertReport:
    """Run every structural check on the design exactly.

    Sections: per-matrix unitarity/alphabet audits; the first-row and
    first-column conditions with the cross factorizations; the exhaustive
    cross-group sweep A^H B + B^H A == 0; and integer instantiations
    checking that S^H S splits into the per-group sum.  Failures are
    reported, not raised.
    """
    checks: list[CheckRecord] = []
    g, K, n = d.g, d.K, d.n

    items = sorted(d.weights.items())
    for (k, part), w in items:
        lab = weight_label(k, part)
        ok = w.n == n and w.is_unitary()
        checks.append(CheckRecord(f"unitary[{lab}]", (lab,), ok))
        checks.append(CheckRecord(f"alphabet[{lab}]", (lab,), w.has_unit_entries()))

    # First row: leaders of groups 2..K are anti-Hermitian and pairwise
    # anticommute (a Hurwitz-Radon family).
    leaders = [(weight_label(g * (i - 1) + 1, "I"), d.leader(i)) for i in range(1, K + 1)]
    for lab, m in leaders[1:]:
        checks.append(CheckRecord(f"first_row_anti_hermitian[{lab}]", (lab,), m.is_anti_hermitian()))
    for x in range(1, K):
        for y in range(x + 1, K):
            la, ma = leaders[x]
            lb, mb = leaders[y]
            checks.append(
                CheckRecord(f"first_row_anticommute[{la},{lb}]", (la, lb), anticommutes(ma, mb))
            )

    # First column: group-1 non-leader matrices are Hermitian, mutually
    # commute, and commute with every first-row matrix.
    column = [(weight_label(k, p), d.weights[(k, p)]) for (k, p) in _first_column_slots(g)]
    for lab, m in column:
        checks.append(CheckRecord(f"first_col_hermitian[{lab}]", (lab,), m.is_hermitian()))
    for x in range(len(column)):
        for y in range(x + 1, len(column)):
            la, ma = column[x]
            lb, mb = column[y]
            checks.append(
                CheckRecord(f"first_col_commute[{la},{lb}]", (la, lb), commutes(ma, mb))
            )
    for lab_c, mc in column:
        for lab_r, mr in leaders:
            checks.append(
                CheckRecord(
                    f"first_col_row_commute[{lab_c},{lab_r}]", (lab_c, lab_r), commutes(mc, mr)
                )
            )

    # Factorization: every non-leader slot equals +- (its group-1 slot
    # matrix) * (its group leader).
    for i in range(1, K + 1):
        lead = d.leader(i)
        for (j, part) in _first_column_slots(g):
            k = g * (i - 1) + j
            lab = weight_label(k, part)
            w = d.weights[(k, part)]
            prod = d.weights[(j, part)] @ lead
            ok = w == prod or w == -prod
            checks.append(CheckRecord(f"factorization[{lab}]", (lab,), ok))

    # Exhaustive cross-group sweep: A^H B + B^H A == 0 for members of
    # distinct groups.  This is the decodability condition itself.
    members = [
        [(weight_label(k, p), d.weights[(k, p)]) for (k, p) in d.group_members(i)]
        for i in range(1, K + 1)
    ]
    for i in range(K):
        for j in range(i + 1, K):
            for la, ma in members[i]:
                mah = ma.H
                for lb, mb in members[j]:
                    ok = (mah @ mb + mb.H @ ma).is_zero()
                    checks.append(CheckRecord(f"cross_group[{la},{lb}]", (la, lb), ok))

    # Direct decomposition check on exact integer instantiations:
    # S^H S must equal the sum of per-group S_i^H S_i.
    rng = np.random.default_rng(0x5EED)
    for t in range(lemma1_trials):
        values = rng.integers(-3, 4, size=2 * d.num_symbols)
        group_sums = []
        for i in range(1, K + 1):
            si = ExactMatrix.zeros(n)
            for (k, p) in d.group_members(i):
                v = int(values[2 * (k - 1) + (0 if p == "I" else 1)])
                if v:
                    si = si + d.weights[(k, p)].scale(v)
            group_sums.append(si)
        s = group_sums[0]
        for si in group_sums[1:]:
            s = s + si
        lhs = s.H @ s
        rhs = ExactMatrix.zeros(n)
        for si in group_sums:
            rhs = rhs + si.H @ si
        checks.append(
            CheckRecord(f"group_decomposition[trial_{t}]", (f"trial_{t}",), lhs == rhs)
        )

    return CertReport(checks)


# -- table rendering -----------------------------------------------------------


def hr_table(d: Design) -> list[list[str]]:
    """(2g) x K grid of weight-matrix labels: rows follow the group-1 slot
    order (1,I),(1,Q),(2,I),...,(g,Q); columns are the groups, so the first
    row holds the group leaders and the first column group 1."""
    if not d.normalized:
        raise ValueError("hr_table requires a normalized design")
    rows = [(1, "I")] + _first_column_slots(d.g)
    return [
        [weight_label(d.g * (i - 1) + j, part) for i in range(1, d.K + 1)]
        for (j, part) in rows
    ]

"""Monte Carlo link simulation and the two maximum-likelihood decoders.

Model: Y = S H + N with one codeword per frame.  H is n x n_rx i.i.d.
complex Gaussian with unit variance, N i.i.d. with variance sigma^2 per
complex entry, both spatially and temporally white.

Conventions (fixed so that results are reproducible and auditable):

* Power: with unitary weight matrices and zero-mean constellations whose
  I and Q components are uncorrelated, E[tr(S S^H)] = n * sum_k E_k where
  E_k is the mean energy of symbol k.  Constellation points are scaled by
  a common factor so this equals n^2, i.e. per-symbol energy n / (g*K)
  for a uniform constellation.
* SNR: snr_db = 10*log10(n / sigma^2), per-channel-use transmit power
  over noise variance; sigma^2 = n / 10^(snr_db/10).
* Ties in the metric argmin break to the lexicographically first symbol
  index vector (symbol 1 most significant, constellation points in their
  listed order).
* Randomness: trial t of SNR point p uses the stream seeded by
  SeedSequence(entropy=seed, spawn_key=(p, t)), so trials are
  order-independent.  Per trial the draw order is: symbol indices, then
  H, then N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .design import Design, certify_design

__all__ = [
    "DEFAULT_JOINT_CAP",
    "Constellation",
    "qpsk",
    "qam16",
    "SimConfig",
    "SnrPoint",
    "SimReport",
    "assemble_codeword",
    "ml_metric",
    "group_metric",
    "decode_joint",
    "decode_groupwise",
    "power_scale",
    "simulate",
]

DEFAULT_JOINT_CAP = 1 << 20

_CHUNK = 1 << 16


@dataclass(frozen=True)
class Constellation:
    """Finite set of complex points, symmetric about the origin."""

    name: str
    points: tuple[complex, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("constellation needs at least 2 points")
        pts = np.asarray(self.points)
        for p in pts:
            if np.min(np.abs(pts + p)) > 1e-12:
                raise ValueError(f"constellation is not symmetric about 0: -({p}) missing")

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def energy(self) -> float:
        return float(np.mean(np.abs(np.asarray(self.points)) ** 2))

    @property
    def bits_per_symbol(self) -> int:
        return max(1, math.ceil(math.log2(self.size)))


def qpsk() -> Constellation:
    """Unit-energy QPSK; index bits (b1 b0) flip the real/imaginary signs."""
    s = 1 / math.sqrt(2)
    return Constellation(
        "qpsk",
        (
            complex(s, s),
            complex(s, -s),
            complex(-s, s),
            complex(-s, -s),
        ),
    )


def qam16() -> Constellation:
    """Unit-energy 16-QAM on the (+-1, +-3) grid."""
    s = 1 / math.sqrt(10)
    levels = (1, 3, -1, -3)
    return Constellation(
        "qam16",
        tuple(complex(a * s, b * s) for a in levels for b in levels),
    )


@dataclass(frozen=True)
class SimConfig:
    snr_db: tuple[float, ...]
    trials: int
    seed: int
    n_rx: int = 1
    # None selects QPSK for every symbol; a sequence gives one
    # constellation per symbol.
    constellation: Constellation | tuple[Constellation, ...] | None = None

    def __post_init__(self):
        if len(self.snr_db) == 0:
            raise ValueError("snr_db grid must be nonempty")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.n_rx < 1:
            raise ValueError(f"n_rx must be >= 1, got {self.n_rx}")


@dataclass(frozen=True)
class SnrPoint:
    snr_db: float
    trials: int
    bit_errors: int
    symbol_errors: int
    ber: float
    ser: float
    joint_evals: int
    groupwise_evals: int
    agreement: int | None

    def to_json_dict(self) -> dict:
        return {
            "snr_db": self.snr_db,
            "trials": self.trials,
            "bit_errors": self.bit_errors,
            "symbol_errors": self.symbol_errors,
            "ber": self.ber,
            "ser": self.ser,
            "joint_evals": self.joint_evals,
            "groupwise_evals": self.groupwise_evals,
            "agreement": self.agreement,
        }


@dataclass(frozen=True)
class SimReport:
    seed: int
    n_rx: int
    decoder: str
    constellation: str
    points: tuple[SnrPoint, ...]

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n_rx": self.n_rx,
            "decoder": self.decoder,
            "constellation": self.constellation,
            "snr_points": [p.to_json_dict() for p in self.points],
        }

    def to_csv(self) -> str:
        lines = ["snr_db,trials,bit_errors,ber,ser,joint_evals,groupwise_evals,agreement"]
        for p in self.points:
            agreement = "" if p.agreement is None else str(p.agreement)
            lines.append(
                f"{p.snr_db!r},{p.trials},{p.bit_errors},{p.ber!r},{p.ser!r},"
                f"{p.joint_evals},{p.groupwise_evals},{agreement}"
            )
        return "\n".join(lines) + "\n"


# -- codeword assembly ---------------------------------------------------------


def _float_weights(d: Design) -> tuple[np.ndarray, np.ndarray]:
    """Per-symbol weight matrices as complex arrays, shape (gK, n, n)."""
    gk, n = d.num_symbols, d.n
    wi = np.empty((gk, n, n), dtype=np.complex128)
    wq = np.empty((gk, n, n), dtype=np.complex128)
    for k in range(1, gk + 1):
        wi[k - 1] = d.weights[(k, "I")].to_float()
        wq[k - 1] = d.weights[(k, "Q")].to_float()
    return wi, wq


def _per_symbol_points(
    d: Design, constellation: Constellation | Sequence[Constellation] | None
) -> list[Constellation]:
    if constellation is None:
        constellation = qpsk()
    if isinstance(constellation, Constellation):
        return [constellation] * d.num_symbols
    cs = list(constellation)
    if len(cs) != d.num_symbols:
        raise ValueError(
            f"need one constellation per symbol ({d.num_symbols}), got {len(cs)}"
        )
    return cs


def power_scale(d: Design, constellation: Constellation | Sequence[Constellation] | None = None) -> float:
    """Common scale factor making E[tr(S S^H)] equal n^2 exactly."""
    cs = _per_symbol_points(d, constellation)
    total_energy = sum(c.energy for c in cs)
    return math.sqrt(d.n / total_energy)


def assemble_codeword(d: Design, symbols: np.ndarray) -> np.ndarray:
    """Codeword matrix for one complex value per symbol (length gK)."""
    symbols = np.asarray(symbols, dtype=np.complex128)
    if symbols.shape != (d.num_symbols,):
        raise ValueError(f"expected {d.num_symbols} symbol values, got {symbols.shape}")
    wi, wq = _float_weights(d)
    return np.tensordot(symbols.real, wi, axes=1) + np.tensordot(symbols.imag, wq, axes=1)


# -- metrics -------------------------------------------------------------------


def ml_metric(y: np.ndarray, s: np.ndarray, h: np.ndarray) -> float:
    """Squared Frobenius norm of Y - S H."""
    y, s, h = np.asarray(y), np.asarray(s), np.asarray(h)
    n = s.shape[0]
    if s.shape != (n, n) or h.shape[0] != n or y.shape != (n, h.shape[1]):
        raise ValueError(f"dimension mismatch: Y{y.shape}, S{s.shape}, H{h.shape}")
    diff = y - s @ h
    return float(np.sum(np.abs(diff) ** 2))


def group_metric(d: Design, y: np.ndarray, h: np.ndarray, i: int, values: Sequence[complex]) -> float:
    """Per-group metric ||Y - S_i H||^2 with S_i assembled from group i's
    weight matrices and the given g complex symbol values."""
    values = np.asarray(values, dtype=np.complex128)
    if values.shape != (d.g,):
        raise ValueError(f"expected {d.g} symbol values for one group, got {values.shape}")
    y, h = np.asarray(y), np.asarray(h)
    n = d.n
    if h.shape[0] != n or y.shape != (n, h.shape[1]):
        raise ValueError(f"dimension mismatch: Y{y.shape}, H{h.shape}, n={n}")
    si = np.zeros((n, n), dtype=np.complex128)
    for v, k in zip(values, d.group_symbols(i)):
        si += v.real * d.weights[(k, "I")].to_float()
        si += v.imag * d.weights[(k, "Q")].to_float()
    diff = y - si @ h
    return float(np.sum(np.abs(diff) ** 2))


# -- decoders ------------------------------------------------------------------


def _contributions(
    wi: np.ndarray, wq: np.ndarray, h: np.ndarray, points: list[np.ndarray]
) -> list[np.ndarray]:
    """contrib[k][p] = candidate share of S H from symbol k at point p."""
    out = []
    for k, pts in enumerate(points):
        bi = wi[k] @ h
        bq = wq[k] @ h
        out.append(pts.real[:, None, None] * bi + pts.imag[:, None, None] * bq)
    return out


def _scaled_points(d: Design, constellation) -> list[np.ndarray]:
    cs = _per_symbol_points(d, constellation)
    scale = power_scale(d, cs)
    return [scale * np.asarray(c.points, dtype=np.complex128) for c in cs]


def _decode_joint_core(
    contrib: list[np.ndarray], y: np.ndarray, radices: list[int]
) -> tuple[np.ndarray, int]:
    total = math.prod(radices)
    strides = []
    s = total
    for m in radices:
        s //= m
        strides.append(s)
    best_val = math.inf
    best_idx = -1
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total))
        sh = np.zeros((len(idx),) + y.shape, dtype=np.complex128)
        for k, (c, stride, m) in enumerate(zip(contrib, strides, radices)):
            sh += c[(idx // stride) % m]
        metrics = np.sum(np.abs(y[None] - sh) ** 2, axis=(1, 2))
        pos = int(np.argmin(metrics))
        if metrics[pos] < best_val:
            best_val = float(metrics[pos])
            best_idx = start + pos
    digits = np.array([(best_idx // st) % m for st, m in zip(strides, radices)])
    return digits, total


def decode_joint(
    d: Design,
    y: np.ndarray,
    h: np.ndarray,
    constellation: Constellation | Sequence[Constellation] | None = None,
    cap: int = DEFAULT_JOINT_CAP,
) -> tuple[np.ndarray, int]:
    """Exhaustive argmin of ||Y - S H||^2 over every codeword.

    Returns (symbol index vector, number of metric evaluations).  The
    search space is the product of the constellation sizes and must not
    exceed ``cap``.
    """
    pts = _scaled_points(d, constellation)
    radices = [len(p) for p in pts]
    total = math.prod(radices)
    if total > cap:
        raise ValueError(
            f"joint search space {total} exceeds cap {cap}; "
            f"use decode_groupwise or raise the cap"
        )
    y, h = np.asarray(y, dtype=np.complex128), np.asarray(h, dtype=np.complex128)
    wi, wq = _float_weights(d)
    contrib = _contributions(wi, wq, h, pts)
    return _decode_joint_core(contrib, y, radices)


def _decode_groupwise_core(
    d: Design, contrib: list[np.ndarray], y: np.ndarray, radices: list[int]
) -> tuple[np.ndarray, int]:
    decided = np.empty(d.num_symbols, dtype=np.int64)
    evals = 0
    for i in range(1, d.K + 1):
        ks = [k - 1 for k in d.group_symbols(i)]
        rad = [radices[k] for k in ks]
        digits, count = _decode_joint_core([contrib[k] for k in ks], y, rad)
        evals += count
        decided[ks] = digits
    return decided, evals


def decode_groupwise(
    d: Design,
    y: np.ndarray,
    h: np.ndarray,
    constellation: Constellation | Sequence[Constellation] | None = None,
) -> tuple[np.ndarray, int]:
    """Per-group exhaustive argmin of ||Y - S_i H||^2; the decisions equal
    the joint decoder's on any certified design."""
    pts = _scaled_points(d, constellation)
    radices = [len(p) for p in pts]
    y, h = np.asarray(y, dtype=np.complex128), np.asarray(h, dtype=np.complex128)
    wi, wq = _float_weights(d)
    contrib = _contributions(wi, wq, h, pts)
    return _decode_groupwise_core(d, contrib, y, radices)


# -- simulation ----------------------------------------------------------------


def _crandn(rng: np.random.Generator, shape: tuple[int, ...], variance: float) -> np.ndarray:
    scale = math.sqrt(variance / 2)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def sigma2_for_snr_db(d: Design, snr_db: float) -> float:
    return d.n / (10 ** (snr_db / 10))


def simulate(
    d: Design,
    config: SimConfig,
    decoder: str = "both",
    joint_cap: int = DEFAULT_JOINT_CAP,
    verify: bool = True,
) -> SimReport:
    """Run the Monte Carlo link and return per-SNR-point counts.

    ``decoder`` is "both" (groupwise decisions drive the error counts,
    agreement with the joint decoder is tallied) or "groupwise".  Fully
    reproducible from config.seed.
    """
    if decoder not in ("both", "groupwise"):
        raise ValueError(f"decoder must be 'both' or 'groupwise', got {decoder!r}")
    if verify and not certify_design(d).verdict:
        raise ValueError("design failed certification; refusing to simulate")

    pts = _scaled_points(d, config.constellation)
    radices = [len(p) for p in pts]
    total_joint = math.prod(radices)
    if decoder == "both" and total_joint > joint_cap:
        raise ValueError(
            f"joint search space {total_joint} exceeds cap {joint_cap}; "
            f"run with decoder='groupwise' or raise the cap"
        )
    bits = [max(1, math.ceil(math.log2(m))) for m in radices]
    wi, wq = _float_weights(d)
    n, n_rx = d.n, config.n_rx

    points: list[SnrPoint] = []
    for p_idx, snr_db in enumerate(config.snr_db):
        sigma2 = sigma2_for_snr_db(d, snr_db)
        bit_errors = 0
        symbol_errors = 0
        agreement: int | None = 0 if decoder == "both" else None
        groupwise_evals = 0
        joint_evals = 0
        for t in range(config.trials):
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=config.seed, spawn_key=(p_idx, t))
            )
            sent = np.array([rng.integers(m) for m in radices])
            h = _crandn(rng, (n, n_rx), 1.0)
            noise = _crandn(rng, (n, n_rx), sigma2) if sigma2 > 0 else 0.0
            x = np.array([pts[k][sent[k]] for k in range(len(radices))])
            s = np.tensordot(x.real, wi, axes=1) + np.tensordot(x.imag, wq, axes=1)
            y = s @ h + noise

            contrib = _contributions(wi, wq, h, pts)
            decided, groupwise_evals = _decode_groupwise_core(d, contrib, y, radices)
            if decoder == "both":
                joint, joint_evals = _decode_joint_core(contrib, y, radices)
                if np.array_equal(joint, decided):
                    agreement += 1
            symbol_errors += int(np.count_nonzero(decided != sent))
            bit_errors += sum(
                int(a ^ b).bit_count() for a, b in zip(sent.tolist(), decided.tolist())
            )
        total_bits = config.trials * sum(bits)
        total_syms = config.trials * d.num_symbols
        points.append(
            SnrPoint(
                snr_db=float(snr_db),
                trials=config.trials,
                bit_errors=bit_errors,
                symbol_errors=symbol_errors,
                ber=bit_errors / total_bits,
                ser=symbol_errors / total_syms,
                joint_evals=joint_evals,
                groupwise_evals=groupwise_evals,
                agreement=agreement,
            )
        )
    cs = _per_symbol_points(d, config.constellation)
    names = sorted({c.name for c in cs})
    return SimReport(
        seed=config.seed,
        n_rx=config.n_rx,
        decoder=decoder,
        constellation=names[0] if len(names) == 1 else "+".join(names),
        points=tuple(points),
    )

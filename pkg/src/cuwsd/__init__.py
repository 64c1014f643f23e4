"""Toolkit for unitary-weight group-decodable space-time block codes on
2^a transmit antennas: exact construction and certification of the weight
matrices, symbolic codeword rendering, and Monte Carlo link simulation
with joint and per-group maximum-likelihood decoding."""

from .clifford import GeneratorSet, certify_clifford, generator_set, pauli
from .design import (
    AlphaSet,
    Design,
    DesignParams,
    build_alphas,
    build_design,
    certify_design,
    construction_order,
    corollary_rate,
    hr_table,
    left_multiply,
    normalize,
    qod_reference_rate,
    rate,
    weight_label,
)
from .exact import ExactMatrix, GaussianInt, J, anticommutes, commutes
from .report import CertReport, CheckRecord
from .sim import (
    Constellation,
    SimConfig,
    SimReport,
    assemble_codeword,
    decode_groupwise,
    decode_joint,
    group_metric,
    ml_metric,
    power_scale,
    qam16,
    qpsk,
    simulate,
)
from .symbolic import (
    LinearForm,
    RealVar,
    SymbolicCodeword,
    instantiate,
    instantiate_exact,
    parse_json,
    render,
    symbolic_matrix,
    zero_entry_count,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaSet",
    "CertReport",
    "CheckRecord",
    "Constellation",
    "Design",
    "DesignParams",
    "ExactMatrix",
    "GaussianInt",
    "GeneratorSet",
    "J",
    "LinearForm",
    "RealVar",
    "SimConfig",
    "SimReport",
    "SymbolicCodeword",
    "anticommutes",
    "assemble_codeword",
    "build_alphas",
    "build_design",
    "certify_clifford",
    "certify_design",
    "commutes",
    "construction_order",
    "corollary_rate",
    "decode_groupwise",
    "decode_joint",
    "generator_set",
    "group_metric",
    "hr_table",
    "instantiate",
    "instantiate_exact",
    "left_multiply",
    "ml_metric",
    "normalize",
    "parse_json",
    "pauli",
    "power_scale",
    "qam16",
    "qod_reference_rate",
    "qpsk",
    "rate",
    "render",
    "simulate",
    "symbolic_matrix",
    "weight_label",
    "zero_entry_count",
]

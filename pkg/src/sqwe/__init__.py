"""Signed quantum weight enumerators for |T>-state distillation with [[n,1]] stabilizer codes."""

from .pauli import PauliError, PauliOperator, parse_pauli, format_pauli, multiply, weight, symplectic_product, dot_product, m3_conjugate
from .code import (
    CodeError,
    CosetLabel,
    LogicalFrame,
    StabilizerCode,
    choose_logical_frame,
    classify,
    is_m3_code,
    membership_with_phase,
    normalizer_basis,
    parse_code_text,
    read_code_file,
    relabelings,
    standard_form,
    validate,
)
from .enumerator import (
    DistillationReport,
    IntPolynomial,
    SignedEnumeratorSet,
    ThresholdResult,
    analyze,
    build_x_code,
    check_t_axis_preserving,
    compute_enumerators,
    distillation_polynomial,
    theorem1_outputs,
    threshold,
    twirl,
    unsigned_enumerator,
)
from .search import SearchConfig, SearchConfigError, search_general, search_m3

__version__ = "0.1.0"

__all__ = [
    "CodeError",
    "CosetLabel",
    "DistillationReport",
    "IntPolynomial",
    "LogicalFrame",
    "PauliError",
    "PauliOperator",
    "SearchConfig",
    "SearchConfigError",
    "SignedEnumeratorSet",
    "StabilizerCode",
    "ThresholdResult",
    "analyze",
    "build_x_code",
    "check_t_axis_preserving",
    "choose_logical_frame",
    "classify",
    "compute_enumerators",
    "distillation_polynomial",
    "dot_product",
    "format_pauli",
    "is_m3_code",
    "m3_conjugate",
    "membership_with_phase",
    "multiply",
    "normalizer_basis",
    "parse_code_text",
    "parse_pauli",
    "read_code_file",
    "relabelings",
    "search_general",
    "search_m3",
    "standard_form",
    "symplectic_product",
    "theorem1_outputs",
    "threshold",
    "twirl",
    "unsigned_enumerator",
    "validate",
    "weight",
]

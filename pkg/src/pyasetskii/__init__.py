"""Exact computation of the Pyasetskii involution of L-parameters for general
linear and classical p-adic groups, together with rank matrices, closure
posets, and an independent linear-algebra verification oracle over a prime
field."""

from .halfint import HalfInt
from .core import (
    GroupType,
    InfinitesimalParameter,
    InvalidParameterError,
    LineKey,
    LParameter,
    MultiSegment,
    RhoClass,
    Segment,
    TRIVIAL_RHO,
    decompose_lines,
    gl_components,
    infinitesimal,
    line_parity,
    validate,
)
from .rankmat import RankMatrix, closure_leq, rank_matrix, rm_add, rm_leq
from .duality import (
    ExtractionTrace,
    az_bad,
    az_bad_step,
    dual_good,
    dual_nonselfdual,
    mw_dual,
    mw_step,
    pyasetskii_dual,
    unramify,
)
from .oracle import (
    DEFAULT_PRIME,
    CommutantSpace,
    Realization,
    build_realization,
    dual_commutant_space,
    nilpotency_check,
    oracle_dual_rank_matrix,
    verify_dual,
)
from .posets import (
    ParameterPoset,
    build_poset,
    check_dominating_involutions,
    dot_export,
    enum_classical,
    enum_line,
)

__version__ = "0.1.0"

__all__ = [
    "HalfInt",
    "RhoClass",
    "Segment",
    "MultiSegment",
    "InfinitesimalParameter",
    "LineKey",
    "GroupType",
    "LParameter",
    "TRIVIAL_RHO",
    "decompose_lines",
    "gl_components",
    "infinitesimal",
    "line_parity",
    "validate",
    "InvalidParameterError",
    "RankMatrix",
    "rank_matrix",
    "rm_leq",
    "rm_add",
    "closure_leq",
    "ExtractionTrace",
    "mw_step",
    "mw_dual",
    "az_bad_step",
    "az_bad",
    "dual_good",
    "dual_nonselfdual",
    "unramify",
    "pyasetskii_dual",
    "DEFAULT_PRIME",
    "Realization",
    "CommutantSpace",
    "build_realization",
    "dual_commutant_space",
    "oracle_dual_rank_matrix",
    "nilpotency_check",
    "verify_dual",
    "ParameterPoset",
    "enum_line",
    "enum_classical",
    "build_poset",
    "check_dominating_involutions",
    "dot_export",
    "__version__",
]

"""
patmoments: exact moments of permutation pattern counts on conjugacy classes.

For a pattern sigma in S_k and d >= 1 there is one polynomial in the variables
n, m_1, ..., m_dk (m_i = number of i-cycles) whose value at any cycle type of
any symmetric group is the d-th moment of the pattern count N_sigma over that
conjugacy class.  `moment_polynomial` computes it exactly via partition-algebra
diagrams, and `stable_decomposition` expands it over the padded irreducible
characters chi^(lambda[n]) with polynomial coefficients a^lambda(n) supported
on |lambda| <= dk.  Everything is rational arithmetic; `verify_all` replays
the whole construction against brute-force enumeration.
"""

from .errors import GuardrailError, InternalCheckError
from .perms import (
    CycleType,
    GeneralizedPattern,
    Permutation,
    class_representative,
    class_size,
    cycle_type,
    enumerate_cycle_types,
    is_sorted_as,
    pattern_occurrences,
)
from .mpoly import MPoly, UPoly, interpolate_univariate
from .characters import (
    ClassFunction,
    StableDecomposition,
    character_polynomial,
    decompose_stable,
    inner_product,
    mn_character,
    pad_partition,
)
from .diagrams import (
    DiagramCombo,
    SetPartitionKK,
    coarsenings,
    kernel_check,
    multiply_diagrams,
    phi_matrix,
    x_basis_expand,
)
from .tracepoly import build_part_graph, component_l_tot, q_factor, trace_polynomial
from .pipeline import (
    AveragingExpansion,
    PatternCombo,
    averaging_coefficients,
    moment_polynomial,
    shuffle_expand,
    stable_decomposition,
    tensor_power_expand,
)
from .oracle import (
    OracleConfig,
    VerificationReport,
    brute_average_operator,
    brute_moment,
    brute_pattern_trace,
    brute_trace,
    verify_all,
)

__version__ = "0.1.0"

__all__ = [
    "AveragingExpansion",
    "ClassFunction",
    "CycleType",
    "DiagramCombo",
    "GeneralizedPattern",
    "GuardrailError",
    "InternalCheckError",
    "MPoly",
    "OracleConfig",
    "PatternCombo",
    "Permutation",
    "SetPartitionKK",
    "StableDecomposition",
    "UPoly",
    "VerificationReport",
    "averaging_coefficients",
    "brute_average_operator",
    "brute_moment",
    "brute_pattern_trace",
    "brute_trace",
    "build_part_graph",
    "character_polynomial",
    "class_representative",
    "class_size",
    "coarsenings",
    "component_l_tot",
    "cycle_type",
    "decompose_stable",
    "enumerate_cycle_types",
    "inner_product",
    "interpolate_univariate",
    "is_sorted_as",
    "kernel_check",
    "mn_character",
    "moment_polynomial",
    "multiply_diagrams",
    "pad_partition",
    "pattern_occurrences",
    "phi_matrix",
    "q_factor",
    "shuffle_expand",
    "stable_decomposition",
    "tensor_power_expand",
    "trace_polynomial",
    "verify_all",
    "x_basis_expand",
]

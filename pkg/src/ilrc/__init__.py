"""Locally repairable and partial-MDS codes over finite fields, with
burst-error decoding of interleaved words beyond half the minimum
distance, exact success-probability formulas, and a seeded Monte Carlo
harness."""

from .codecore import LinearCode, MinDistance, ReedSolomonCode
from .galois import FieldElement, FiniteField, get_field
from .gfmatrix import ColumnSpace, GFMatrix, Solution, in_column_space, solve
from .interleaved import (
    BurstError,
    DecodeOutcome,
    InterleavedWord,
    colspace_of_syndrome_equals_h_columns,
    is_t_plus_1_independent,
    mk_decode,
    sample_burst_error,
)
from .irs import (
    bmd_decode,
    decode_lrc_via_supercode,
    decode_rows_independently,
    irs_decode,
    joint_key_equation_system,
    rs_syndromes,
    t_max,
)
from .lrc import (
    LocalityPartition,
    TamoBargCode,
    local_repair,
    lrc_singleton_bound,
    tamo_barg_code,
    verify_locality,
)
from .pmds import (
    AdmissibleSetCount,
    PmdsCode,
    PmdsSearchError,
    PmdsVerification,
    VerificationBudgetError,
    admissible_ratio_lower_bound,
    asymptotic_conditions,
    count_admissible_sets,
    count_sets_covering_a_group,
    pmds_random_search,
    verify_pmds,
)
from .probability import (
    CodeBundle,
    ExperimentConfig,
    LogProbability,
    SimulationReport,
    SuccessProbability,
    build_code,
    full_rank_fraction,
    full_rank_log,
    merge_reports,
    monte_carlo_estimate,
    pmds_success_probability,
    rank_deficiency_tail_log10,
    wilson_interval,
)
from .seeds import derive_seed

__version__ = "0.1.0"

__all__ = [
    "AdmissibleSetCount",
    "BurstError",
    "CodeBundle",
    "ColumnSpace",
    "DecodeOutcome",
    "ExperimentConfig",
    "FieldElement",
    "FiniteField",
    "GFMatrix",
    "InterleavedWord",
    "LinearCode",
    "LocalityPartition",
    "LogProbability",
    "MinDistance",
    "PmdsCode",
    "PmdsSearchError",
    "PmdsVerification",
    "ReedSolomonCode",
    "SimulationReport",
    "Solution",
    "SuccessProbability",
    "TamoBargCode",
    "VerificationBudgetError",
    "admissible_ratio_lower_bound",
    "asymptotic_conditions",
    "bmd_decode",
    "build_code",
    "colspace_of_syndrome_equals_h_columns",
    "count_admissible_sets",
    "count_sets_covering_a_group",
    "decode_lrc_via_supercode",
    "decode_rows_independently",
    "derive_seed",
    "full_rank_fraction",
    "full_rank_log",
    "get_field",
    "in_column_space",
    "irs_decode",
    "is_t_plus_1_independent",
    "joint_key_equation_system",
    "local_repair",
    "lrc_singleton_bound",
    "merge_reports",
    "mk_decode",
    "monte_carlo_estimate",
    "pmds_random_search",
    "pmds_success_probability",
    "rank_deficiency_tail_log10",
    "rs_syndromes",
    "sample_burst_error",
    "solve",
    "t_max",
    "tamo_barg_code",
    "verify_locality",
    "verify_pmds",
    "wilson_interval",
]

"""Diffsequence toolkit: block-substitution colorings, longest-sequence
search under hop budgets, exact Ramsey-type thresholds, and bound tables."""

from .colorings import (
    CapacityError,
    Coloring,
    ColoringFormatError,
    GapSet,
    POWERS_OF_TWO,
    block_index,
    expand,
    expand_iter,
    expanded_alternating,
    make_alternating,
    periodic_coloring,
)
from .engine import (
    BlockReduction,
    DiffSeq,
    ExpansionBoundCheck,
    LongestResult,
    ValidationResult,
    brute_longest,
    check_expansion_bound,
    longest_mono,
    longest_with_hops,
    reduce_positions,
    validate_diffseq,
)
from .bounds import (
    BoundReport,
    ConstructionCheck,
    bound_report,
    budget,
    choose_level,
    closed_form_bound,
    closed_form_log2,
    construction_bound,
    prior_lower_bound,
    render_table,
    verify_construction,
)
from .ramsey import RamseyResult, avoids, ramsey_number, ramsey_table
from .rng import SplitMix64

__version__ = "0.1.0"

__all__ = [
    "BlockReduction",
    "BoundReport",
    "CapacityError",
    "Coloring",
    "ColoringFormatError",
    "ConstructionCheck",
    "DiffSeq",
    "ExpansionBoundCheck",
    "GapSet",
    "LongestResult",
    "POWERS_OF_TWO",
    "RamseyResult",
    "SplitMix64",
    "ValidationResult",
    "avoids",
    "block_index",
    "bound_report",
    "brute_longest",
    "budget",
    "check_expansion_bound",
    "choose_level",
    "closed_form_bound",
    "closed_form_log2",
    "construction_bound",
    "expand",
    "expand_iter",
    "expanded_alternating",
    "longest_mono",
    "longest_with_hops",
    "make_alternating",
    "periodic_coloring",
    "prior_lower_bound",
    "ramsey_number",
    "ramsey_table",
    "reduce_positions",
    "render_table",
    "validate_diffseq",
    "verify_construction",
]

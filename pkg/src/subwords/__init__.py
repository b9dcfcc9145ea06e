"""Counting, locating and generating subword occurrences in binary words."""

from .words import (
    BinaryWord,
    Run,
    RunDecomposition,
    decompose,
    llet,
    read_word_list,
    rlet,
    same_parity_distance,
    tail,
    write_word_list,
)
from .oracles import (
    BoundExceededError,
    EmptyPatternError,
    census_oracle,
    census_table_oracle,
    classify_letter_oracle,
    completion_oracle,
    count_occurrences_oracle,
    generate_containing_oracle,
    generate_primitive_oracle,
)
from .occurrences import (
    ExtremalOccurrence,
    LetterClass,
    PatternContext,
    Reason,
    alpha,
    classify_letter,
    count_occurrences_formula,
    is_lexmin_occurrence,
    is_primitive,
    left_span,
    lexmax_occurrence,
    lexmin_occurrence,
    reduce_to_primitive,
    right_span,
    same_parity_sum,
    zeta,
)
from .generation import (
    Census,
    NotPrimitiveError,
    census_primitive,
    completion_count,
    distribution,
    enumerate_completions,
    generate_containing,
    generate_primitive,
    primitive_set,
    solve_primitive_equation,
)

__version__ = "0.1.0"

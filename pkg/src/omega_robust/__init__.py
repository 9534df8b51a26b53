"""Natural ranks, letter colors and robustness values for ω-regular languages
given as deterministic parity automata."""

from .automaton import (
    Dpa,
    LassoWord,
    accepts,
    canonicalize,
    complement,
    export_dot,
    lang_equiv,
    parse_document,
    parse_dpa,
    parse_lasso,
    parse_word,
    run_lasso,
    serialize_dpa,
)
from .colors import AvgScore, Color, ColorCounts, Score, forgetful_prefix, letter_colors, score, theta
from .errors import (
    AlphabetMismatch,
    AnalysisError,
    Diverged,
    EmptyInfix,
    FormatError,
    InvalidForgetful,
    SuiteFailure,
)
from .forgetful import (
    ColoredRun,
    ForgetfulDpa,
    accepts_forgetful,
    colored_run,
    forgetful_transform,
    parse_forgetful,
    robustness_dpa,
    steady_period_colors,
)
from .natural import (
    CongruenceClasses,
    InfixRanks,
    WagnerClass,
    congruence_classes,
    infix_rank,
    minimize_ranks,
    wagner_class,
    word_rank,
)
from .oracle import TestUniverse, oracle_infix_rank, oracle_letter_ranks, run_suite
from .rank import INFINITE, NEG_ONE, NEG_TWO, Rank
from .suffixes import LetterAnalysis, LetterAnalyzer, analyze_word, letter_rank_stream, letter_table
from .values import (
    ZERO,
    Decomposition,
    Mode,
    Preference,
    Robustness,
    RobustnessValue,
    compare,
    robustness_value,
    satisfies_bar,
)
from .vigor import VigorConstruction, build_vigor, membership_value, minimize_vigor, vigor_construction

__all__ = [name for name in dir() if not name.startswith("_")]

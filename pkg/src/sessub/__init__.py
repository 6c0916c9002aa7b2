"""Toolkit for inductive subtyping of recursive binary session types."""

from .syntax import (
    Branch,
    End,
    Input,
    InvalidSessionType,
    Output,
    Rec,
    Select,
    SessionType,
    Var,
    alpha_canonical,
    alpha_equal,
    free_vars,
    nesting_depth,
    size,
    substitute,
    validate,
)
from .textio import ParseError, encode_judgement, parse, print_type
from .subterms import TypeSet, sub_bottom_up, sub_pair, sub_top_down, unfold
from .inductive import (
    CheckReport,
    Claim,
    DerivationNode,
    Judgement,
    StepLimitExceeded,
    derive,
    path_measures,
    premises,
    select_rule,
)
from .memo import MemoState, check_memo, subtype_memo
from .oracle import check_simulation, coinductive_equal, simulates
from .worstgen import BenchRow, bench, gen_Tk, gen_V

__all__ = [
    "Branch", "End", "Input", "Output", "Rec", "Select", "SessionType", "Var",
    "InvalidSessionType", "ParseError", "StepLimitExceeded",
    "alpha_canonical", "alpha_equal", "free_vars", "nesting_depth", "size",
    "substitute", "validate", "parse", "print_type", "encode_judgement",
    "TypeSet", "sub_bottom_up", "sub_pair", "sub_top_down", "unfold",
    "CheckReport", "Claim", "DerivationNode", "Judgement",
    "derive", "path_measures", "premises", "select_rule",
    "MemoState", "check_memo", "subtype_memo",
    "check_simulation", "coinductive_equal", "simulates",
    "BenchRow", "bench", "gen_Tk", "gen_V",
]

__version__ = "0.1.0"

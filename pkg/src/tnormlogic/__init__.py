"""Exact workbench for t-norm based many-valued propositional logics."""
from .algebra import (
    GQ,
    MVQ,
    PQ,
    TOP,
    Algebra,
    AlgebraError,
    CancellativeHoop,
    FiniteMV,
    InfiniteAlgebraError,
    RationalGodelHoop,
    RationalMV,
    TruthValue,
    decompose_finite_chain,
    enumerate_finite_chains,
    from_sizes,
    parse_algebra,
    parse_truth_value,
)
from .formula import BasicLiteral, Mult, Pow, format_literal, parse_formula, render_formula
from .mcnaughton import literal_to_pwl, pwl_zero_set, separate_points, threshold_literal
from .principles import Principle, Verdict, census, check_p1, check_p2, classify_chain
from .semantics import Valuation, evaluate, parse_valuation

__version__ = "0.1.0"

"""Algebraic expressions for Fibonacci graphs: generators, complexity
measures, predictions and oracles."""

from . import analytics, methods
from .analytics import (
    MethodId,
    closed_form_counts,
    fib_count,
    min_counts_dp,
    predicted_counts,
)
from .errors import (
    FibExprError,
    InvalidSizeError,
    SizeGuardError,
    UnsupportedInputError,
    InvalidExpressionError,
    ExprSyntaxError,
    UnboundTermError,
    ReductionNotApplicableError,
    InvalidScheduleError,
    NoReductionsNeededError,
    InvalidChoiceError,
    InvalidPartCountError,
    CountOverflowError,
)
from .expr import (
    ONE,
    ComplexityReport,
    PrimeField,
    Product,
    Sum,
    Term,
    a,
    add,
    b,
    canonical_sum,
    complexity,
    evaluate,
    expand,
    mul,
    parse,
    render,
)
from .graph import Edge, StDag, enumerate_paths, fib_graph, path_sum
from .methods import *  # noqa: F401,F403

__version__ = "0.1.0"

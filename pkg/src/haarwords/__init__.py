"""Exact Haar-unitary integrals of word maps, with Monte Carlo cross-checks."""
from .combinatorics import enumerate_partitions, hook_product, lr_coefficient, stirling_unsigned
from .characters import character_value, induced_multiplicity, unitary_dimension
from .engine import (
    EntrySpec,
    TraceProductProblem,
    build_problem,
    entrywise_trace_product,
    expected_entry_product,
    expected_trace_product,
)
from .errors import BudgetError
from .moments import (
    ds_moment,
    first_moment,
    limit_polynomial,
    power_sum_expansion,
    second_moment,
    sym,
    wedge,
)
from .weingarten import weingarten_table, weingarten_value
from .words import ENGEL, Word, parse_word

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "ENGEL",
    "EntrySpec",
    "TraceProductProblem",
    "Word",
    "build_problem",
    "character_value",
    "ds_moment",
    "entrywise_trace_product",
    "enumerate_partitions",
    "expected_entry_product",
    "expected_trace_product",
    "first_moment",
    "hook_product",
    "induced_multiplicity",
    "limit_polynomial",
    "lr_coefficient",
    "parse_word",
    "power_sum_expansion",
    "second_moment",
    "stirling_unsigned",
    "sym",
    "unitary_dimension",
    "wedge",
    "weingarten_table",
    "weingarten_value",
]

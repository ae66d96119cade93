"""Exact checkers and solvers for derivations characterized by one functional equation.

The equation in question relates two unknown functions on a field::

    f(x+y) - f(x) - f(y) = g(xy) - x g(y) - y g(x)

and its solutions are exactly ``g = phi + alpha`` and
``f = beta + alpha(x^2)/2 - x alpha(x)`` with ``alpha``, ``beta`` additive and
``phi`` satisfying the product rule.  This package verifies that statement
and its ingredients exhaustively over finite carriers and by exact sampling
over Q[t] and Q(t).
"""

from .checkers import (
    CheckReport,
    Witness,
    check_additive,
    check_cocycle_system,
    check_corollary,
    check_derivation,
    check_equation_E,
    check_eta,
    check_leibniz,
    check_trace_identity,
)
from .errors import DerivaError
from .expr import ExprFunction, parse_expr
from .linalg import LinearSystemFp, solve_linear_fp
from .ring import Ring, RingElement, elements, find_irreducible, half, parse_ring_spec
from .solvers import (
    E,
    Corollary,
    Decomposition,
    SolutionSet,
    compose_solution,
    decompose,
    enumerate_additive,
    enumerate_bruteforce,
    enumerate_derivations,
    represent_cocycle,
    solve_linear_solutions,
)
from .symbolic import (
    Polynomial,
    RationalFunction,
    derivative_rational,
    formal_derivative,
    sample_check_corollary,
    sample_check_derivation,
)
from .tables import FunctionTable, TwoPlaceTable, cauchy_diff, leibniz_diff, read_table, tabulate, write_table

__all__ = [
    "CheckReport",
    "Witness",
    "check_additive",
    "check_cocycle_system",
    "check_corollary",
    "check_derivation",
    "check_equation_E",
    "check_eta",
    "check_leibniz",
    "check_trace_identity",
    "DerivaError",
    "ExprFunction",
    "parse_expr",
    "LinearSystemFp",
    "solve_linear_fp",
    "Ring",
    "RingElement",
    "elements",
    "find_irreducible",
    "half",
    "parse_ring_spec",
    "E",
    "Corollary",
    "Decomposition",
    "SolutionSet",
    "compose_solution",
    "decompose",
    "enumerate_additive",
    "enumerate_bruteforce",
    "enumerate_derivations",
    "represent_cocycle",
    "solve_linear_solutions",
    "Polynomial",
    "RationalFunction",
    "derivative_rational",
    "formal_derivative",
    "sample_check_corollary",
    "sample_check_derivation",
    "FunctionTable",
    "TwoPlaceTable",
    "cauchy_diff",
    "leibniz_diff",
    "read_table",
    "tabulate",
    "write_table",
]

__version__ = "0.1.0"

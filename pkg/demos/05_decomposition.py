"""
Splitting a solution
====================

Every solution ``(f, g)`` over a finite field of odd characteristic is
``g = phi + alpha`` and ``f = beta + alpha(x^2)/2 - x alpha(x)`` with
``alpha, beta`` additive and ``phi`` satisfying the product rule.
"""

from deriva import FunctionTable, cauchy_diff, leibniz_diff, parse_ring_spec, tabulate
from deriva.errors import HalfUndefinedError
from deriva.solvers import compose_solution, decompose, represent_cocycle

GF9 = parse_ring_spec("GF:9")
zero = FunctionTable.zero(GF9)

# Frobenius is additive but not GF(9)-linear
frob = tabulate("x^3", GF9)
f, g = compose_solution(frob, zero, zero)
d = decompose(f, g)
print("alpha is Frobenius:", d.alpha == frob, " beta = 0:", d.beta == zero, " phi = 0:", d.phi == zero)

# recover a function from its pair of differences
GF7 = parse_ring_spec("GF:7")
f0 = tabulate("x^5 + 3*x^2 + 4", GF7)
print("recovered:", represent_cocycle(cauchy_diff(f0), leibniz_diff(f0)) == f0)

# characteristic two has no 1/2
try:
    decompose(FunctionTable.zero(parse_ring_spec("GF:4")), FunctionTable.zero(parse_ring_spec("GF:4")))
except HalfUndefinedError as exc:
    print("GF:4 ->", exc.kind)

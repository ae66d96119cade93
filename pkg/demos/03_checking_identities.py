"""
Exhaustive checks with witnesses
================================

Every checker scans the whole tuple space and, on failure, reports the
first counterexample in lexicographic order.
"""

from deriva import (
    FunctionTable,
    cauchy_diff,
    check_cocycle_system,
    check_equation_E,
    check_eta,
    check_trace_identity,
    leibniz_diff,
    parse_ring_spec,
    tabulate,
)
from deriva.solvers import enumerate_additive

GF3 = parse_ring_spec("GF:3")

print(check_equation_E(tabulate("x^2", GF3), tabulate("x", GF3)).summary())
print(check_equation_E(tabulate("x^2", GF3), FunctionTable.zero(GF3)).summary())

# differences of any function satisfy the compatibility system
f = tabulate("x^3 + 2*x^2 + 1", parse_ring_spec("GF:7"))
report = check_cocycle_system(cauchy_diff(f), leibniz_diff(f))
for sub in report.sub_reports:
    print("  ", sub.summary())

# perturb one entry and the symmetry check catches it
bad = cauchy_diff(f).with_entry(1, 2, 0)
print(check_cocycle_system(bad, leibniz_diff(f)).summary())

# homogeneity fails for the square map on GF(5)
print(check_eta(cauchy_diff(tabulate("x^2", parse_ring_spec("GF:5")))).summary())

# the trace identity holds for each of the 81 additive maps of GF(9)
maps = enumerate_additive(parse_ring_spec("GF:9"))
print("trace identity:", sum(bool(check_trace_identity(a)) for a in maps), "/", len(maps))

"""
Cauchy and Leibniz differences
==============================

A function on a finite carrier is a lookup table.  Its Cauchy difference
``f(x+y) - f(x) - f(y)`` and Leibniz difference ``f(xy) - x f(y) - y f(x)``
are two-place tables.
"""

import tempfile
from pathlib import Path

from deriva import cauchy_diff, leibniz_diff, parse_ring_spec, read_table, tabulate, write_table

GF5 = parse_ring_spec("GF:5")
f = tabulate("x^2", GF5)
print("f =", f.to_strings())

C = cauchy_diff(f)
D = leibniz_diff(tabulate("3*x", GF5))
# C(x, y) = 2xy and D(x, y) = -3xy, which agree mod 5
for row_c, row_d in zip(C.to_strings(), D.to_strings()):
    print(" ".join(row_c), " | ", " ".join(row_d))
print("C == D:", C == D)

# tables round-trip through a plain text format
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "C.txt"
    write_table(path, C)
    print(path.read_text().splitlines()[:2])
    assert read_table(path) == C

"""
Counting solutions two ways
===========================

Brute force scans every pair of tables; the linear method writes the
equation over the prime field and takes a nullspace.  They must agree.
"""

import time

from deriva import parse_ring_spec
from deriva.solvers import Corollary, enumerate_bruteforce, enumerate_derivations, solve_linear_solutions

for spec in ("GF:2", "GF:3", "GF:5"):
    R = parse_ring_spec(spec)
    t0 = time.perf_counter()
    brute = enumerate_bruteforce(R)
    t1 = time.perf_counter()
    lin = solve_linear_solutions(R)
    t2 = time.perf_counter()
    print(f"{spec}: brute {brute.count} in {t1 - t0:.2f}s, linear {lin.count} (nullity {lin.nullity}) in {t2 - t1:.3f}s",
          *brute.notes)
    assert brute.as_set() == lin.as_set()

# GF(9) is far beyond brute force: 9^18 pairs
lin = solve_linear_solutions(parse_ring_spec("GF:9"))
print("GF:9 linear:", lin.count, "solutions, nullity", lin.nullity)

# the single-function equation collapses to the derivations, which vanish here
GF3 = parse_ring_spec("GF:3")
sols = enumerate_bruteforce(GF3, Corollary(GF3(2), GF3(1)))
print("lambda=2, mu=1:", [s[0].to_strings() for s in sols.solutions])
print("derivations:", [d.to_strings() for d in enumerate_derivations(GF3)])

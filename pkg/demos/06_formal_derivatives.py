"""
Formal derivatives on Q[t], GF(p)[t] and Q(t)
==============================================

On infinite carriers the derivation laws are checked on seeded random
samples with exact arithmetic.
"""

from deriva.ring import parse_ring_spec
from deriva.symbolic import (
    derivative,
    parse_polynomial,
    parse_rational,
    sample_check_corollary,
    sample_check_derivation,
)

Q = parse_ring_spec("Q")
p = parse_polynomial("t^3 + 2*t", Q)
print("d(", p, ") =", derivative(p))

r = parse_rational("(t^2 + 1) / t", Q)
print("d(", r, ") =", derivative(r))

# in characteristic 3 the derivative vanishes on cubes
g = parse_polynomial("2 + t + t^2", parse_ring_spec("GF:3"))
print("d(g^3) =", derivative(g**3))

for domain in ("Q[t]", "GF:3[t]", "Q(t)"):
    print(sample_check_derivation(derivative, domain, samples=100).summary())
print(sample_check_corollary(derivative, 2, -3, samples=50).summary())

"""
Finite fields and residue rings
===============================

Carriers are named by short specs.  Elements of GF(p^k) are stored as
integer indices whose base-p digits are the polynomial coefficients,
constant term first.
"""

import numpy as np

from deriva import parse_ring_spec

# GF(9) is built on the first irreducible quadratic in the canonical scan
F9 = parse_ring_spec("GF:9")
print(F9, "modulus coefficients", F9.poly)
print("elements:", [str(x) for x in F9.elements()])

# t^2 = -1 = 2 in this presentation
t = F9.parse_element("0,1")
print("t*t =", t * t, "  t^-1 =", t.inv())

# the arithmetic is vectorized over index arrays
idx = np.arange(F9.order)
frob = F9.pow(idx, 3)
print("Frobenius x -> x^3 permutes the field:", sorted(frob.tolist()) == idx.tolist())

# residue rings are allowed wherever a field is not required
Z6 = parse_ring_spec("Z:6")
print("2*3 in Z:6 =", Z6(2) * Z6(3), "  is a field:", Z6.is_field)

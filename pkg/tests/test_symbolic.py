import random
from fractions import Fraction

import pytest
import sympy

from deriva.errors import PreconditionError, RingSpecError
from deriva.ring import parse_ring_spec
from deriva.symbolic import (
    Polynomial,
    RationalFunction,
    derivative,
    derivative_rational,
    formal_derivative,
    parse_domain,
    parse_polynomial,
    parse_rational,
    poly_gcd,
    random_element,
    sample_check_corollary,
    sample_check_derivation,
)

Q = parse_ring_spec("Q")
GF3 = parse_ring_spec("GF:3")
t = sympy.Symbol("t")


def P(text, base=Q):
    return parse_polynomial(text, base)


def R(text):
    return parse_rational(text, Q)


def to_sympy(x):
    if isinstance(x, RationalFunction):
        return to_sympy(x.num) / to_sympy(x.den)
    return sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(x.coeffs))


# --- polynomials ---------------------------------------------------------------------


def test_zero_polynomial():
    z = Polynomial(Q)
    assert z.coeffs == () and z.degree == float("-inf") and str(z) == "0"
    assert Polynomial(Q, [0, 0, 0]) == z


def test_normalization_and_text():
    p = Polynomial(Q, [1, 0, Fraction(-1, 2), 0])
    assert p.degree == 2
    assert str(p) == "1 + -1/2*t^2"
    assert P(str(p)) == p


@pytest.mark.parametrize("text", ["3 + 2*t + t^5", "0", "t", "1/3*t^2 - 7/2", "(t + 1)^4"])
def test_text_round_trip(text):
    p = P(text)
    assert P(str(p)) == p


def test_gf3_coefficients_reduced():
    assert Polynomial(GF3, [5, 4]).coeffs == (2, 1)
    assert P("2*t + 2*t", GF3) == P("t", GF3)


def test_formal_derivative_examples():
    assert formal_derivative(P("t^3 + 2*t")) == P("3*t^2 + 2")
    assert formal_derivative(P("7")).is_zero()
    assert formal_derivative(P("t^3", GF3)).is_zero()


def test_divmod_and_gcd():
    a, b = P("t^3 - 1"), P("t^2 - 1")
    q, r = divmod(a, b)
    assert q * b + r == a and r.degree < b.degree
    assert poly_gcd(a, b) == P("t - 1")


def test_polynomial_derivative_matches_sympy():
    rng = random.Random(4)
    for _ in range(50):
        p = random_element(rng, parse_domain("Q[t]"))
        assert sympy.expand(to_sympy(formal_derivative(p)) - sympy.diff(to_sympy(p), t)) == 0


# --- rational functions -------------------------------------------------------------------


def test_rational_normalized():
    r = R("(2*t^2 - 2) / (4*t - 4)")
    assert r == R("1/2*t + 1/2")
    assert r.den == P("1")
    s = R("(t + 1) / (3*t)")
    assert s.den.lead == 1  # monic
    assert poly_gcd(s.num, s.den).degree == 0


def test_rational_arithmetic():
    r = R("1 / t")
    assert r * RationalFunction(P("t")) == RationalFunction(P("1"))
    assert r + r == R("2 / t")
    assert (r - r).is_zero()
    assert r / r == RationalFunction(P("1"))


def test_rational_derivative_examples():
    assert derivative_rational(R("1 / t")) == R("-1 / t^2")
    assert derivative_rational(RationalFunction(P("t"))) == RationalFunction(P("1"))
    r = R("(t^2 + 1) / t")
    dr = derivative_rational(r)
    assert dr == R("(t^2 - 1) / t^2")
    # multiply back: d(r * t) = d(t^2 + 1)
    tt = RationalFunction(P("t"))
    assert dr * tt + r == RationalFunction(P("2*t"))


def test_leibniz_on_reciprocal():
    tt, inv = RationalFunction(P("t")), R("1 / t")
    one = tt * inv
    assert derivative(one).is_zero()
    assert tt * derivative(inv) + inv * derivative(tt) == derivative(one)


def test_rational_derivative_matches_sympy():
    rng = random.Random(9)
    dom = parse_domain("Q(t)")
    for _ in range(30):
        r = random_element(rng, dom, max_degree=5)
        n, d = to_sympy(r.num), to_sympy(r.den)
        dn, dd = to_sympy(derivative(r).num), to_sympy(derivative(r).den)
        # dn/dd == (n' d - n d') / d^2, compared after clearing denominators
        assert sympy.expand(dn * d**2 - (sympy.diff(n, t) * d - n * sympy.diff(d, t)) * dd) == 0


def test_rational_derivative_agrees_on_polynomials():
    rng = random.Random(2)
    for _ in range(50):
        p = random_element(rng, parse_domain("Q[t]"))
        assert derivative(RationalFunction(p)) == RationalFunction(formal_derivative(p))


def test_rational_text():
    r = R("(t + 1) / (t^2 + 3)")
    assert str(r) == "(1 + 1*t) / (3 + 1*t^2)"
    assert R(str(r)) == r
    assert str(RationalFunction(P("t"))) == "1*t"


# --- characteristic p -------------------------------------------------------------------------


@pytest.mark.parametrize("spec", ["GF:3", "GF:5", "GF:7"])
def test_pth_powers_have_zero_derivative(spec):
    base = parse_ring_spec(spec)
    rng = random.Random(0)
    dom = parse_domain(f"{spec}[t]")
    for _ in range(50):
        f = random_element(rng, dom, max_degree=6)
        assert formal_derivative(f ** base.characteristic).is_zero()


# --- sampled checks ------------------------------------------------------------------------


@pytest.mark.parametrize("domain", ["Q[t]", "GF:3[t]", "Q(t)"])
def test_sample_check_derivation(domain):
    r = sample_check_derivation(derivative, domain, samples=100, seed=1)
    assert r and r.checked == 100 and r.check == "derivation-sample"


def test_sample_check_is_deterministic():
    a = sample_check_derivation(derivative, "Q[t]", samples=20, seed=3)
    b = sample_check_derivation(derivative, "Q[t]", samples=20, seed=3)
    assert a == b


def test_sample_check_catches_non_derivation():
    # the identity map is additive but violates the product rule
    r = sample_check_derivation(lambda p: p, "Q[t]", samples=10)
    assert not r and r.checked == 1
    # squaring the derivative breaks additivity as well
    r = sample_check_derivation(lambda p: formal_derivative(p) * formal_derivative(p), "GF:3[t]", samples=50)
    assert not r


@pytest.mark.parametrize("lam,mu", [(1, 1), (2, -3), (Fraction(1, 2), 5)])
def test_sample_check_corollary(lam, mu):
    assert sample_check_corollary(derivative, lam, mu, samples=50)


def test_corollary_rejects_zero_scalars():
    with pytest.raises(PreconditionError):
        sample_check_corollary(derivative, 0, 1)
    with pytest.raises(PreconditionError):
        sample_check_corollary(derivative, 1, 3, domain="GF:3[t]")


def test_corollary_detects_identity_map():
    assert not sample_check_corollary(lambda x: x, 1, 1, samples=10)


def test_domain_parsing():
    assert str(parse_domain("Q[t]")) == "Q[t]"
    assert str(parse_domain("GF:5[t]")) == "GF:5[t]"
    assert parse_domain("Q(t)").rational
    for bad in ["Q", "Z:6[t]", "GF:9[t]", "Q[x]"]:
        with pytest.raises(RingSpecError):
            parse_domain(bad)


def test_samples_must_be_positive():
    with pytest.raises(PreconditionError):
        sample_check_derivation(derivative, "Q[t]", samples=0)

"""Formal derivatives on K[t] and K(t), checked by exact random sampling.

``K`` is Q (``Fraction`` coefficients) or a prime field (``int`` residues).
Polynomials are constant-first coefficient tuples without trailing zeros;
rational functions are reduced with a monic denominator.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_inner_gcd

from .checkers import FAIL, PASS, CheckReport, Witness
from .errors import DerivaError, NotAUnitError, PreconditionError, RingSpecError
from .expr import parse_ast, evaluate
from .ring import Ring, parse_ring_spec

__all__ = [
    "Polynomial",
    "RationalFunction",
    "Domain",
    "parse_domain",
    "formal_derivative",
    "derivative_rational",
    "derivative",
    "parse_polynomial",
    "parse_rational",
    "sample_check_derivation",
    "sample_check_corollary",
]


def _base_ok(base: Ring) -> Ring:
    if base.kind == "Q" or (base.is_field and base.degree == 1):
        return base
    raise RingSpecError(f"polynomial coefficients must come from Q or a prime field, not {base}")


def _residue(c, p: int) -> int:
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise NotAUnitError(f"{c} has no image mod {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


class Polynomial:
    """Polynomial over Q or GF(p) in ``t``."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base: Ring, coeffs=()):
        _base_ok(base)
        if base.kind == "Q":
            cs = [Fraction(c) for c in coeffs]
        else:
            cs = [_residue(c, base.modulus) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.base = base
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls, base: Ring) -> Polynomial:
        return cls(base, (0, 1))

    @classmethod
    def constant(cls, base: Ring, c) -> Polynomial:
        return cls(base, (c,))

    @property
    def degree(self) -> float | int:
        """Degree; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def _inv(self, c):
        if c == 0:
            raise NotAUnitError("division by zero coefficient")
        if self.base.kind == "Q":
            return 1 / c
        return pow(c, -1, self.base.modulus)

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.base != self.base:
                raise DerivaError(f"polynomials over {self.base} and {other.base}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.base, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(self.base, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.base, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(self.base)
        if self.base.kind != "Q":
            return Polynomial(self.base, _zmul(a, b))
        ma, mb = _common_denominator(self), _common_denominator(other)
        prod = _zmul([int(c * ma) for c in a], [int(c * mb) for c in b])
        return Polynomial(self.base, [Fraction(c, ma * mb) for c in prod])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = Polynomial(self.base, (1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Polynomial:
        return Polynomial(self.base, [c * x for x in self.coeffs])

    def __divmod__(self, other: Polynomial):
        if other.is_zero():
            raise NotAUnitError("polynomial division by zero")
        rem = list(self.coeffs)
        inv = self._inv(other.lead)
        dq = len(other.coeffs) - 1
        quo = [0] * max(len(rem) - dq, 0)
        mod = None if self.base.kind == "Q" else self.base.modulus
        for shift in range(len(rem) - 1 - dq, -1, -1):
            c = rem[shift + dq] * inv
            if mod:
                c %= mod
            if c:
                quo[shift] = c
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] -= c * b
                    if mod:
                        rem[shift + i] %= mod
        return Polynomial(self.base, quo), Polynomial(self.base, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> Polynomial:
        return self.scale(self._inv(self.lead)) if self.coeffs else self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial(self.base, (other,))
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.base == other.base and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.base, self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if k == 0 else f"{c}*t" if k == 1 else f"{c}*t^{k}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.base}, {self})"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# Q(t) elements are kept as integer coefficient lists: fraction-coefficient
# Euclid blows up on the degree-40 denominators the sampled checks produce.


def _diff(cs) -> list:
    return [k * c for k, c in enumerate(cs)][1:]


def _ztrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zadd(a, b) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ztrim(out)


def _zneg(a) -> list[int]:
    return [-c for c in a]


def _zmul(a, b) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


_P = 2**61 - 1


def _coprime_mod_p(a, b) -> bool:
    """True when a and b are certainly coprime over Q (gcd mod a large prime is 1).

    Valid because reduction mod P keeps the degree of any common factor
    whenever P does not divide the leading coefficient of ``a``.
    """
    if a[-1] % _P == 0:
        return False
    x = [c % _P for c in a]
    y = _ztrim([c % _P for c in b])
    while y:
        if len(y) == 1:
            return True
        inv = pow(y[-1], -1, _P)
        while len(x) >= len(y):
            f = x[-1] * inv % _P
            shift = len(x) - len(y)
            x[shift:] = [(u - f * c) % _P for u, c in zip(x[shift:], y)]
            _ztrim(x)
        x, y = y, x
    return len(x) == 1


def _zgcd(a, b) -> tuple[list[int], list[int], list[int]]:
    """``(h, a/h, b/h)`` with ``h`` the primitive gcd of two integer polynomials."""
    if len(a) <= 1 or len(b) <= 1 or _coprime_mod_p(a, b):
        return [1], list(a), list(b)
    h, ca, cb = dup_inner_gcd([ZZ(c) for c in reversed(a)], [ZZ(c) for c in reversed(b)], ZZ)
    return [int(c) for c in reversed(h)], [int(c) for c in reversed(ca)], [int(c) for c in reversed(cb)]


def _zcanon(n, d, coprime: bool = False) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reduced pair: coprime, joint content 1, positive leading denominator.

    ``coprime=True`` skips the polynomial gcd when the caller knows it is 1.
    """
    n, d = _ztrim(list(n)), _ztrim(list(d))
    if not d:
        raise NotAUnitError("zero denominator")
    if not n:
        return (), (1,)
    if not coprime:
        _, n, d = _zgcd(n, d)
    g = 0
    for c in itertools.chain(n, d):
        g = math.gcd(g, c)
    if d[-1] < 0:
        g = -g
    return tuple(c // g for c in n), tuple(c // g for c in d)


def _common_denominator(p: Polynomial) -> int:
    return math.lcm(*(c.denominator for c in p.coeffs)) if p.coeffs else 1


_Q = Ring.rationals()


class RationalFunction:
    """Element of Q(t): reduced ``num / den`` with ``den`` monic."""

    __slots__ = ("_n", "_d")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        for p in (num, den):
            if p is not None and p.base.kind != "Q":
                raise RingSpecError("rational functions are supported over Q only")
        if den is None:
            den = Polynomial(_Q, (1,))
        if den.is_zero():
            raise NotAUnitError("zero denominator")
        mn, md = _common_denominator(num), _common_denominator(den)
        n = [int(c * mn) * md for c in num.coeffs]
        d = [int(c * md) * mn for c in den.coeffs]
        self._n, self._d = _zcanon(n, d)

    @classmethod
    def _from_integer(cls, n, d, coprime: bool = False) -> RationalFunction:
        obj = cls.__new__(cls)
        obj._n, obj._d = _zcanon(list(n), list(d), coprime)
        return obj

    @property
    def base(self) -> Ring:
        return _Q

    @property
    def num(self) -> Polynomial:
        lead = self._d[-1]
        return Polynomial(_Q, [Fraction(c, lead) for c in self._n])

    @property
    def den(self) -> Polynomial:
        lead = self._d[-1]
        return Polynomial(_Q, [Fraction(c, lead) for c in self._d])

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return RationalFunction._from_integer([other.numerator], [other.denominator])
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        # a/b + c/d with g = gcd(b, d): only the factor g can cancel
        g, b1, d1 = _zgcd(self._d, other._d)
        t = _zadd(_zmul(self._n, d1), _zmul(other._n, b1))
        if len(g) == 1:
            return RationalFunction._from_integer(t, _zmul(self._d, d1), coprime=True)
        _, t, g1 = _zgcd(t, g)
        return RationalFunction._from_integer(t, _zmul(_zmul(b1, d1), g1), coprime=True)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._from_integer(_zneg(self._n), self._d)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        # cross-cancel first; the products are then coprime
        _, a, d = _zgcd(self._n, other._d)
        _, c, b = _zgcd(other._n, self._d)
        return RationalFunction._from_integer(_zmul(a, c), _zmul(b, d), coprime=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other._n:
            raise NotAUnitError("division by zero rational function")
        return RationalFunction._from_integer(_zmul(self._n, other._d), _zmul(self._d, other._n))

    def __pow__(self, n: int):
        result = RationalFunction._from_integer([1], [1])
        for _ in range(n):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self._n

    def __eq__(self, other):
        if isinstance(other, (Polynomial, int, Fraction)):
            other = self._lift(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        return hash((self._n, self._d))

    def __str__(self) -> str:
        if len(self._d) == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def formal_derivative(p: Polynomial) -> Polynomial:
    """``sum k a_k t^(k-1)``."""
    return Polynomial(p.base, _diff(p.coeffs))


def derivative_rational(r: RationalFunction) -> RationalFunction:
    """Quotient rule ``(n' d - n d') / d^2``."""
    n, d = r._n, r._d
    # with g = gcd(d, d'), d = g*d1, d' = g*e: r' = (n' d1 - n e) / (d1^2 g)
    # and the numerator is already coprime to d1
    g, d1, e = _zgcd(d, _diff(d))
    num = _zadd(_zmul(_diff(n), d1), _zneg(_zmul(n, e)))
    _, num, g = _zgcd(num, g)
    return RationalFunction._from_integer(num, _zmul(_zmul(d1, d1), g), coprime=True)


def derivative(x):
    """Formal derivative of a polynomial or rational function."""
    if isinstance(x, RationalFunction):
        return derivative_rational(x)
    return formal_derivative(x)


# --- text form -----------------------------------------------------------------


def parse_polynomial(text: str, base: Ring) -> Polynomial:
    """Parse ``c0 + c1*t + c2*t^2 + ...`` (any expression in ``t``)."""

    def const(literal):
        return Polynomial.constant(base, base.parse_element(literal).value)

    return evaluate(parse_ast(text, const, var="t"), Polynomial.t(base))


def _split_quotient(text: str):
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0 and text[i - 1 : i].isspace():
            return text[:i], text[i + 1 :]
    return text, None


def parse_rational(text: str, base: Ring) -> RationalFunction:
    """Parse ``num / den``; the slash must be surrounded by whitespace."""
    num, den = _split_quotient(text)
    r = RationalFunction(parse_polynomial(num, base))
    return r if den is None else r / RationalFunction(parse_polynomial(den, base))


# --- sampling checks -------------------------------------------------------------------


@dataclass(frozen=True)
class Domain:
    """``K[t]`` or, with ``rational=True``, ``K(t)``."""

    base: Ring
    rational: bool = False

    def __str__(self) -> str:
        return f"{self.base}(t)" if self.rational else f"{self.base}[t]"


def parse_domain(text) -> Domain:
    """``Q[t]``, ``GF:3[t]``, ``Q(t)`` and so on."""
    if isinstance(text, Domain):
        return text
    m = re.fullmatch(r"\s*(.+?)(\[t\]|\(t\))\s*", text)
    if not m:
        raise RingSpecError(f"malformed domain {text!r}; expected e.g. Q[t], GF:3[t], Q(t)")
    base = parse_ring_spec(m.group(1))
    return Domain(_base_ok(base), m.group(2) == "(t)")


def _random_poly(rng: random.Random, base: Ring, max_degree: int, bound: int = 100) -> Polynomial:
    deg = rng.randint(0, max_degree)
    if base.kind == "Q":
        cs = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(deg + 1)]
    else:
        cs = [rng.randrange(base.modulus) for _ in range(deg + 1)]
    return Polynomial(base, cs)


def random_element(rng: random.Random, domain: Domain, max_degree: int = 8):
    p = _random_poly(rng, domain.base, max_degree)
    if not domain.rational:
        return p
    den = Polynomial(domain.base)
    while den.is_zero():
        den = _random_poly(rng, domain.base, max_degree)
    return RationalFunction(p, den)


def _d(d, v, key, cache):
    if key not in cache:
        cache[key] = d(v)
    return cache[key]


def _sample(name, domain, samples, max_degree, seed, laws) -> CheckReport:
    if samples < 1:
        raise PreconditionError("samples must be at least 1")
    rng = random.Random(seed)
    for i in range(samples):
        x = random_element(rng, domain, max_degree)
        y = random_element(rng, domain, max_degree)
        cache: dict = {}
        for lhs_fn, rhs_fn in laws:
            lhs, rhs = lhs_fn(x, y, cache), rhs_fn(x, y, cache)
            if lhs != rhs:
                return CheckReport(name, str(domain), FAIL, i + 1, Witness((x, y), lhs, rhs))
    return CheckReport(name, str(domain), PASS, samples)


def sample_check_derivation(
    d: Callable = derivative,
    domain: Domain | str = "Q[t]",
    samples: int = 500,
    max_degree: int = 8,
    seed: int = 0,
) -> CheckReport:
    """Check ``d(x+y) = d(x) + d(y)`` and ``d(xy) = x d(y) + y d(x)`` on random pairs.

    Coefficients are numerators and denominators bounded by 100 in absolute
    value; ``checked`` counts sampled pairs.
    """
    domain = parse_domain(domain)
    laws = [
        (lambda x, y, c: d(x + y), lambda x, y, c: _d(d, x, "x", c) + _d(d, y, "y", c)),
        (lambda x, y, c: d(x * y), lambda x, y, c: x * _d(d, y, "y", c) + y * _d(d, x, "x", c)),
    ]
    return _sample("derivation-sample", domain, samples, max_degree, seed, laws)


def sample_check_corollary(
    d: Callable = derivative,
    lam=1,
    mu=1,
    samples: int = 200,
    seed: int = 0,
    max_degree: int = 8,
    domain: Domain | str = "Q(t)",
) -> CheckReport:
    """Check ``lam*(d(x+y) - d(x) - d(y)) + mu*(d(xy) - x d(y) - y d(x)) = 0`` on random pairs."""
    domain = parse_domain(domain)
    lam, mu = Fraction(lam), Fraction(mu)
    if domain.base.kind != "Q":
        lam, mu = (_residue(c, domain.base.modulus) for c in (lam, mu))
    if lam == 0 or mu == 0:
        raise PreconditionError("lambda and mu must both be nonzero")

    def lhs(x, y, _):
        dx, dy = d(x), d(y)
        cauchy = d(x + y) - dx - dy
        leibniz = d(x * y) - x * dy - y * dx
        return cauchy * lam + leibniz * mu

    return _sample("corollary-sample", domain, samples, max_degree, seed, [(lhs, lambda x, y, _: 0)])

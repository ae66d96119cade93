"""Exact carrier rings: Z_n, GF(p), GF(p^k) and Q.

Elements of a finite ring are identified with their *canonical index*: the
residue for Z_n and GF(p), and for GF(p^k) the constant-first coefficient
vector read as a base-p integer.  Index 0 is the zero element and index 1 the
identity, so ``range(order)`` is the canonical element order.

The vectorised methods (:meth:`Ring.add`, :meth:`Ring.mul`, ...) act on
indices, either plain ``int`` or numpy integer arrays; :class:`RingElement`
is the boxed, ring-aware value used at API boundaries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

import numpy as np

from .errors import (
    ElementError,
    HalfUndefinedError,
    InfiniteRingError,
    MixedRingError,
    NotAUnitError,
    RingSpecError,
)

__all__ = [
    "Ring",
    "RingElement",
    "parse_ring_spec",
    "elements",
    "half",
    "find_irreducible",
    "is_irreducible",
    "is_prime",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` or None when q is not a prime power."""
    if q < 2:
        return None
    p, d = q, 2
    while d * d <= q:
        if q % d == 0:
            p = d
            break
        d += 1
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


# --- polynomials over GF(p), coefficient lists constant-first ---------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        factor = a[-1] * inv_lead % p
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def _monic_polys(p: int, d: int):
    """Monic degree-d polynomials in canonical order (constant-first base-p count)."""
    for n in range(p**d):
        low = [(n // p**j) % p for j in range(d)]
        yield low + [1]


def is_irreducible(poly: tuple[int, ...] | list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree at most half."""
    poly = _trim([c % p for c in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for m in _monic_polys(p, d):
            if not _poly_rem(poly, m, p):
                return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Canonical monic irreducible polynomial of degree ``k`` over GF(p).

    Canonical means the smallest non-leading coefficient vector, read
    constant-first as a base-p integer.  Coefficients are returned
    constant-first including the leading 1.

    >>> find_irreducible(3, 2)
    (1, 0, 1)
    >>> find_irreducible(2, 2)
    (1, 1, 1)
    """
    if not is_prime(p):
        raise RingSpecError(f"{p} is not prime")
    if k < 1:
        raise RingSpecError(f"degree must be >= 1, got {k}")
    for cand in _monic_polys(p, k):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# --- rings -------------------------------------------------------------------


@dataclass(frozen=True)
class Ring:
    """A carrier ring.

    ``kind`` is ``"Z"`` (residues mod ``modulus``), ``"GF"`` (a field of order
    ``modulus**degree`` defined by ``poly``) or ``"Q"``.  Use
    :func:`parse_ring_spec` or the constructors below rather than building
    instances by hand; they validate the invariants.
    """

    kind: str
    modulus: int = 0
    degree: int = 1
    poly: tuple[int, ...] = ()

    # constructors

    @classmethod
    def residues(cls, n: int) -> Ring:
        if n < 2:
            raise RingSpecError(f"Z:{n}: modulus must be at least 2")
        return cls("Z", n)

    @classmethod
    def galois(cls, p: int, k: int = 1, poly=None) -> Ring:
        if not is_prime(p):
            raise RingSpecError(f"{p} is not prime")
        if k < 1:
            raise RingSpecError(f"extension degree must be >= 1, got {k}")
        if poly is None:
            poly = find_irreducible(p, k)
        poly = tuple(int(c) for c in poly)
        if len(poly) != k + 1:
            raise RingSpecError(f"defining polynomial must have degree {k}, got {len(poly) - 1}")
        if any(not 0 <= c < p for c in poly):
            raise RingSpecError(f"polynomial coefficients must lie in [0, {p})")
        if poly[-1] != 1:
            raise RingSpecError("defining polynomial must be monic")
        if not is_irreducible(poly, p):
            raise RingSpecError(f"polynomial {poly} is reducible over GF({p})")
        return cls("GF", p, k, poly)

    @classmethod
    def rationals(cls) -> Ring:
        return cls("Q")

    # derived flags

    @property
    def is_finite(self) -> bool:
        return self.kind != "Q"

    @property
    def is_field(self) -> bool:
        return self.kind in ("GF", "Q") or is_prime(self.modulus)

    @property
    def characteristic(self) -> int:
        return self.modulus

    @property
    def order(self) -> int | None:
        if self.kind == "Q":
            return None
        return self.modulus**self.degree

    @property
    def prime(self) -> int:
        """Order of the prime subfield; only meaningful for fields."""
        return self.modulus

    def __str__(self) -> str:
        if self.kind == "Q":
            return "Q"
        if self.kind == "Z":
            return f"Z:{self.modulus}"
        if self.poly == find_irreducible(self.modulus, self.degree):
            return f"GF:{self.order}"
        return f"GF:{self.order}:poly=" + ",".join(map(str, self.poly))

    def _require_finite(self) -> None:
        if not self.is_finite:
            raise InfiniteRingError(f"{self} is infinite")

    # canonical index <-> coefficient vector

    def digits(self, index: int) -> tuple[int, ...]:
        p = self.modulus
        return tuple((index // p**j) % p for j in range(self.degree))

    def from_digits(self, digits) -> int:
        p = self.modulus
        return sum(int(d) * p**j for j, d in enumerate(digits))

    @cached_property
    def _digit_matrix(self) -> np.ndarray:
        idx = np.arange(self.order)
        return np.stack([(idx // self.modulus**j) % self.modulus for j in range(self.degree)], axis=1)

    def coords(self, index) -> np.ndarray:
        """F_p coordinates (constant-first) of index or index array; last axis has length ``degree``."""
        return self._digit_matrix[np.asarray(index)]

    # lookup tables for extension fields

    def _mulmod(self, a: int, b: int) -> int:
        p, k = self.modulus, self.degree
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_digits(_poly_rem(prod, list(self.poly), p))

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        q, p = self.order, self.modulus
        D = self._digit_matrix
        pw = p ** np.arange(self.degree)
        add = (((D[:, None, :] + D[None, :, :]) % p) * pw).sum(axis=2)
        neg = (((-D) % p) * pw).sum(axis=1)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                mul[a, b] = mul[b, a] = self._mulmod(a, b)
        for t in (add, neg, mul):
            t.setflags(write=False)
        return add, neg, mul

    # vectorised arithmetic on canonical indices

    def add(self, a, b):
        if self.kind == "GF" and self.degree > 1:
            return self._tables[0][a, b]
        return (a + b) % self.modulus

    def neg(self, a):
        if self.kind == "GF" and self.degree > 1:
            return self._tables[1][a]
        return (-a) % self.modulus

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == "GF" and self.degree > 1:
            return self._tables[2][a, b]
        return (a * b) % self.modulus

    def pow(self, a, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = np.ones_like(a) if isinstance(a, np.ndarray) else 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def scale(self, n: int, a):
        """Integer multiple ``n*a``."""
        n %= self.characteristic
        result = np.zeros_like(a) if isinstance(a, np.ndarray) else 0
        for _ in range(n):
            result = self.add(result, a)
        return result

    def inv_index(self, a: int) -> int:
        if self.kind == "Z" or self.degree == 1:
            if gcd(a, self.modulus) != 1:
                raise NotAUnitError(f"{a} is not a unit in {self}")
            return pow(a, -1, self.modulus)
        if a == 0:
            raise NotAUnitError(f"0 is not a unit in {self}")
        return int(self.pow(a, self.order - 2))

    # boxed elements

    def __call__(self, n: int | Fraction) -> RingElement:
        """Image of an integer (or, for Q, a rational) in the ring."""
        if self.kind == "Q":
            return RingElement(self, Fraction(n))
        if isinstance(n, Fraction):
            raise ElementError(f"{n} is not an integer")
        return RingElement(self, int(n) % self.modulus)

    def from_index(self, index: int) -> RingElement:
        self._require_finite()
        index = int(index)
        if not 0 <= index < self.order:
            raise ElementError(f"index {index} outside {self}")
        return RingElement(self, index)

    @property
    def zero(self) -> RingElement:
        return self(0)

    @property
    def one(self) -> RingElement:
        return self(1)

    def elements(self) -> list[RingElement]:
        self._require_finite()
        return [RingElement(self, i) for i in range(self.order)]

    def format_index(self, index: int) -> str:
        if self.kind == "GF" and self.degree > 1:
            return ",".join(map(str, self.digits(int(index))))
        return str(int(index))

    def parse_element(self, text: str) -> RingElement:
        """Parse the element encoding: residue, base-p digits, or ``a/b``.

        Extension-field digit strings may omit trailing zero digits.
        """
        text = text.strip()
        if self.kind == "Q":
            if not re.fullmatch(r"-?\d+(/\d+)?", text):
                raise ElementError(f"{text!r} is not a rational")
            value = Fraction(text)
            return RingElement(self, value)
        if self.kind == "GF" and self.degree > 1:
            if not re.fullmatch(r"\d+(,\d+)*", text):
                raise ElementError(f"{text!r} is not an element of {self}")
            digits = [int(d) for d in text.split(",")]
            if len(digits) > self.degree or any(d >= self.modulus for d in digits):
                raise ElementError(f"{text!r} is not an element of {self}")
            return RingElement(self, self.from_digits(digits))
        if not re.fullmatch(r"\d+", text) or int(text) >= self.modulus:
            raise ElementError(f"{text!r} is not an element of {self}")
        return RingElement(self, int(text))


@dataclass(frozen=True)
class RingElement:
    """An element of a :class:`Ring` in canonical form."""

    ring: Ring
    value: int | Fraction

    def _coerce(self, other) -> RingElement:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise MixedRingError(f"cannot combine elements of {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def _op(self, other, name):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.ring.kind == "Q":
            a, b = self.value, other.value
            value = {"add": a + b, "sub": a - b, "mul": a * b}[name]
        else:
            value = int(getattr(self.ring, name)(self.value, other.value))
        return RingElement(self.ring, value)

    def __add__(self, other):
        return self._op(other, "add")

    def __sub__(self, other):
        return self._op(other, "sub")

    def __mul__(self, other):
        return self._op(other, "mul")

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        if self.ring.kind == "Q":
            return RingElement(self.ring, -self.value)
        return RingElement(self.ring, int(self.ring.neg(self.value)))

    def __pow__(self, n: int):
        if self.ring.kind == "Q":
            return RingElement(self.ring, self.value**n)
        if n < 0:
            return self.inv() ** (-n)
        return RingElement(self.ring, int(self.ring.pow(self.value, n)))

    def inv(self) -> RingElement:
        if self.ring.kind == "Q":
            if self.value == 0:
                raise NotAUnitError("0 is not a unit in Q")
            return RingElement(self.ring, 1 / self.value)
        return RingElement(self.ring, self.ring.inv_index(self.value))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        if self.ring.kind == "Q":
            return str(self.value)
        return self.ring.format_index(self.value)

    def __repr__(self) -> str:
        return f"<{self} in {self.ring}>"


_SPEC_RE = re.compile(r"(Z|GF):(\d+)(?::poly=(\d+(?:,\d+)*))?")


def parse_ring_spec(text: str) -> Ring:
    """Parse ``Z:<n>``, ``GF:<q>``, ``GF:<q>:poly=<c0,...,ck>`` or ``Q``.

    >>> str(parse_ring_spec("GF:9:poly=1,0,1"))
    'GF:9'
    """
    text = text.strip()
    if text == "Q":
        return Ring.rationals()
    m = _SPEC_RE.fullmatch(text)
    if not m:
        raise RingSpecError(f"malformed ring spec {text!r}")
    kind, n, poly = m.group(1), int(m.group(2)), m.group(3)
    if kind == "Z":
        if poly is not None:
            raise RingSpecError("Z:<n> takes no polynomial")
        return Ring.residues(n)
    pk = _prime_power(n)
    if pk is None:
        raise RingSpecError(f"{n} is not a prime power")
    p, k = pk
    coeffs = None if poly is None else [int(c) for c in poly.split(",")]
    return Ring.galois(p, k, coeffs)


def elements(ring: Ring) -> list[RingElement]:
    """All elements of a finite ring in canonical order."""
    return ring.elements()


def half(ring: Ring) -> RingElement:
    """The element h with h + h = 1."""
    if ring.kind == "Q":
        return ring(Fraction(1, 2))
    if ring.characteristic % 2 == 0:
        raise HalfUndefinedError(f"2 is not a unit in {ring}")
    return ring.one / ring(2)

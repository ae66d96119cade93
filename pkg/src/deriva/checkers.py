"""Exhaustive, witness-producing verifiers.

Each checker evaluates both sides of an identity on the whole tuple space of
a finite carrier and reports the first violation in canonical lexicographic
order (first coordinate slowest).  By default ``checked`` counts tuples up to
and including the witness, as an early-exit scan would; pass ``count=True``
to report the full tuple count and the number of violations instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MixedRingError, PreconditionError
from .ring import Ring, RingElement, half
from .tables import FunctionTable, TwoPlaceTable, cauchy_diff, leibniz_diff

__all__ = [
    "Witness",
    "CheckReport",
    "check_additive",
    "check_leibniz",
    "check_derivation",
    "check_equation_E",
    "check_corollary",
    "check_cocycle_system",
    "check_eta",
    "check_trace_identity",
]

PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not-applicable"


@dataclass(frozen=True)
class Witness:
    tuple: tuple
    lhs: object
    rhs: object

    def to_dict(self) -> dict:
        return {"tuple": [str(x) for x in self.tuple], "lhs": str(self.lhs), "rhs": str(self.rhs)}


@dataclass(frozen=True)
class CheckReport:
    check: str
    ring: str
    verdict: str
    checked: int
    witness: Witness | None = None
    sub_reports: tuple[CheckReport, ...] = ()
    violations: int | None = None

    def __post_init__(self):
        if (self.verdict == FAIL) != (self.witness is not None):
            raise ValueError("a report carries a witness exactly when it fails")

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def __bool__(self) -> bool:
        return self.passed

    def sub(self, name: str) -> CheckReport:
        return next(r for r in self.sub_reports if r.check == name)

    def to_dict(self) -> dict:
        out = {"check": self.check, "ring": self.ring, "verdict": self.verdict, "checked": str(self.checked)}
        if self.violations is not None:
            out["violations"] = str(self.violations)
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.sub_reports:
            out["sub_reports"] = [r.to_dict() for r in self.sub_reports]
        return out

    def summary(self) -> str:
        line = f"{self.check} over {self.ring}: {self.verdict} ({self.checked} checked)"
        if self.witness is not None:
            w = self.witness
            line += f"; witness ({', '.join(map(str, w.tuple))}): {w.lhs} != {w.rhs}"
        return line


def _scan(name: str, ring: Ring, lhs, rhs, count: bool = False) -> CheckReport:
    lhs, rhs = np.broadcast_arrays(lhs, rhs)
    bad = lhs != rhs
    total = bad.size
    nbad = int(bad.sum())
    if nbad == 0:
        return CheckReport(name, str(ring), PASS, total, violations=0 if count else None)
    first = int(np.flatnonzero(bad.ravel())[0])
    pos = np.unravel_index(first, bad.shape)
    witness = Witness(
        tuple(ring.from_index(int(i)) for i in pos),
        ring.from_index(int(lhs[pos])),
        ring.from_index(int(rhs[pos])),
    )
    if count:
        return CheckReport(name, str(ring), FAIL, total, witness, violations=nbad)
    return CheckReport(name, str(ring), FAIL, first + 1, witness)


def _combine(name: str, ring: Ring, subs: list[CheckReport]) -> CheckReport:
    failed = [r for r in subs if r.verdict == FAIL]
    witness = failed[0].witness if failed else None
    return CheckReport(
        name, str(ring), FAIL if failed else PASS, sum(r.checked for r in subs), witness, tuple(subs)
    )


def _axes(ring: Ring, n: int):
    idx = np.arange(ring.order)
    return [idx.reshape([-1 if i == j else 1 for j in range(n)]) for i in range(n)]


def _ring_of(*tables) -> Ring:
    ring = tables[0].ring
    for t in tables[1:]:
        if t.ring != ring:
            raise MixedRingError(f"tables live over {ring} and {t.ring}")
    return ring


def check_additive(f: FunctionTable, count: bool = False) -> CheckReport:
    R, v = f.ring, f.values
    x, y = _axes(R, 2)
    return _scan("additive", R, v[R.add(x, y)], R.add(v[x], v[y]), count)


def check_leibniz(f: FunctionTable, count: bool = False) -> CheckReport:
    R, v = f.ring, f.values
    x, y = _axes(R, 2)
    return _scan("leibniz", R, v[R.mul(x, y)], R.add(R.mul(x, v[y]), R.mul(y, v[x])), count)


def check_derivation(f: FunctionTable, count: bool = False) -> CheckReport:
    return _combine("derivation", f.ring, [check_additive(f, count), check_leibniz(f, count)])


def check_equation_E(f: FunctionTable, g: FunctionTable, count: bool = False) -> CheckReport:
    """``f(x+y) - f(x) - f(y) == g(xy) - x g(y) - y g(x)`` for all pairs."""
    R = _ring_of(f, g)
    return _scan("equation-E", R, cauchy_diff(f).values, leibniz_diff(g).values, count)


def check_corollary(f: FunctionTable, lam: RingElement, mu: RingElement, count: bool = False) -> CheckReport:
    """``lam * C_f + mu * D_f == 0`` for all pairs; both scalars must be nonzero."""
    R = f.ring
    lam, mu = (s if isinstance(s, RingElement) else R(s) for s in (lam, mu))
    if lam.ring != R or mu.ring != R:
        raise MixedRingError("scalars and table must share a ring")
    if lam.is_zero() or mu.is_zero():
        raise PreconditionError("lambda and mu must both be nonzero")
    lhs = R.add(R.mul(lam.value, cauchy_diff(f).values), R.mul(mu.value, leibniz_diff(f).values))
    return _scan("corollary", R, lhs, 0, count)


def check_alpha(F: TwoPlaceTable, name: str = "alpha", count: bool = False) -> CheckReport:
    """Symmetry ``F(a, b) == F(b, a)``."""
    return _scan(name, F.ring, F.values, F.values.T, count)


def check_beta(F: TwoPlaceTable, count: bool = False) -> CheckReport:
    """Cocycle identity ``F(a+b, c) + F(a, b) == F(a, b+c) + F(b, c)``."""
    R, T = F.ring, F.values
    a, b, c = _axes(R, 3)
    return _scan("beta", R, R.add(T[R.add(a, b), c], T[a, b]), R.add(T[a, R.add(b, c)], T[b, c]), count)


def check_delta(G: TwoPlaceTable, count: bool = False) -> CheckReport:
    """``c G(a, b) + G(ab, c) == a G(b, c) + G(a, bc)``."""
    R, T = G.ring, G.values
    a, b, c = _axes(R, 3)
    lhs = R.add(R.mul(c, T[a, b]), T[R.mul(a, b), c])
    rhs = R.add(R.mul(a, T[b, c]), T[a, R.mul(b, c)])
    return _scan("delta", R, lhs, rhs, count)


def check_epsilon(F: TwoPlaceTable, G: TwoPlaceTable, count: bool = False) -> CheckReport:
    """``F(ac, bc) - c F(a, b) == G(a+b, c) - G(a, c) - G(b, c)``."""
    R = _ring_of(F, G)
    TF, TG = F.values, G.values
    a, b, c = _axes(R, 3)
    lhs = R.sub(TF[R.mul(a, c), R.mul(b, c)], R.mul(c, TF[a, b]))
    rhs = R.sub(TG[R.add(a, b), c], R.add(TG[a, c], TG[b, c]))
    return _scan("epsilon", R, lhs, rhs, count)


def check_zeta(F: TwoPlaceTable) -> CheckReport:
    """``sum_{i=1..p} F(1, i*1) == 0`` with p the characteristic."""
    R = F.ring
    p = R.characteristic
    if p == 0:
        return CheckReport("zeta", str(R), NOT_APPLICABLE, 0)
    total = 0
    for i in range(1, p + 1):
        total = R.add(total, int(F.values[1, R(i).value]))
    if total == 0:
        return CheckReport("zeta", str(R), PASS, 1)
    return CheckReport("zeta", str(R), FAIL, 1, Witness((), R.from_index(int(total)), R.zero))


def check_cocycle_system(F: TwoPlaceTable, G: TwoPlaceTable, count: bool = False) -> CheckReport:
    """All six compatibility equations for the pair ``(F, G)``.

    The sub-reports are named ``alpha`` .. ``zeta``; the top-level witness is
    that of the first failing equation in that order.
    """
    R = _ring_of(F, G)
    subs = [
        check_alpha(F, "alpha", count),
        check_beta(F, count),
        check_alpha(G, "gamma", count),
        check_delta(G, count),
        check_epsilon(F, G, count),
        check_zeta(F),
    ]
    return _combine("cocycle-system", R, subs)


def check_eta(F: TwoPlaceTable, count: bool = False) -> CheckReport:
    """Homogeneity ``F(ac, bc) == c F(a, b)`` over all triples."""
    R, T = F.ring, F.values
    a, b, c = _axes(R, 3)
    return _scan("eta", R, T[R.mul(a, c), R.mul(b, c)], R.mul(c, T[a, b]), count)


def trace(alpha: FunctionTable) -> FunctionTable:
    """``x -> alpha(x^2)/2 - x alpha(x)``."""
    h = half(alpha.ring)
    return h * alpha.compose_square() - alpha.times_identity()


def check_trace_identity(alpha: FunctionTable, count: bool = False) -> CheckReport:
    """For additive ``alpha``: its Leibniz difference is the Cauchy difference of :func:`trace`."""
    additive = check_additive(alpha)
    if not additive.passed:
        raise PreconditionError("trace identity needs an additive function", report=additive)
    T = trace(alpha)
    return _scan("trace-identity", alpha.ring, leibniz_diff(alpha).values, cauchy_diff(T).values, count)

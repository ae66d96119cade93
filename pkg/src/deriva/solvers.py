"""Solution sets of the single-equation characterization and its decomposition.

Two independent routes compute the solutions ``(f, g)`` of::

    f(x+y) - f(x) - f(y) = g(xy) - x g(y) - y g(x)

over a finite field: :func:`enumerate_bruteforce` scans every candidate
table, while :func:`solve_linear_solutions` writes the equation as a linear
system over the prime field in the coordinates of all table values.  The
remaining solvers reuse the linear encoding to split a solution into two
additive maps and a Leibniz map, to recover ``f`` from its difference pair,
and to list additive maps and derivations.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .checkers import (
    check_additive,
    check_cocycle_system,
    check_equation_E,
    check_eta,
    check_leibniz,
    trace,
)
from .errors import (
    BudgetExceededError,
    HalfUndefinedError,
    InvariantViolationError,
    MixedRingError,
    NotAFieldError,
    NotASolutionError,
    PreconditionError,
)
from .linalg import LinearSystemFp, rref_fp, solve_linear_fp
from .ring import Ring, RingElement, half
from .tables import FunctionTable, TwoPlaceTable, cauchy_diff, leibniz_diff

__all__ = [
    "E",
    "Corollary",
    "SolutionSet",
    "Decomposition",
    "DEFAULT_BUDGET",
    "LIST_CAP",
    "enumerate_bruteforce",
    "solve_linear_solutions",
    "decompose",
    "compose_solution",
    "represent_cocycle",
    "enumerate_additive",
    "enumerate_derivations",
    "enumerate_leibniz",
]

E = "E"
DEFAULT_BUDGET = 2**32
LIST_CAP = 1024


@dataclass(frozen=True)
class Corollary:
    """The single-function equation ``lam * C_f + mu * D_f = 0``."""

    lam: RingElement
    mu: RingElement

    def __str__(self) -> str:
        return f"corollary(lambda={self.lam},mu={self.mu})"


def _equation_name(equation) -> str:
    return str(equation)


def _check_equation(ring: Ring, equation):
    if equation == E:
        return
    if not isinstance(equation, Corollary):
        raise PreconditionError(f"unknown equation {equation!r}")
    if equation.lam.ring != ring or equation.mu.ring != ring:
        raise MixedRingError("lambda and mu must lie in the carrier")
    if equation.lam.is_zero() or equation.mu.is_zero():
        raise PreconditionError("lambda and mu must both be nonzero")


def _require_finite_field(ring: Ring) -> None:
    if not (ring.is_finite and ring.is_field):
        raise NotAFieldError(f"{ring} is not a finite field")


@dataclass(frozen=True)
class SolutionSet:
    """All solutions of an equation over a finite field.

    Each solution is a tuple of tables: ``(f, g)`` for ``E``, ``(f,)`` for a
    corollary equation.  ``basis`` spans the solution space over the prime
    field; ``solutions`` lists it explicitly when ``count <= LIST_CAP``.
    """

    ring: Ring
    equation: str
    method: str
    count: int
    basis: tuple[tuple[FunctionTable, ...], ...]
    solutions: tuple[tuple[FunctionTable, ...], ...] | None = None
    notes: tuple[str, ...] = ()

    @property
    def nullity(self) -> int:
        return len(self.basis)

    def as_set(self) -> set[tuple[FunctionTable, ...]]:
        if self.solutions is None:
            raise ValueError(f"solution list omitted ({self.count} > cap)")
        return set(self.solutions)

    def to_dict(self) -> dict:
        out = {
            "ring": str(self.ring),
            "equation": self.equation,
            "method": self.method,
            "count": str(self.count),
            "nullity": str(self.nullity),
            "basis": [[t.to_strings() for t in sol] for sol in self.basis],
        }
        if self.solutions is not None:
            out["list"] = [[t.to_strings() for t in sol] for sol in self.solutions]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# --- prime-field coordinates ----------------------------------------------------


class _Coords:
    """Linear encoding of function tables as vectors over the prime field.

    Slot ``s`` holds one table; the value at element ``x`` occupies
    coordinates ``(s*q + x)*k ... (s*q + x)*k + k - 1``.
    """

    def __init__(self, ring: Ring, slots: int):
        _require_finite_field(ring)
        self.ring = ring
        self.p, self.k, self.q = ring.prime, ring.degree, ring.order
        self.slots = slots
        self.n = slots * self.q * self.k
        idx = np.arange(self.q)
        basis = self.p ** np.arange(self.k)
        # mats[c][:, j] = coords(c * t^j): multiplication by c as a k x k matrix
        self.mats = np.transpose(ring.coords(ring.mul(idx[:, None], basis[None, :])), (0, 2, 1))
        self.eye = np.eye(self.k, dtype=np.int64)
        self.blocks: list[np.ndarray] = []
        self.rhs: list[np.ndarray] = []

    def add_equations(self, terms, rhs=None):
        """Append one vector equation per row of the index arrays.

        ``terms`` is a list of ``(slot, element_indices, matrices)`` meaning
        ``sum matrices[i] @ table_slot(element_indices[i])``; ``matrices`` is
        a ``(m, k, k)`` array or a single ``(k, k)`` matrix.
        """
        m = len(terms[0][1])
        A = np.zeros((m, self.k, self.n), dtype=np.int64)
        rows = np.arange(m)[:, None, None]
        r = np.arange(self.k)[None, :, None]
        for slot, where, mats in terms:
            cols = ((slot * self.q + np.asarray(where)) * self.k)[:, None, None] + np.arange(self.k)[None, None, :]
            mats = np.broadcast_to(mats, (m, self.k, self.k))
            np.add.at(A, (rows, r, cols), mats)
        self.blocks.append(A.reshape(m * self.k, self.n) % self.p)
        if rhs is None:
            self.rhs.append(np.zeros(m * self.k, dtype=np.int64))
        else:
            self.rhs.append(self.ring.coords(np.asarray(rhs)).reshape(-1))

    def system(self) -> LinearSystemFp:
        return LinearSystemFp(np.vstack(self.blocks), np.concatenate(self.rhs), self.p)

    def pairs(self):
        x, y = np.divmod(np.arange(self.q * self.q), self.q)
        return x, y

    def to_tables(self, vec) -> tuple[FunctionTable, ...]:
        digits = np.asarray(vec).reshape(self.slots, self.q, self.k) % self.p
        vals = (digits * self.p ** np.arange(self.k)).sum(axis=2)
        return tuple(FunctionTable(self.ring, v) for v in vals)

    def to_vector(self, tables) -> np.ndarray:
        return np.concatenate([self.ring.coords(t.values).reshape(-1) for t in tables])

    # constraint families

    def additive(self, slot: int, rhs=None):
        """``t(x+y) - t(x) - t(y) = rhs(x, y)``."""
        R, I = self.ring, self.eye
        x, y = self.pairs()
        self.add_equations([(slot, R.add(x, y), I), (slot, x, -I), (slot, y, -I)], rhs)

    def leibniz(self, slot: int, rhs=None):
        """``t(xy) - x t(y) - y t(x) = rhs(x, y)``."""
        R, I = self.ring, self.eye
        x, y = self.pairs()
        self.add_equations([(slot, R.mul(x, y), I), (slot, y, -self.mats[x]), (slot, x, -self.mats[y])], rhs)


def _span(coords: _Coords, particular, basis, cap: int | None = None):
    """All vectors ``particular + span(basis)`` in canonical table order."""
    p = coords.p
    count = p ** len(basis)
    if cap is not None and count > cap:
        return None
    B = np.array(basis, dtype=np.int64).reshape(len(basis), coords.n)
    out = []
    for combo in itertools.product(range(p), repeat=len(basis)):
        out.append(coords.to_tables((particular + np.asarray(combo, dtype=np.int64) @ B) % p))
    out.sort(key=lambda sol: tuple(t.key() for t in sol))
    return out


def _smallest_solution(coords: _Coords, solution):
    """Lexicographically smallest table in an affine solution space."""
    if solution.nullity == 0:
        return coords.to_tables(solution.particular)
    if solution.nullity > 16:
        raise InvariantViolationError(f"solution space of dimension {solution.nullity} is too large to scan")
    return _span(coords, solution.particular, solution.basis)[0]


# --- the two census routes --------------------------------------------------------


def _budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get("DERIVA_BUDGET", DEFAULT_BUDGET))


def _table_block(q: int, start: int, stop: int) -> np.ndarray:
    """Tables ``start..stop-1`` in lexicographic order (entry 0 most significant)."""
    n = np.arange(start, stop, dtype=np.int64)
    return (n[:, None] // q ** np.arange(q - 1, -1, -1, dtype=np.int64)) % q


def _differences(ring: Ring, tabs: np.ndarray, kind: str) -> np.ndarray:
    """Cauchy or Leibniz differences of a batch of tables, flattened to ``(B, q*q)``."""
    q = ring.order
    x, y = np.divmod(np.arange(q * q), q)
    if kind == "cauchy":
        out = ring.sub(tabs[:, ring.add(x, y)], ring.add(tabs[:, x], tabs[:, y]))
    else:
        out = ring.sub(tabs[:, ring.mul(x, y)], ring.add(ring.mul(x, tabs[:, y]), ring.mul(y, tabs[:, x])))
    return out


_CHUNK = 64


def _scan_pairs(ring: Ring, start: int, stop: int) -> list[tuple[int, int]]:
    """Indices ``(f, g)`` with ``f`` in ``[start, stop)`` whose differences agree."""
    q = ring.order
    D = _differences(ring, _table_block(q, 0, q**q), "leibniz")
    hits = []
    for lo in range(start, stop, _CHUNK):
        hi = min(lo + _CHUNK, stop)
        C = _differences(ring, _table_block(q, lo, hi), "cauchy")
        match = (C[:, None, :] == D[None, :, :]).all(axis=2)
        for fi, gi in zip(*np.nonzero(match)):
            hits.append((lo + int(fi), int(gi)))
    return hits


def _scan_single(ring: Ring, lam: int, mu: int, start: int, stop: int) -> list[int]:
    q = ring.order
    hits = []
    step = max(1, 2**16 // q)
    for lo in range(start, stop, step):
        hi = min(lo + step, stop)
        tabs = _table_block(q, lo, hi)
        lhs = ring.add(ring.mul(lam, _differences(ring, tabs, "cauchy")), ring.mul(mu, _differences(ring, tabs, "leibniz")))
        hits.extend(lo + int(i) for i in np.flatnonzero(~lhs.any(axis=1)))
    return hits


def _partition(total: int, parts: int) -> list[tuple[int, int]]:
    bounds = np.linspace(0, total, parts + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _run(fn, ring, extra, total, jobs):
    ranges = _partition(total, max(1, jobs))
    if jobs <= 1 or len(ranges) == 1:
        return [hit for a, b in ranges for hit in fn(ring, *extra, a, b)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, ring, *extra, a, b) for a, b in ranges]
        return [hit for fut in futures for hit in fut.result()]


def _basis_from(coords: _Coords, solutions) -> tuple[tuple[FunctionTable, ...], ...]:
    if not solutions:
        return ()
    vecs = np.array([coords.to_vector(sol) for sol in solutions])
    R, pivots = rref_fp(vecs, coords.p)
    return tuple(coords.to_tables(R[i]) for i in range(len(pivots)))


def _notes(ring: Ring) -> tuple[str, ...]:
    return ("char-2: decomposition unavailable",) if ring.characteristic == 2 else ()


def enumerate_bruteforce(
    ring: Ring, equation=E, *, budget: int | None = None, jobs: int = 1, cap: int = LIST_CAP
) -> SolutionSet:
    """Exhaustive scan over every candidate table (or pair of tables).

    The cost bound is ``candidates * q**2`` pair evaluations and must not
    exceed ``budget`` (default ``DERIVA_BUDGET`` or 2**32).  Output does not
    depend on ``jobs``.
    """
    _require_finite_field(ring)
    _check_equation(ring, equation)
    q = ring.order
    single = equation != E
    candidates = q**q if single else q ** (2 * q)
    needed = candidates * q * q
    limit = _budget(budget)
    if needed > limit:
        raise BudgetExceededError(needed, limit)
    coords = _Coords(ring, 1 if single else 2)
    if single:
        hits = _run(_scan_single, ring, (equation.lam.value, equation.mu.value), q**q, jobs)
        sols = [(FunctionTable(ring, _table_block(q, i, i + 1)[0]),) for i in hits]
    else:
        hits = _run(_scan_pairs, ring, (), q**q, jobs)
        sols = [
            (FunctionTable(ring, _table_block(q, fi, fi + 1)[0]), FunctionTable(ring, _table_block(q, gi, gi + 1)[0]))
            for fi, gi in hits
        ]
    return SolutionSet(
        ring,
        _equation_name(equation),
        "bruteforce",
        len(sols),
        _basis_from(coords, sols),
        tuple(sols) if len(sols) <= cap else None,
        _notes(ring),
    )


def _equation_system(ring: Ring, equation) -> _Coords:
    c = _Coords(ring, 1 if equation != E else 2)
    R, I, M = ring, c.eye, c.mats
    x, y = c.pairs()
    if equation == E:
        c.add_equations(
            [(0, R.add(x, y), I), (0, x, -I), (0, y, -I), (1, R.mul(x, y), -I), (1, y, M[x]), (1, x, M[y])]
        )
    else:
        lam, mu = equation.lam.value, equation.mu.value
        c.add_equations(
            [
                (0, R.add(x, y), M[lam]),
                (0, x, -M[lam]),
                (0, y, -M[lam]),
                (0, R.mul(x, y), M[mu]),
                (0, y, -M[R.mul(mu, x)]),
                (0, x, -M[R.mul(mu, y)]),
            ]
        )
    return c


def solve_linear_solutions(ring: Ring, equation=E, *, cap: int = LIST_CAP) -> SolutionSet:
    """Solution space as the nullspace of the prime-field encoding; count is ``p**nullity``."""
    _require_finite_field(ring)
    _check_equation(ring, equation)
    coords = _equation_system(ring, equation)
    sol = solve_linear_fp(coords.system())
    count = coords.p ** sol.nullity
    listed = _span(coords, sol.particular, sol.basis, cap)
    return SolutionSet(
        ring,
        _equation_name(equation),
        "linear",
        count,
        tuple(coords.to_tables(v) for v in sol.basis),
        None if listed is None else tuple(listed),
        _notes(ring),
    )


# --- decomposition ------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """``f = beta + trace(alpha)`` and ``g = phi + alpha``."""

    alpha: FunctionTable
    beta: FunctionTable
    phi: FunctionTable

    def reconstruct(self) -> tuple[FunctionTable, FunctionTable]:
        return compose_solution(self.alpha, self.beta, self.phi)

    def to_dict(self) -> dict:
        return {
            "ring": str(self.alpha.ring),
            "alpha": self.alpha.to_strings(),
            "beta": self.beta.to_strings(),
            "phi": self.phi.to_strings(),
        }


def compose_solution(alpha: FunctionTable, beta: FunctionTable, phi: FunctionTable):
    """The pair ``(beta + alpha(x^2)/2 - x alpha(x), phi + alpha)``."""
    return beta + trace(alpha), phi + alpha


def _verify_decomposition(dec: Decomposition, f: FunctionTable, g: FunctionTable) -> None:
    problems = []
    if not check_additive(dec.alpha):
        problems.append("alpha not additive")
    if not check_additive(dec.beta):
        problems.append("beta not additive")
    if not check_leibniz(dec.phi):
        problems.append("phi not Leibniz")
    if dec.reconstruct() != (f, g):
        problems.append("reconstruction differs from input")
    if problems:
        raise InvariantViolationError("decomposition failed verification: " + ", ".join(problems))


def decompose(f: FunctionTable, g: FunctionTable) -> Decomposition:
    """Split a solution ``(f, g)`` into ``(alpha, beta, phi)``.

    ``phi`` solves the joint system "phi is Leibniz and g - phi is additive";
    among several solutions the lexicographically smallest table is taken.
    """
    if f.ring != g.ring:
        raise MixedRingError(f"f over {f.ring}, g over {g.ring}")
    ring = f.ring
    _require_finite_field(ring)
    half(ring)
    report = check_equation_E(f, g)
    if not report:
        raise NotASolutionError("(f, g) does not solve the equation", report)
    Cg = cauchy_diff(g)
    eta = check_eta(Cg)
    if not eta:
        raise InvariantViolationError("Cauchy difference of g is not homogeneous", report=eta)

    coords = _Coords(ring, 1)
    coords.leibniz(0)
    coords.additive(0, rhs=Cg.values.reshape(-1))
    sol = solve_linear_fp(coords.system())
    if not sol.consistent:
        raise InvariantViolationError("no Leibniz phi with g - phi additive")
    (phi,) = _smallest_solution(coords, sol)
    alpha = g - phi
    beta = f - trace(alpha)
    dec = Decomposition(alpha, beta, phi)
    _verify_decomposition(dec, f, g)
    return dec


def represent_cocycle(F: TwoPlaceTable, G: TwoPlaceTable) -> FunctionTable:
    """A function ``f`` with ``cauchy_diff(f) == F`` and ``leibniz_diff(f) == G``."""
    if F.ring != G.ring:
        raise MixedRingError(f"F over {F.ring}, G over {G.ring}")
    ring = F.ring
    _require_finite_field(ring)
    if ring.characteristic == 2:
        raise HalfUndefinedError(f"representation is not supported in characteristic 2 ({ring})")
    report = check_cocycle_system(F, G)
    if not report:
        raise NotASolutionError("(F, G) fails the compatibility system", report)
    coords = _Coords(ring, 1)
    coords.additive(0, rhs=F.values.reshape(-1))
    coords.leibniz(0, rhs=G.values.reshape(-1))
    sol = solve_linear_fp(coords.system())
    if not sol.consistent:
        raise InvariantViolationError("compatible pair (F, G) admits no representing function")
    (f,) = _smallest_solution(coords, sol)
    if cauchy_diff(f) != F or leibniz_diff(f) != G:
        raise InvariantViolationError("recovered function does not represent (F, G)")
    return f


# --- function classes -----------------------------------------------------------------


def enumerate_additive(ring: Ring) -> list[FunctionTable]:
    """Every additive map: one per ``k x k`` matrix over the prime field."""
    _require_finite_field(ring)
    p, k = ring.prime, ring.degree
    X = ring.coords(np.arange(ring.order))
    weights = p ** np.arange(k)
    out = []
    for entries in itertools.product(range(p), repeat=k * k):
        M = np.array(entries, dtype=np.int64).reshape(k, k)
        out.append(FunctionTable(ring, ((X @ M.T) % p) @ weights))
    return sorted(out)


def _nullspace_tables(ring: Ring, build) -> list[FunctionTable]:
    coords = _Coords(ring, 1)
    build(coords)
    sol = solve_linear_fp(coords.system())
    return [t for (t,) in _span(coords, sol.particular, sol.basis)]


def enumerate_derivations(ring: Ring) -> list[FunctionTable]:
    """All additive Leibniz maps, from the nullspace of both constraint families."""

    def build(c):
        c.additive(0)
        c.leibniz(0)

    return _nullspace_tables(ring, build)


def enumerate_leibniz(ring: Ring) -> list[FunctionTable]:
    """All maps satisfying the product rule (additivity not required)."""
    return _nullspace_tables(ring, lambda c: c.leibniz(0))

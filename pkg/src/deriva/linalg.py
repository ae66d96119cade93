"""Gaussian elimination over the prime field GF(p)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError
from .ring import is_prime

__all__ = ["LinearSystemFp", "LinearSolution", "solve_linear_fp", "rref_fp", "rank_fp", "in_span_fp"]


@dataclass(frozen=True)
class LinearSystemFp:
    """``matrix @ x == rhs`` over GF(p); entries are reduced on construction."""

    matrix: np.ndarray
    rhs: np.ndarray
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DimensionError(f"modulus {self.p} is not prime")
        A = np.atleast_2d(np.asarray(self.matrix, dtype=np.int64)) % self.p
        b = np.asarray(self.rhs, dtype=np.int64).reshape(-1) % self.p
        if A.shape[0] != b.shape[0]:
            raise DimensionError(f"matrix has {A.shape[0]} rows but rhs has {b.shape[0]} entries")
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "rhs", b)

    @classmethod
    def homogeneous(cls, matrix, p: int) -> LinearSystemFp:
        matrix = np.atleast_2d(np.asarray(matrix, dtype=np.int64))
        return cls(matrix, np.zeros(matrix.shape[0], dtype=np.int64), p)

    @property
    def unknowns(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class LinearSolution:
    particular: np.ndarray | None
    basis: list[np.ndarray] = field(default_factory=list)
    rank: int = 0

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def nullity(self) -> int:
        return len(self.basis)


def rref_fp(M: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p.

    Pivots are searched column by column in the first ``ncols`` columns; the
    pivot row is the first remaining row with a nonzero entry.
    """
    R = np.array(M, dtype=np.int64) % p
    m, n = R.shape
    ncols = n if ncols is None else ncols
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == m:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        r = row + nz[0]
        if r != row:
            R[[row, r]] = R[[r, row]]
        R[row] = R[row] * pow(int(R[row, col]), -1, p) % p
        others = np.flatnonzero(R[:, col])
        others = others[others != row]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, col], R[row])) % p
        pivots.append(col)
        row += 1
    return R, pivots


def solve_linear_fp(system: LinearSystemFp) -> LinearSolution:
    """Particular solution (or None) and a nullspace basis of ``system``.

    Each basis vector sets one free variable to 1 and the other free
    variables to 0, so the basis is deterministic.
    """
    A, b, p = system.matrix, system.rhs, system.p
    m, n = A.shape
    R, pivots = rref_fp(np.hstack([A, b[:, None]]), p, ncols=n)
    rank = len(pivots)
    if np.any(R[rank:, n]):
        particular = None
    else:
        particular = np.zeros(n, dtype=np.int64)
        particular[pivots] = R[:rank, n]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for c in free:
        v = np.zeros(n, dtype=np.int64)
        v[c] = 1
        v[pivots] = (-R[:rank, c]) % p
        basis.append(v)
    return LinearSolution(particular, basis, rank)


def rank_fp(vectors, p: int) -> int:
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
    if vectors.size == 0:
        return 0
    return len(rref_fp(vectors, p)[1])


def in_span_fp(v, basis, p: int) -> bool:
    if len(basis) == 0:
        return not np.any(np.asarray(v) % p)
    return rank_fp(np.vstack([basis, v]), p) == rank_fp(basis, p)

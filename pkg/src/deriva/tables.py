"""Dense function tables on finite carriers and the two difference operators.

A :class:`FunctionTable` stores ``f(x)`` for every element ``x`` in canonical
order as an array of canonical indices; a :class:`TwoPlaceTable` stores
``F(x, y)`` row-major.  Both are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import LengthMismatchError, MixedRingError, TableFormatError
from .expr import ExprFunction, evaluate, parse_expr
from .ring import Ring, RingElement, parse_ring_spec

__all__ = [
    "FunctionTable",
    "TwoPlaceTable",
    "tabulate",
    "cauchy_diff",
    "leibniz_diff",
    "read_table",
    "write_table",
]


def _frozen(values, shape) -> np.ndarray:
    arr = np.array(values, dtype=np.int64).reshape(shape)
    arr.setflags(write=False)
    return arr


def _same_ring(a, b) -> Ring:
    if a.ring != b.ring:
        raise MixedRingError(f"tables live over {a.ring} and {b.ring}")
    return a.ring


@dataclass(frozen=True, eq=False)
class FunctionTable:
    ring: Ring
    values: np.ndarray

    def __post_init__(self):
        self.ring._require_finite()
        q = self.ring.order
        vals = np.asarray(self.values)
        if vals.shape != (q,):
            raise LengthMismatchError(f"{self.ring} has {q} elements, table has {vals.size} values")
        if vals.size and (vals.min() < 0 or vals.max() >= q):
            raise TableFormatError("table value outside the carrier")
        object.__setattr__(self, "values", _frozen(vals, (q,)))

    @classmethod
    def zero(cls, ring: Ring) -> FunctionTable:
        return cls(ring, np.zeros(ring.order, dtype=np.int64))

    @classmethod
    def identity(cls, ring: Ring) -> FunctionTable:
        return cls(ring, np.arange(ring.order))

    @classmethod
    def from_function(cls, ring: Ring, fn) -> FunctionTable:
        """Tabulate a Python callable ``RingElement -> RingElement``."""
        return cls(ring, [fn(x).value for x in ring.elements()])

    @classmethod
    def from_strings(cls, ring: Ring, items) -> FunctionTable:
        items = list(items)
        if len(items) != ring.order:
            raise LengthMismatchError(f"{ring} has {ring.order} elements, got {len(items)} values")
        return cls(ring, [ring.parse_element(s).value for s in items])

    def __call__(self, x: RingElement) -> RingElement:
        if x.ring != self.ring:
            raise MixedRingError(f"argument in {x.ring}, table over {self.ring}")
        return RingElement(self.ring, int(self.values[x.value]))

    def key(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.values)

    def to_strings(self) -> list[str]:
        return [self.ring.format_index(v) for v in self.values]

    def __eq__(self, other):
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return self.ring == other.ring and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.ring, self.values.tobytes()))

    def __lt__(self, other: FunctionTable):
        return self.key() < other.key()

    def __add__(self, other: FunctionTable) -> FunctionTable:
        return FunctionTable(_same_ring(self, other), self.ring.add(self.values, other.values))

    def __sub__(self, other: FunctionTable) -> FunctionTable:
        return FunctionTable(_same_ring(self, other), self.ring.sub(self.values, other.values))

    def __neg__(self) -> FunctionTable:
        return FunctionTable(self.ring, self.ring.neg(self.values))

    def __rmul__(self, c: RingElement) -> FunctionTable:
        """Pointwise scalar multiple ``c * f``."""
        if not isinstance(c, RingElement):
            c = self.ring(c)
        if c.ring != self.ring:
            raise MixedRingError(f"scalar in {c.ring}, table over {self.ring}")
        return FunctionTable(self.ring, self.ring.mul(c.value, self.values))

    def times_identity(self) -> FunctionTable:
        """The function ``x -> x * f(x)``."""
        return FunctionTable(self.ring, self.ring.mul(np.arange(self.ring.order), self.values))

    def compose_square(self) -> FunctionTable:
        """The function ``x -> f(x^2)``."""
        idx = np.arange(self.ring.order)
        return FunctionTable(self.ring, self.values[self.ring.mul(idx, idx)])

    def __repr__(self) -> str:
        return f"FunctionTable({self.ring}, [{'; '.join(self.to_strings())}])"


@dataclass(frozen=True, eq=False)
class TwoPlaceTable:
    ring: Ring
    values: np.ndarray

    def __post_init__(self):
        self.ring._require_finite()
        q = self.ring.order
        vals = np.asarray(self.values)
        if vals.shape != (q, q):
            raise LengthMismatchError(f"{self.ring} needs a {q}x{q} table, got shape {vals.shape}")
        if vals.size and (vals.min() < 0 or vals.max() >= q):
            raise TableFormatError("table value outside the carrier")
        object.__setattr__(self, "values", _frozen(vals, (q, q)))

    @classmethod
    def zero(cls, ring: Ring) -> TwoPlaceTable:
        return cls(ring, np.zeros((ring.order, ring.order), dtype=np.int64))

    def __call__(self, x: RingElement, y: RingElement) -> RingElement:
        return RingElement(self.ring, int(self.values[x.value, y.value]))

    def with_entry(self, x: int, y: int, value: int) -> TwoPlaceTable:
        """Copy with entry ``(x, y)`` (canonical indices) replaced."""
        vals = self.values.copy()
        vals[x, y] = value
        return TwoPlaceTable(self.ring, vals)

    def is_zero(self) -> bool:
        return not self.values.any()

    def to_strings(self) -> list[list[str]]:
        return [[self.ring.format_index(v) for v in row] for row in self.values]

    def __eq__(self, other):
        if not isinstance(other, TwoPlaceTable):
            return NotImplemented
        return self.ring == other.ring and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.ring, self.values.tobytes()))

    def __sub__(self, other: TwoPlaceTable) -> TwoPlaceTable:
        return TwoPlaceTable(_same_ring(self, other), self.ring.sub(self.values, other.values))


def tabulate(fn: ExprFunction | str, ring: Ring) -> FunctionTable:
    """Evaluate an expression at every element of ``ring``."""
    if isinstance(fn, str):
        fn = parse_expr(fn, ring)
    ring._require_finite()
    x = np.arange(ring.order, dtype=np.int64)
    vals = evaluate(fn.ast, x, ring, lambda c: c.value)
    return FunctionTable(ring, np.broadcast_to(vals, x.shape))


def _grid(ring: Ring):
    idx = np.arange(ring.order)
    return idx[:, None], idx[None, :]


def cauchy_diff(f: FunctionTable) -> TwoPlaceTable:
    """``(x, y) -> f(x+y) - f(x) - f(y)``."""
    R, v = f.ring, f.values
    X, Y = _grid(R)
    return TwoPlaceTable(R, R.sub(v[R.add(X, Y)], R.add(v[X], v[Y])))


def leibniz_diff(f: FunctionTable) -> TwoPlaceTable:
    """``(x, y) -> f(xy) - x f(y) - y f(x)``."""
    R, v = f.ring, f.values
    X, Y = _grid(R)
    return TwoPlaceTable(R, R.sub(v[R.mul(X, Y)], R.add(R.mul(X, v[Y]), R.mul(Y, v[X]))))


# --- text file format ----------------------------------------------------------


def write_table(path, table: FunctionTable | TwoPlaceTable) -> None:
    lines = [f"ring={table.ring}"]
    if isinstance(table, FunctionTable):
        lines.append("values=" + ";".join(table.to_strings()))
    else:
        lines += [f"row{i}=" + ";".join(row) for i, row in enumerate(table.to_strings())]
    Path(path).write_text("\n".join(lines) + "\n")


def read_table(path) -> FunctionTable | TwoPlaceTable:
    """Read a table written by :func:`write_table`."""
    fields: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip():
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise TableFormatError(f"{path}:{lineno}: expected key=value")
        fields[key.strip()] = value.strip()
    if "ring" not in fields:
        raise TableFormatError(f"{path}: missing ring= line")
    ring = parse_ring_spec(fields.pop("ring"))
    if "values" in fields:
        return FunctionTable.from_strings(ring, fields["values"].split(";"))
    rows = []
    for i in range(len(fields)):
        if f"row{i}" not in fields:
            raise TableFormatError(f"{path}: missing row{i}")
        items = fields[f"row{i}"].split(";")
        if len(items) != ring.order:
            raise LengthMismatchError(f"row{i} has {len(items)} values, {ring} has {ring.order} elements")
        rows.append([ring.parse_element(s).value for s in items])
    if len(rows) != ring.order:
        raise LengthMismatchError(f"{len(rows)} rows, {ring} has {ring.order} elements")
    return TwoPlaceTable(ring, rows)

"""Binary formal contexts, the two derivation operators and the standard closure.

Object sets and attribute sets are plain Python ints used as dense bit-vectors:
bit ``i`` is set iff index ``i`` is a member.  Python ints give exact, unbounded
set algebra (``&``, ``|``, ``& ~``, ``int.bit_count``) and are hashable, which is
all the downstream modules need.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ParseError

AttributeSet = int
ObjectSet = int


def bits(indices: Iterable[int]) -> int:
    """Bitset with the given indices set."""
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def members(x: int) -> Iterator[int]:
    """Indices of set bits in ascending order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def full_set(n: int) -> int:
    return (1 << n) - 1


def to_index_array(x: int, n: int) -> np.ndarray:
    """Ascending indices of ``x`` as an int64 array (fast path for wide sets)."""
    if n == 0 or x == 0:
        return np.zeros(0, dtype=np.int64)
    raw = np.frombuffer(x.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:n])


def from_bool_array(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


@dataclass(frozen=True, eq=False)
class FormalContext:
    """An immutable binary dataset K = (G, M, I).

    ``rows[g]`` is the intent of object ``g``; ``cols[m]`` is the extent of
    attribute ``m``.  Both views are kept so either derivation is a chain of ANDs.
    """

    object_names: tuple[str, ...]
    attribute_names: tuple[str, ...]
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        n, k = len(self.rows), len(self.cols)
        if len(self.object_names) != n or len(self.attribute_names) != k:
            raise ValueError("name lists do not match the incidence dimensions")

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Iterable[int] | int],
        n_attributes: int | None = None,
        object_names: Sequence[str] | None = None,
        attribute_names: Sequence[str] | None = None,
    ) -> FormalContext:
        masks = [r if isinstance(r, int) else bits(r) for r in rows]
        widest = max((m.bit_length() for m in masks), default=0)
        if n_attributes is None:
            n_attributes = len(attribute_names) if attribute_names is not None else widest
        if widest > n_attributes:
            raise ValueError(f"attribute index {widest - 1} outside universe of size {n_attributes}")
        cols = [0] * n_attributes
        for g, row in enumerate(masks):
            for m in members(row):
                cols[m] |= 1 << g
        if object_names is None:
            object_names = [f"g{g + 1}" for g in range(len(masks))]
        if attribute_names is None:
            attribute_names = [f"m{m}" for m in range(n_attributes)]
        return cls(tuple(map(str, object_names)), tuple(map(str, attribute_names)),
                   tuple(masks), tuple(cols))

    @classmethod
    def from_matrix(cls, matrix, object_names=None, attribute_names=None) -> FormalContext:
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.ndim != 2:
            raise ValueError("incidence matrix must be 2-dimensional")
        rows = [from_bool_array(r) for r in matrix]
        return cls.from_rows(rows, matrix.shape[1], object_names, attribute_names)

    @property
    def n_objects(self) -> int:
        return len(self.rows)

    @property
    def n_attributes(self) -> int:
        return len(self.cols)

    @property
    def all_objects(self) -> ObjectSet:
        return full_set(self.n_objects)

    @property
    def all_attributes(self) -> AttributeSet:
        return full_set(self.n_attributes)

    @cached_property
    def incidence(self) -> np.ndarray:
        """Dense boolean matrix, objects x attributes."""
        out = np.zeros((self.n_objects, self.n_attributes), dtype=bool)
        for m, col in enumerate(self.cols):
            out[to_index_array(col, self.n_objects), m] = True
        return out

    @cached_property
    def col_complements(self) -> tuple[int, ...]:
        everyone = self.all_objects
        return tuple(everyone & ~c for c in self.cols)

    def attribute_index(self, name: str) -> int:
        return self.attribute_names.index(name)

    def itemset(self, names: Iterable[str] | str) -> AttributeSet:
        """Attribute set from names; a plain string is read one character per name."""
        lookup = {a: i for i, a in enumerate(self.attribute_names)}
        return bits(lookup[a] for a in names)

    def format_itemset(self, x: AttributeSet, sep: str = ";") -> str:
        return sep.join(self.attribute_names[m] for m in members(x))

    def __eq__(self, other):
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (self.rows, self.cols, self.object_names, self.attribute_names) == (
            other.rows, other.cols, other.object_names, other.attribute_names)

    def __hash__(self):
        return hash((self.rows, self.cols))

    def __repr__(self):
        return f"FormalContext({self.n_objects} objects, {self.n_attributes} attributes)"


def derive_objects(ctx: FormalContext, attrs: AttributeSet) -> ObjectSet:
    """B' : the objects having every attribute of ``attrs`` (all objects for B = empty)."""
    ext = ctx.all_objects
    cols = ctx.cols
    for m in members(attrs):
        ext &= cols[m]
    return ext


def derive_attributes(ctx: FormalContext, objs: ObjectSet) -> AttributeSet:
    """A' : the attributes shared by every object of ``objs`` (all attributes for A = empty)."""
    intent = ctx.all_attributes
    rows = ctx.rows
    for g in members(objs):
        intent &= rows[g]
        if not intent:
            break
    return intent


def intent_of_extent(ctx: FormalContext, ext: ObjectSet) -> AttributeSet:
    """Same result as :func:`derive_attributes`, scanning columns instead of rows.

    Cheaper when the extent is large and the attribute universe small.
    """
    out = 0
    for m, nc in enumerate(ctx.col_complements):
        if not ext & nc:
            out |= 1 << m
    return out


def closure(ctx: FormalContext, attrs: AttributeSet) -> AttributeSet:
    """B'' ; extensive, monotone and idempotent."""
    return intent_of_extent(ctx, derive_objects(ctx, attrs))


def support(ctx: FormalContext, attrs: AttributeSet) -> int:
    return derive_objects(ctx, attrs).bit_count()


def sample_objects(ctx: FormalContext, keep: ObjectSet) -> FormalContext:
    """Sub-context on the kept objects (row order preserved, same attribute universe)."""
    if keep >> ctx.n_objects:
        raise ValueError("keep set references objects outside the context")
    idx = list(members(keep))
    return FormalContext.from_rows(
        [ctx.rows[g] for g in idx],
        ctx.n_attributes,
        [ctx.object_names[g] for g in idx],
        ctx.attribute_names,
    )


# ---------------------------------------------------------------- parsing

def parse_fimi(text: str, n_attributes: int | None = None) -> FormalContext:
    """Parse FIMI ``.dat`` text: one object per line, space separated attribute ids.

    Blank lines inside the file are empty objects; blank lines after the last
    transaction are ignored.  Duplicate ids within a line collapse.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    rows = []
    for lineno, line in enumerate(lines, start=1):
        row = 0
        for col, tok in enumerate(line.split(), start=1):
            try:
                m = int(tok)
            except ValueError:
                raise ParseError(f"expected a non-negative integer attribute id, got {tok!r}",
                                 lineno, col) from None
            if m < 0:
                raise ParseError(f"negative attribute id {m}", lineno, col)
            row |= 1 << m
        rows.append(row)
    universe = max((r.bit_length() for r in rows), default=0)
    if n_attributes is not None:
        if n_attributes < universe:
            raise ParseError(f"attribute id {universe - 1} exceeds declared universe of {n_attributes}")
        universe = n_attributes
    return FormalContext.from_rows(rows, universe, attribute_names=[str(m) for m in range(universe)])


_CROSS_TRUE = {"x", "X", "×", "1"}
_CROSS_FALSE = {"", "0"}


def parse_csv(text: str, has_header: bool = True, mode: str = "binary") -> FormalContext:
    """Parse a rectangular CSV incidence table.

    ``mode="binary"`` accepts 0/1 cells; ``mode="cross"`` accepts ``x``/``×`` for
    membership and blank for absence.
    """
    if mode not in ("binary", "cross"):
        raise ValueError(f"unknown csv mode {mode!r}")
    records = [r for r in csv.reader(io.StringIO(text))]
    while records and not any(c.strip() for c in records[-1]):
        records.pop()
    if not records:
        return FormalContext.from_rows([], 0)
    header = None
    first_row = 1
    if has_header:
        header = [c.strip() for c in records[0]]
        records = records[1:]
        first_row = 2
    width = len(header) if header is not None else len(records[0]) if records else 0
    rows = []
    for r, rec in enumerate(records, start=first_row):
        if len(rec) != width:
            raise ParseError(f"ragged row: expected {width} cells, found {len(rec)}", r)
        row = 0
        for c, cell in enumerate(rec):
            cell = cell.strip()
            if mode == "binary":
                if cell == "1":
                    row |= 1 << c
                elif cell != "0":
                    raise ParseError(f"non-binary cell {cell!r}", r, c + 1)
            else:
                if cell in _CROSS_TRUE:
                    row |= 1 << c
                elif cell not in _CROSS_FALSE:
                    raise ParseError(f"unrecognised cell {cell!r} (expected x or blank)", r, c + 1)
        rows.append(row)
    names = header if header is not None else [f"m{m}" for m in range(width)]
    return FormalContext.from_rows(rows, width, attribute_names=names)


def load_context(path, fmt: str | None = None, csv_mode: str = "binary",
                 has_header: bool = True, n_attributes: int | None = None) -> FormalContext:
    """Read a context from disk; ``fmt`` defaults from the file extension."""
    path = str(path)
    if fmt is None:
        fmt = "csv" if path.lower().endswith(".csv") else "fimi"
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "fimi":
        return parse_fimi(text, n_attributes)
    if fmt == "csv":
        return parse_csv(text, has_header, csv_mode)
    raise ValueError(f"unknown format {fmt!r}")


def to_fimi(ctx: FormalContext) -> str:
    return "".join(" ".join(map(str, members(r))) + "\n" for r in ctx.rows)

"""Exact linear algebra over GF(2).

Vectors of ``(Z_2)^m`` are stored as Python ints: coordinate ``i`` (1-based)
is bit ``i - 1``.  :class:`GroupElement` wraps such an int together with its
length ``m`` so that vectors from different groups are never mixed silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "DimensionMismatch",
    "GroupElement",
    "GF2Matrix",
    "rank",
    "in_span",
    "solve_affine_all_ones",
    "enumerate_gl",
    "gl_order",
    "rank_ints",
    "span_basis",
    "span_ints",
    "parity",
    "GL_MAX_RANK",
    "SPARSE_THRESHOLD",
]

#: largest m accepted by :func:`enumerate_gl`
GL_MAX_RANK = 5
#: matrices with more columns than this use column-sparse elimination
SPARSE_THRESHOLD = 20_000


class DimensionMismatch(ValueError):
    """Vectors or matrices of incompatible sizes were combined."""


def parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True, order=True)
class GroupElement:
    """An element of ``(Z_2)^m``.

    ``value`` holds the coordinates as bits (coordinate 1 is the least
    significant bit); ``m`` is the group rank.
    """

    value: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"group rank must be >= 0, got {self.m}")
        if not 0 <= self.value < (1 << self.m):
            raise ValueError(f"value {self.value} does not fit in (Z_2)^{self.m}")

    @classmethod
    def zero(cls, m: int) -> "GroupElement":
        return cls(0, m)

    @classmethod
    def basis(cls, i: int, m: int) -> "GroupElement":
        """The standard basis vector ``e_i`` (1-based)."""
        if not 1 <= i <= m:
            raise ValueError(f"basis index {i} out of range for m={m}")
        return cls(1 << (i - 1), m)

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        """Parse a bit string; the leftmost character is coordinate 1."""
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        value = 0
        for i, ch in enumerate(text):
            if ch == "1":
                value |= 1 << i
        return cls(value, len(text))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "GroupElement":
        return cls.parse("".join("1" if b % 2 else "0" for b in bits))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.m))

    def _check(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if other.m != self.m:
            raise DimensionMismatch(f"cannot combine elements of (Z_2)^{self.m} and (Z_2)^{other.m}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.value ^ other.value, self.m)

    __sub__ = __add__

    def __neg__(self) -> "GroupElement":
        return self

    def __bool__(self) -> bool:
        return self.value != 0

    def dot(self, other: "GroupElement") -> int:
        """Mod-2 dot product."""
        self._check(other)
        return parity(self.value & other.value)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __repr__(self) -> str:
        return f"GroupElement('{self}')"


def _common_rank(vectors: Sequence[GroupElement], m: Optional[int] = None) -> Optional[int]:
    for v in vectors:
        if not isinstance(v, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(v).__name__}")
        if m is None:
            m = v.m
        elif v.m != m:
            raise DimensionMismatch(f"mixed vector lengths {m} and {v.m}")
    return m


def _reduce(x: int, basis: dict[int, int]) -> int:
    # basis maps leading bit -> vector with that leading bit
    while x:
        top = x.bit_length() - 1
        b = basis.get(top)
        if b is None:
            return x
        x ^= b
    return 0


def _xor_basis(values: Iterable[int]) -> dict[int, int]:
    basis: dict[int, int] = {}
    for x in values:
        r = _reduce(x, basis)
        if r:
            basis[r.bit_length() - 1] = r
    return basis


def rank_ints(values: Iterable[int]) -> int:
    """GF(2) rank of a family of bit-vectors given as ints."""
    return len(_xor_basis(values))


def span_basis(values: Iterable[int]) -> list[int]:
    """Reduced echelon basis of the span, sorted ascending."""
    basis = _xor_basis(values)
    # full reduction gives a canonical basis for the subspace
    keys = sorted(basis)
    for k in keys:
        for j in keys:
            if j != k and (basis[j] >> k) & 1:
                basis[j] ^= basis[k]
    return sorted(basis.values())


def span_ints(values: Iterable[int]) -> frozenset[int]:
    """All elements of the span (exponential in the rank)."""
    elems = {0}
    for b in span_basis(values):
        elems |= {e ^ b for e in elems}
    return frozenset(elems)


def rank(vectors: Sequence[GroupElement]) -> int:
    """Dimension of the GF(2) span of ``vectors`` (0 for an empty list)."""
    _common_rank(vectors)
    return rank_ints(v.value for v in vectors)


def in_span(v: GroupElement, basis: Sequence[GroupElement]) -> bool:
    _common_rank([v, *basis])
    return _reduce(v.value, _xor_basis(b.value for b in basis)) == 0


def solve_affine_all_ones(
    vectors: Sequence[GroupElement], m: Optional[int] = None
) -> Optional[GroupElement]:
    """Find ``c`` with ``c . v = 1`` for every ``v`` in ``vectors``.

    Returns ``None`` when no such functional exists.  With no constraints the
    answer is ``e_1`` (or the zero element of ``(Z_2)^0``).
    """
    m = _common_rank(vectors, m)
    if m is None:
        raise ValueError("group rank m is required when no vectors are given")
    if not vectors:
        return GroupElement.basis(1, m) if m >= 1 else GroupElement.zero(0)
    rhs_bit = 1 << m
    # rows of the augmented system [v | 1], eliminated on lowest column first
    pivots: dict[int, int] = {}
    for v in vectors:
        row = v.value | rhs_bit
        for col in range(m):
            if not (row >> col) & 1:
                continue
            if col in pivots:
                row ^= pivots[col]
            else:
                pivots[col] = row
                break
        else:
            if row & rhs_bit:
                return None
    # back substitution: free coordinates are zero
    value = 0
    for col in sorted(pivots, reverse=True):
        row = pivots[col]
        rest = row & ~((1 << (col + 1)) - 1) & (rhs_bit - 1)
        bit = ((row >> m) & 1) ^ parity(rest & value)
        if bit:
            value |= 1 << col
    return GroupElement(value, m)


@dataclass(frozen=True)
class GF2Matrix:
    """Dense matrix over GF(2); row ``i`` is an int whose bit ``j`` is entry ``(i, j)``."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.nrows:
            raise DimensionMismatch(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        if any(r < 0 or r >= limit for r in self.rows):
            raise DimensionMismatch("row has bits beyond the column count")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "GF2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "GF2Matrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for r in entries:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
            rows.append(sum(1 << j for j, x in enumerate(r) if int(x) % 2))
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Iterable[int]]) -> "GF2Matrix":
        """Build from the row indices of the nonzero entries of each column."""
        rows = [0] * nrows
        for j, col in enumerate(columns):
            bit = 1 << j
            for i in col:
                rows[i] ^= bit
        return cls(nrows, len(columns), tuple(rows))

    @classmethod
    def from_group_elements(cls, vectors: Sequence[GroupElement]) -> "GF2Matrix":
        """Matrix whose rows are the given vectors."""
        m = _common_rank(vectors) or 0
        return cls(len(vectors), m, tuple(v.value for v in vectors))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def to_array(self):
        import numpy as np

        return np.array(self.to_lists(), dtype=np.uint8).reshape(self.nrows, self.ncols)

    def columns(self) -> list[list[int]]:
        cols: list[list[int]] = [[] for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1].append(i)
                r ^= low
        return cols

    def transpose(self) -> "GF2Matrix":
        return GF2Matrix.from_columns(self.ncols, [self._row_support(i) for i in range(self.nrows)])

    def _row_support(self, i: int) -> list[int]:
        r, out = self.rows[i], []
        while r:
            low = r & -r
            out.append(low.bit_length() - 1)
            r ^= low
        return out

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc ^= other.rows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return GF2Matrix(self.nrows, other.ncols, tuple(out))

    def apply(self, x: int) -> int:
        """Matrix-vector product ``A x`` with ``x`` given as a column bit-vector."""
        out = 0
        for i, r in enumerate(self.rows):
            if parity(r & x):
                out |= 1 << i
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self, method: str = "auto") -> int:
        """Rank by elimination.

        ``method`` is ``"dense"`` (row bitsets), ``"sparse"`` (column reduction
        on index sets) or ``"auto"`` (sparse above :data:`SPARSE_THRESHOLD`
        columns).
        """
        if method == "auto":
            method = "sparse" if self.ncols > SPARSE_THRESHOLD else "dense"
        if method == "dense":
            return rank_ints(self.rows)
        if method == "sparse":
            return _sparse_rank(self.columns())
        raise ValueError(f"unknown rank method {method!r}")

    def row_reduce(self) -> tuple["GF2Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns.

        Pivots are chosen at the lowest column index, taking the lowest row
        index that has a one there.
        """
        rows = list(self.rows)
        pivots: list[int] = []
        r = 0
        for col in range(self.ncols):
            bit = 1 << col
            p = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            for i in range(len(rows)):
                if i != r and rows[i] & bit:
                    rows[i] ^= rows[r]
            pivots.append(col)
            r += 1
            if r == len(rows):
                break
        return GF2Matrix(self.nrows, self.ncols, tuple(rows)), tuple(pivots)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def __str__(self) -> str:
        return "\n".join("".join(str(x) for x in row) for row in self.to_lists())


def _sparse_rank(columns: Sequence[Iterable[int]]) -> int:
    # standard column reduction keyed on the lowest nonzero row index
    pivot_of: dict[int, set[int]] = {}
    count = 0
    for col in columns:
        work = set(col)
        while work:
            low = min(work)
            other = pivot_of.get(low)
            if other is None:
                pivot_of[low] = work
                count += 1
                break
            work ^= other
    return count


def gl_order(m: int) -> int:
    """``|GL(m, Z_2)| = prod_{i<m} (2^m - 2^i)``."""
    out = 1
    for i in range(m):
        out *= (1 << m) - (1 << i)
    return out


def enumerate_gl(m: int) -> Iterator[GF2Matrix]:
    """Yield every invertible ``m x m`` matrix over GF(2) exactly once.

    Rows are chosen in increasing integer order, each outside the span of the
    previous ones, so the order is deterministic.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > GL_MAX_RANK:
        raise ValueError(
            f"refusing to enumerate GL({m}, 2): limit is m <= {GL_MAX_RANK} "
            f"(|GL({m}, 2)| = {gl_order(m)})"
        )
    top = 1 << m

    def extend(rows: list[int], span: frozenset[int]) -> Iterator[GF2Matrix]:
        if len(rows) == m:
            yield GF2Matrix(m, m, tuple(rows))
            return
        for r in range(1, top):
            if r in span:
                continue
            rows.append(r)
            yield from extend(rows, span | {s ^ r for s in span})
            rows.pop()

    yield from extend([], frozenset({0}))

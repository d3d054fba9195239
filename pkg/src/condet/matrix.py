"""Dense matrices over one scalar kind, with 1-based indexing.

Rows and columns are numbered from 1 throughout the package; that is
the native convention of the condensation formulas and it keeps every
off-by-one in a single place (this module).  A :class:`Matrix` is
immutable: helpers return new instances.

Besides the container this module holds the small structural tools the
condensation step needs: minor extraction (`remove_rows_cols`), the
determinant-preserving rotation that moves an arbitrary pivot to the
(1,1) corner (`rotate_pivot_to_front`), and the closed-form
determinants for sizes 0..2 (`det_trivial`).
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Sequence

from .scalars import Scalar, ScalarKind

__all__ = [
    "PivotSpec",
    "Matrix",
    "remove_rows_cols",
    "rotate_pivot_to_front",
    "det_trivial",
]


class PivotSpec(NamedTuple):
    """A 1-based (row, column) pivot position."""

    k: int
    l: int


class Matrix:
    """Immutable dense matrix; every entry belongs to one scalar kind."""

    __slots__ = ("_data", "_cols", "_kind")

    def __init__(self, rows: Iterable[Sequence], kind: ScalarKind, *, cols: Optional[int] = None):
        data = []
        width = cols
        for lineno, row in enumerate(rows, start=1):
            entries = tuple(kind.check(v) for v in row)
            if width is None:
                width = len(entries)
            elif len(entries) != width:
                raise ValueError(
                    f"ragged matrix: row {lineno} has {len(entries)} entries, expected {width}"
                )
            data.append(entries)
        if width is None:
            width = 0
        if data and width == 0:
            raise ValueError("matrix rows must not be empty")
        self._data = tuple(data)
        self._cols = width
        self._kind = kind

    @property
    def rows(self) -> int:
        return len(self._data)

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def kind(self) -> ScalarKind:
        return self._kind

    def is_square(self) -> bool:
        return self.rows == self.cols

    def get(self, i: int, j: int) -> Scalar:
        """Entry at 1-based position (i, j)."""
        if not 1 <= i <= self.rows:
            raise IndexError(f"row {i} out of range 1..{self.rows}")
        if not 1 <= j <= self.cols:
            raise IndexError(f"column {j} out of range 1..{self.cols}")
        return self._data[i - 1][j - 1]

    def row(self, i: int) -> tuple:
        """Row ``i`` (1-based) as a tuple of values."""
        if not 1 <= i <= self.rows:
            raise IndexError(f"row {i} out of range 1..{self.rows}")
        return self._data[i - 1]

    def as_tuples(self) -> tuple:
        """The underlying tuple-of-row-tuples (no copy)."""
        return self._data

    def to_rows(self) -> list:
        """Entries as a fresh list of row lists."""
        return [list(row) for row in self._data]

    def transpose(self) -> "Matrix":
        flipped = tuple(zip(*self._data)) if self._data else ()
        return Matrix(flipped, self._kind, cols=self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self._kind is other._kind
            and self._cols == other._cols
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self._kind.name, self._cols, self._data))

    def __repr__(self) -> str:
        return f"Matrix({self.to_rows()!r}, kind={self._kind.name})"


def _check_removed(indices: Iterable[int], limit: int, what: str) -> list:
    out = sorted(set(int(i) for i in indices))
    given = list(indices)
    if len(given) != len(out):
        raise ValueError(f"duplicate {what} indices in {given!r}")
    for i in out:
        if not 1 <= i <= limit:
            raise IndexError(f"{what} index {i} out of range 1..{limit}")
    return out


def remove_rows_cols(m: Matrix, removed_rows: Iterable[int], removed_cols: Iterable[int]) -> Matrix:
    """Minor of ``m``: drop the listed 1-based rows and columns.

    Surviving rows and columns keep their relative order.  Removing
    everything is legal and yields a 0x0 matrix.
    """
    rr = set(_check_removed(list(removed_rows), m.rows, "row"))
    rc = set(_check_removed(list(removed_cols), m.cols, "column"))
    kept_cols = [j for j in range(m.cols) if j + 1 not in rc]
    data = [
        tuple(row[j] for j in kept_cols)
        for i, row in enumerate(m.as_tuples())
        if i + 1 not in rr
    ]
    return Matrix(data, m.kind, cols=len(kept_cols))


def rotate_pivot_to_front(m: Matrix, pivot: PivotSpec) -> tuple:
    """Cyclically rotate row ``k`` and column ``l`` into position (1,1).

    Rows k, 1, 2, ..., k-1 become rows 1, 2, ..., k (likewise for
    columns), which is a cascade of adjacent swaps, so the determinant
    changes by exactly ``(-1)**((k-1)+(l-1))``.  Returns ``(rotated,
    sign)``.
    """
    if not m.is_square():
        raise ValueError("pivot rotation needs a square matrix")
    n = m.rows
    k, l = pivot
    if not (1 <= k <= n and 1 <= l <= n):
        raise IndexError(f"pivot {pivot} out of range for size {n}")
    row_order = [k - 1] + [i for i in range(n) if i != k - 1]
    col_order = [l - 1] + [j for j in range(n) if j != l - 1]
    src = m.as_tuples()
    data = [tuple(src[i][j] for j in col_order) for i in row_order]
    sign = 1 if (k + l) % 2 == 0 else -1
    return Matrix(data, m.kind, cols=n), sign


def det_trivial(m: Matrix) -> Scalar:
    """Determinant of a matrix of size 0, 1 or 2, by the closed form.

    The empty product convention gives the 0x0 case determinant one.
    """
    if not m.is_square():
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return m.kind.one
    if n == 1:
        return m.get(1, 1)
    if n == 2:
        return m.get(1, 1) * m.get(2, 2) - m.get(1, 2) * m.get(2, 1)
    raise ValueError(f"det_trivial handles sizes 0..2, got {n}")

"""Determinant condensation: collapse an n x n matrix into an
(n-1) x (n-1) matrix of pivot-anchored 2x2 minors.

With pivot (k, l), entry (i, j) of the condensed matrix is the
determinant of a 2x2 block built from the pivot row/column and row
i (or i+1, once past the pivot row) and column j (or j+1, once past
the pivot column) of the source.  That block layout absorbs all
permutation signs, giving the identity

    a(k,l) ** (n-2) * det(A) = det(condensed)

with no extra sign factor, for any pivot with a(k,l) != 0.  Two
consequences drive the determinant driver ``det_condensation``:

* if a(1,1) = 0 the condensed matrix at (1,1) is singular, so the
  driver scans row 1 for a usable pivot instead of insisting on (1,1);
* repeated condensation shrinks the matrix one size per level, and a
  single division by the pivot power per level recovers det(A).

``dodgson_identity_residual`` evaluates the classical Dodgson
(Desnanot-Jacobi) minor identity through the independent oracles,
as a cross-check that never touches the condensation code above it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .matrix import Matrix, PivotSpec, remove_rows_cols
from .oracle import det_bareiss
from .scalars import FLOAT, KINDS, OpCounts, Scalar, ScalarKind

__all__ = [
    "TwoByTwoBlock",
    "CondensationStep",
    "ZeroRowExit",
    "DetResult",
    "PivotStrategy",
    "pivot_block",
    "condense_at_11",
    "condense_at",
    "dodgson_identity_residual",
    "select_pivot",
    "det_condensation",
    "trace_document",
    "trace_from_document",
    "TRACE_FORMAT",
]


class TwoByTwoBlock(tuple):
    """The four scalars of one pivot-anchored 2x2 minor."""

    __slots__ = ()

    def __new__(cls, top_left, top_right, bottom_left, bottom_right):
        return tuple.__new__(cls, (top_left, top_right, bottom_left, bottom_right))

    @property
    def top_left(self):
        return self[0]

    @property
    def top_right(self):
        return self[1]

    @property
    def bottom_left(self):
        return self[2]

    @property
    def bottom_right(self):
        return self[3]

    def det(self) -> Scalar:
        return self[0] * self[3] - self[1] * self[2]


@dataclass(frozen=True)
class CondensationStep:
    """One condensation level: pivot position, its value, the sign the
    rotation convention contributes (+1 for the in-place block layout),
    and the condensed matrix."""

    pivot: PivotSpec
    pivot_value: Scalar
    sign: int
    condensed: Matrix


@dataclass(frozen=True)
class ZeroRowExit:
    """Marker for a level whose first row was entirely zero, which
    forces the determinant to zero without further condensation."""

    size: int


TraceEntry = Union[CondensationStep, ZeroRowExit]


@dataclass(frozen=True)
class DetResult:
    """Value, per-level trace and operation counts of one run."""

    value: Scalar
    trace: Tuple[TraceEntry, ...]
    op_counts: OpCounts


class PivotStrategy(enum.Enum):
    """How ``det_condensation`` picks its pivot within row 1."""

    FIRST_NONZERO = "first-nonzero"
    MAX_MAGNITUDE = "max-magnitude"


def pivot_block(m: Matrix, k: int, l: int, i: int, j: int) -> TwoByTwoBlock:
    """The 2x2 block behind entry (i, j) of the condensation at (k, l).

    ``i`` and ``j`` run over 1..n-1.  Indices at or past the pivot row
    (column) skip over it, and the pivot row/column supplies the
    anchoring entries; the four quadrants differ only in which of the
    two rows (columns) comes first:

        j < l, i < k:   [[a(i,j),  a(i,l)],  [a(k,j),   a(k,l)]]
        j >= l, i < k:  [[a(i,l),  a(i,j+1)],[a(k,l),   a(k,j+1)]]
        j < l, i >= k:  [[a(k,j),  a(k,l)],  [a(i+1,j), a(i+1,l)]]
        j >= l, i >= k: [[a(k,l),  a(k,j+1)],[a(i+1,l), a(i+1,j+1)]]
    """
    a = m.get
    if i < k:
        if j < l:
            return TwoByTwoBlock(a(i, j), a(i, l), a(k, j), a(k, l))
        return TwoByTwoBlock(a(i, l), a(i, j + 1), a(k, l), a(k, j + 1))
    if j < l:
        return TwoByTwoBlock(a(k, j), a(k, l), a(i + 1, j), a(i + 1, l))
    return TwoByTwoBlock(a(k, l), a(k, j + 1), a(i + 1, l), a(i + 1, j + 1))


def _require_condensable(m: Matrix, who: str) -> int:
    if not m.is_square():
        raise ValueError(f"{who} needs a square matrix, got {m.rows}x{m.cols}")
    if m.rows < 2:
        raise ValueError(f"{who} needs size >= 2, got {m.rows}")
    return m.rows


def condense_at_11(m: Matrix) -> CondensationStep:
    """Condense at the natural corner pivot (1, 1).

    Entry (i, j) of the result is a(1,1)*a(i+1,j+1) - a(1,j+1)*a(i+1,1).
    The pivot value may be zero; the identity then degenerates to a
    singular condensed matrix.
    """
    n = _require_condensable(m, "condense_at_11")
    src = m.as_tuples()
    top = src[0]
    anchor = top[0]
    data = []
    for i in range(1, n):
        row = src[i]
        lead = row[0]
        data.append(tuple(anchor * row[j] - top[j] * lead for j in range(1, n)))
    condensed = Matrix(data, m.kind, cols=n - 1)
    return CondensationStep(PivotSpec(1, 1), anchor, 1, condensed)


def condense_at(m: Matrix, pivot: PivotSpec) -> CondensationStep:
    """Condense at an arbitrary pivot (k, l) without moving any rows.

    The recorded sign is the one a front-rotation of the pivot would
    contribute, ``(-1)**((k-1)+(l-1))``; the block layout already
    absorbs it, so the condensation identity itself needs no sign.
    """
    n = _require_condensable(m, "condense_at")
    k, l = pivot
    if not (1 <= k <= n and 1 <= l <= n):
        raise IndexError(f"pivot {pivot!r} out of range for size {n}")
    data = [
        tuple(pivot_block(m, k, l, i, j).det() for j in range(1, n))
        for i in range(1, n)
    ]
    condensed = Matrix(data, m.kind, cols=n - 1)
    sign = 1 if (k + l) % 2 == 0 else -1
    return CondensationStep(PivotSpec(k, l), m.get(k, l), sign, condensed)


def dodgson_identity_residual(m: Matrix, k: int, l: int) -> Scalar:
    """Residual of the Dodgson (Desnanot-Jacobi) identity at rows/cols k < l.

    Writing M(R, C) for the minor of ``m`` with rows R and columns C
    removed, the identity states

        det(m) * det(M({k,l}, {k,l})) =
            det(M({l},{l})) * det(M({k},{k})) - det(M({l},{k})) * det(M({k},{l}))

    and the residual is left side minus right side: exactly zero over
    exact kinds, tiny over floats.  All determinants go through the
    Bareiss oracle, independent of the condensation path.
    """
    n = m.rows
    if not m.is_square():
        raise ValueError("dodgson_identity_residual needs a square matrix")
    if n < 2:
        raise ValueError(f"dodgson_identity_residual needs size >= 2, got {n}")
    if not (1 <= k < l <= n):
        raise ValueError(f"need 1 <= k < l <= {n}, got k={k}, l={l}")
    lhs = det_bareiss(m) * det_bareiss(remove_rows_cols(m, (k, l), (k, l)))
    ll = det_bareiss(remove_rows_cols(m, (l,), (l,)))
    kk = det_bareiss(remove_rows_cols(m, (k,), (k,)))
    lk = det_bareiss(remove_rows_cols(m, (l,), (k,)))
    kl = det_bareiss(remove_rows_cols(m, (k,), (l,)))
    return lhs - (ll * kk - lk * kl)


def select_pivot(row1: Sequence, strategy: PivotStrategy) -> Optional[int]:
    """Pick a pivot column (1-based) from the first row, or None if the
    row is entirely zero.

    ``FIRST_NONZERO`` returns the lowest column with a nonzero entry;
    ``MAX_MAGNITUDE`` the column with the largest ``abs`` among nonzero
    entries, lowest column on ties.  Zero tests are exact for every
    kind.
    """
    if strategy is PivotStrategy.FIRST_NONZERO:
        for idx, v in enumerate(row1):
            if v != 0:
                return idx + 1
        return None
    if strategy is PivotStrategy.MAX_MAGNITUDE:
        best = None
        best_mag = None
        for idx, v in enumerate(row1):
            if v == 0:
                continue
            mag = abs(v)
            if best is None or mag > best_mag:
                best, best_mag = idx + 1, mag
        return best
    raise ValueError(f"unknown pivot strategy {strategy!r}")


def _divide_back(kind: ScalarKind, value: Scalar, pivot: Scalar, size: int, ops: OpCounts) -> Scalar:
    # Undo one level: det(A) = det(condensed) / pivot**(size-2).
    # Exact kinds build the pivot power explicitly (size-3 extra
    # multiplications) and divide once, keeping the division exact.
    # Floats divide repeatedly instead, which avoids inflating
    # intermediate magnitudes.
    if kind is FLOAT:
        for _ in range(size - 2):
            value = kind.exact_div(value, pivot)
            ops.divisions += 1
        return value
    power = pivot
    for _ in range(size - 3):
        power = power * pivot
        ops.multiplications += 1
    ops.divisions += 1
    return kind.exact_div(value, power)


def det_condensation(
    m: Matrix,
    strategy: PivotStrategy = PivotStrategy.FIRST_NONZERO,
    record_trace: bool = True,
) -> DetResult:
    """Determinant by repeated first-row condensation.

    Each level picks a pivot in row 1 (``strategy``), condenses the
    current s x s matrix into (s-1) x (s-1), and records the step; a
    fully zero first row short-circuits the level to determinant zero
    (recorded as a :class:`ZeroRowExit`).  Once the recursion bottoms
    out at size 2 the pivot-power divisions are applied in reverse
    level order, so all condensation happens on undivided entries.
    Sizes 0..2 use the closed forms directly and leave an empty trace.

    Operation counts tally the scalar multiplications, subtractions and
    divisions actually performed, including the closed-form 2x2 base
    case and the pivot-power build-up.
    """
    if not m.is_square():
        raise ValueError(f"det_condensation needs a square matrix, got {m.rows}x{m.cols}")
    kind = m.kind
    ops = OpCounts()
    trace: List[TraceEntry] = []

    def det2(a, b, c, d) -> Scalar:
        ops.multiplications += 2
        ops.subtractions += 1
        return a * d - b * c

    n = m.rows
    if n == 0:
        return DetResult(kind.one, (), ops)
    if n == 1:
        return DetResult(m.get(1, 1), (), ops)

    current = m
    pending: List[Tuple[Scalar, int]] = []
    while True:
        size = current.rows
        if size == 2:
            grid = current.as_tuples()
            value = det2(grid[0][0], grid[0][1], grid[1][0], grid[1][1])
            break
        row1 = current.row(1)
        l = select_pivot(row1, strategy)
        if l is None:
            if record_trace:
                trace.append(ZeroRowExit(size))
            value = kind.zero
            break
        pivot = row1[l - 1]
        src = current.as_tuples()
        data = []
        for i in range(1, size):
            row = src[i]
            out = []
            for j in range(1, size):
                if j < l:
                    out.append(det2(row1[j - 1], pivot, row[j - 1], row[l - 1]))
                else:
                    out.append(det2(pivot, row1[j], row[l - 1], row[j]))
            data.append(tuple(out))
        condensed = Matrix(data, kind, cols=size - 1)
        if record_trace:
            trace.append(CondensationStep(PivotSpec(1, l), pivot, 1, condensed))
        pending.append((pivot, size))
        current = condensed

    for pivot, size in reversed(pending):
        value = _divide_back(kind, value, pivot, size, ops)
    return DetResult(value, tuple(trace), ops)


TRACE_FORMAT = "condensation-trace/1"


def _matrix_to_doc(m: Matrix) -> dict:
    fmt = m.kind.format
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [fmt(v) for row in m.as_tuples() for v in row],
    }


def _matrix_from_doc(doc: dict, kind: ScalarKind) -> Matrix:
    rows, cols = int(doc["rows"]), int(doc["cols"])
    entries = doc["entries"]
    if len(entries) != rows * cols:
        raise ValueError(f"matrix document claims {rows}x{cols} but carries {len(entries)} entries")
    parsed = [kind.parse(t) for t in entries]
    data = [parsed[r * cols : (r + 1) * cols] for r in range(rows)]
    return Matrix(data, kind, cols=cols)


def trace_document(m: Matrix, result: DetResult) -> dict:
    """JSON-ready document for one run: source matrix, per-level steps
    (pivot position, pivot value text, sign, condensed entries in
    row-major order) and the final value, all scalars as canonical
    text."""
    kind = m.kind
    steps: List[dict] = []
    for entry in result.trace:
        if isinstance(entry, ZeroRowExit):
            steps.append({"kind": "zero-row", "size": entry.size})
        else:
            steps.append(
                {
                    "kind": "condense",
                    "pivot": [entry.pivot.k, entry.pivot.l],
                    "pivot_value": kind.format(entry.pivot_value),
                    "sign": entry.sign,
                    "condensed": _matrix_to_doc(entry.condensed),
                }
            )
    return {
        "format": TRACE_FORMAT,
        "scalar_kind": kind.name,
        "matrix": _matrix_to_doc(m),
        "steps": steps,
        "value": kind.format(result.value),
    }


def trace_from_document(doc: dict) -> Tuple[Matrix, Scalar, Tuple[TraceEntry, ...]]:
    """Rebuild (source matrix, value, steps) from a trace document."""
    if doc.get("format") != TRACE_FORMAT:
        raise ValueError(f"not a {TRACE_FORMAT} document: format={doc.get('format')!r}")
    kind = KINDS.get(doc.get("scalar_kind"))
    if kind is None:
        raise ValueError(f"unknown scalar kind {doc.get('scalar_kind')!r}")
    m = _matrix_from_doc(doc["matrix"], kind)
    steps: List[TraceEntry] = []
    for step in doc["steps"]:
        if step.get("kind") == "zero-row":
            steps.append(ZeroRowExit(int(step["size"])))
        elif step.get("kind") == "condense":
            k, l = (int(x) for x in step["pivot"])
            steps.append(
                CondensationStep(
                    PivotSpec(k, l),
                    kind.parse(step["pivot_value"]),
                    int(step["sign"]),
                    _matrix_from_doc(step["condensed"], kind),
                )
            )
        else:
            raise ValueError(f"unknown trace step kind {step.get('kind')!r}")
    value = kind.parse(doc["value"])
    return m, value, tuple(steps)

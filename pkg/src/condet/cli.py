"""Command-line interface.

Three subcommands:

* ``condet det FILE``     - print one determinant.
* ``condet verify FILE``  - evaluate the condensation identities and the
  Dodgson minor identity on the matrix, one pass/fail line each.
* ``condet bench [CONFIG]`` - run the seeded bench and emit the report.

Exit codes: 0 success, 1 at least one identity failed to verify,
2 bad input (unparsable file, wrong shape, invalid flag combination),
3 internal invariant breach (non-exact division, method disagreement).

Matrix files come in two shapes, picked apart automatically:
plain text with one row per line (entries separated by whitespace
and/or commas) or a JSON object ``{"rows": R, "cols": C, "entries":
[...texts...]}`` with entries in row-major order.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .bench import (
    DEFAULT_CONFIG,
    BenchConfig,
    MethodDisagreement,
    format_report,
    run_bench,
)
from .condense import (
    PivotStrategy,
    condense_at,
    condense_at_11,
    det_condensation,
    dodgson_identity_residual,
    trace_document,
)
from .matrix import Matrix, PivotSpec, remove_rows_cols
from .oracle import (
    COFACTOR_SIZE_LIMIT,
    det_bareiss,
    det_cofactor,
    det_gauss_rational,
)
from .scalars import (
    FLOAT,
    KINDS,
    RATIONAL,
    ExactDivisionError,
    ScalarKind,
    ScalarParseError,
)

__all__ = ["main", "cmd_det", "cmd_verify", "cmd_bench", "load_matrix", "parse_matrix_text", "MatrixFileError"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USER_ERROR = 2
EXIT_INTERNAL_ERROR = 3

VERIFY_REL_TOL = 1e-9


class MatrixFileError(ValueError):
    """A matrix file that cannot be parsed; the message locates the problem."""


def parse_matrix_text(text: str, kind: ScalarKind) -> Matrix:
    """Parse matrix text (plain rows or the JSON object form)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_matrix_json(text, kind)
    rows: List[List] = []
    width = None
    row_count = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        cells = line.replace(",", " ").split()
        if not cells:
            continue
        row_count += 1
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise MatrixFileError(
                f"line {lineno}: row has {len(cells)} entries, previous rows have {width}"
            )
        row = []
        for col, cell in enumerate(cells, start=1):
            try:
                row.append(kind.parse(cell))
            except ScalarParseError as exc:
                raise MatrixFileError(f"line {lineno}, entry {col}: {exc}") from exc
        rows.append(row)
    if not rows:
        raise MatrixFileError("matrix file has no rows")
    return Matrix(rows, kind)


def _parse_matrix_json(text: str, kind: ScalarKind) -> Matrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"invalid JSON matrix file: {exc}") from exc
    if not isinstance(doc, dict):
        raise MatrixFileError("JSON matrix file must be an object")
    try:
        rows, cols, entries = int(doc["rows"]), int(doc["cols"]), doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFileError(f"JSON matrix file needs integer 'rows'/'cols' and 'entries': {exc}") from exc
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise MatrixFileError(
            f"JSON matrix file claims {rows}x{cols} = {rows * cols} entries, "
            f"got {len(entries) if isinstance(entries, list) else 'non-list'}"
        )
    parsed = []
    for idx, cell in enumerate(entries):
        try:
            parsed.append(kind.parse(cell if isinstance(cell, str) else repr(cell)))
        except ScalarParseError as exc:
            raise MatrixFileError(f"entry {idx + 1} (row-major): {exc}") from exc
    data = [parsed[r * cols : (r + 1) * cols] for r in range(rows)]
    return Matrix(data, kind, cols=cols)


def load_matrix(path: str, kind: ScalarKind) -> Matrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    return parse_matrix_text(text, kind)


def _residual_passes(residual, reference, kind: ScalarKind) -> bool:
    # Exact kinds demand residual zero; floats get a relative test
    # against the reference magnitude (floored at one).
    if kind is FLOAT:
        return abs(residual) <= VERIFY_REL_TOL * max(1.0, abs(reference))
    return residual == kind.zero


def cmd_det(args: argparse.Namespace) -> int:
    kind = KINDS[args.scalar]
    m = load_matrix(args.file, kind)
    if not m.is_square():
        print(f"error: determinant needs a square matrix, got {m.rows}x{m.cols}", file=sys.stderr)
        return EXIT_USER_ERROR
    if args.trace is not None and args.method != "condense":
        print("error: --trace is only available with --method condense", file=sys.stderr)
        return EXIT_USER_ERROR
    if args.method == "condense":
        strategy = PivotStrategy(args.pivot)
        result = det_condensation(m, strategy, record_trace=args.trace is not None)
        if args.trace is not None:
            doc = trace_document(m, result)
            with open(args.trace, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=2)
                fh.write("\n")
        value = result.value
    elif args.method == "cofactor":
        if m.rows > COFACTOR_SIZE_LIMIT:
            print(
                f"error: cofactor expansion is limited to {COFACTOR_SIZE_LIMIT}x{COFACTOR_SIZE_LIMIT}, "
                f"got {m.rows}x{m.cols}",
                file=sys.stderr,
            )
            return EXIT_USER_ERROR
        value = det_cofactor(m)
    elif args.method == "bareiss":
        value = det_bareiss(m)
    elif args.method == "gauss":
        if kind is not RATIONAL:
            print("error: --method gauss needs --scalar rational", file=sys.stderr)
            return EXIT_USER_ERROR
        value = det_gauss_rational(m)
    else:  # pragma: no cover - argparse restricts choices
        raise AssertionError(args.method)
    print(kind.format(value))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    kind = KINDS[args.scalar]
    m = load_matrix(args.file, kind)
    if not m.is_square():
        print(f"error: verify needs a square matrix, got {m.rows}x{m.cols}", file=sys.stderr)
        return EXIT_USER_ERROR
    n = m.rows
    if n < 3:
        print(f"error: verify needs size >= 3, got {n}", file=sys.stderr)
        return EXIT_USER_ERROR

    det_full = det_bareiss(m)
    failures = 0
    checked = 0

    def report(label: str, residual, reference) -> None:
        nonlocal failures, checked
        checked += 1
        ok = _residual_passes(residual, reference, kind)
        if not ok:
            failures += 1
        print(f"{'PASS' if ok else 'FAIL'} {label} residual={kind.format(residual)}")

    # Corner-pivot condensation identity:
    # a(1,1)**(n-2) * det(A) = det(condensed at (1,1)).
    step = condense_at_11(m)
    lhs = step.pivot_value ** (n - 2) * det_full
    residual = lhs - det_bareiss(step.condensed)
    report("condense-identity pivot=(1,1)", residual, lhs)

    # General-pivot identity at every position with a nonzero pivot:
    # a(k,l)**(n-2) * det(A) = det(condensed at (k,l)).
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            pivot_value = m.get(k, l)
            if kind.is_zero(pivot_value):
                continue
            step = condense_at(m, PivotSpec(k, l))
            lhs = pivot_value ** (n - 2) * det_full
            residual = lhs - det_bareiss(step.condensed)
            report(f"condense-identity pivot=({k},{l})", residual, lhs)

    # Dodgson minor identity for every row/column pair k < l.
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            residual = dodgson_identity_residual(m, k, l)
            lhs = det_full * det_bareiss(remove_rows_cols(m, (k, l), (k, l)))
            report(f"dodgson-identity rows/cols=({k},{l})", residual, lhs)

    status = "ok" if failures == 0 else "FAILED"
    print(f"verify {status}: {checked - failures}/{checked} identities hold")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


def cmd_bench(args: argparse.Namespace) -> int:
    if args.config is None:
        cfg = DEFAULT_CONFIG
    else:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
            return EXIT_USER_ERROR
        except json.JSONDecodeError as exc:
            print(f"error: invalid JSON in {args.config}: {exc}", file=sys.stderr)
            return EXIT_USER_ERROR
        cfg = BenchConfig.from_dict(doc)
    if args.seed is not None:
        cfg = BenchConfig(
            sizes=cfg.sizes,
            trials_per_size=cfg.trials_per_size,
            entry_bound=cfg.entry_bound,
            seed=args.seed,
            methods=cfg.methods,
        )
    records = run_bench(cfg)
    text = format_report(records)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="condet",
        description="Exact determinants by pivot-anchored condensation, with oracles and a bench.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    det = sub.add_parser("det", help="print the determinant of a matrix file")
    det.add_argument("file", help="matrix file (plain rows or JSON object)")
    det.add_argument(
        "--method",
        choices=("condense", "cofactor", "bareiss", "gauss"),
        default="condense",
        help="determinant algorithm (default: condense)",
    )
    det.add_argument(
        "--scalar",
        choices=tuple(KINDS),
        default="rational",
        help="scalar kind for parsing and arithmetic (default: rational)",
    )
    det.add_argument(
        "--pivot",
        choices=tuple(s.value for s in PivotStrategy),
        default=PivotStrategy.FIRST_NONZERO.value,
        help="pivot strategy for --method condense (default: first-nonzero)",
    )
    det.add_argument(
        "--trace",
        metavar="PATH",
        help="write the per-level condensation trace as JSON (condense only)",
    )
    det.set_defaults(func=cmd_det)

    verify = sub.add_parser("verify", help="check the condensation and minor identities on a matrix")
    verify.add_argument("file", help="matrix file (plain rows or JSON object)")
    verify.add_argument(
        "--scalar",
        choices=tuple(KINDS),
        default="rational",
        help="scalar kind for parsing and arithmetic (default: rational)",
    )
    verify.set_defaults(func=cmd_verify)

    bench = sub.add_parser("bench", help="run the seeded determinant bench")
    bench.add_argument(
        "config",
        nargs="?",
        default=None,
        help="JSON bench config (default: the built-in config, "
        "mirrored in fixtures/bench_default.json)",
    )
    bench.add_argument("--seed", type=int, default=None, help="override the config seed")
    bench.add_argument("--out", default="-", help="report path (default: stdout)")
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MatrixFileError, ScalarParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER_ERROR
    except (ExactDivisionError, MethodDisagreement) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end: ``radial {expand,moments,opval,verify,bench}``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments,
3 term limit exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from .algebra import TERM_LIMIT_ENV, TermLimitError, default_term_limit
from .bench import BENCH_SCHEMA, bench_brute, bench_recurrence
from .expansion import (
    expand_power,
    expansion_to_dict,
    format_expansion,
    moment_series,
    moments_to_csv,
    moments_to_dict,
)
from .expectation import (
    CommutatorSpec,
    format_laurent,
    opval_moment_series,
    opval_series_to_csv,
    opval_to_dict,
)
from .oracle import MISMATCH, verify_expansion, verify_opval
from .words import GroupSpec, WordError

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="radial", description="Exact moments of the radial operator of F_N.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=2, help="number of free generators (default 2)")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--term-limit", type=_positive, metavar="COUNT",
                        help=f"brute-force term budget (default ${TERM_LIMIT_ENV} or 2e7)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="G^n in the sphere basis")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--format", choices=["json", "csv", "pretty"], default="json")

    p = sub.add_parser("moments", parents=[common], help="table of tau(G^n)")
    p.add_argument("--max", type=_positive, required=True, dest="max")
    p.add_argument("--format", choices=["json", "csv", "pretty"], default="csv")

    p = sub.add_parser("opval", parents=[common], help="E(G^n) over L(K)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=_positive)
    group.add_argument("--max", type=_positive, dest="max")
    p.add_argument("--format", choices=["json", "csv", "pretty"], default="json")

    p = sub.add_parser("verify", parents=[common], help="cross-check recurrence, brute force and tree walks")
    p.add_argument("--max-brute", type=_positive, default=10, dest="max_brute")
    p.add_argument("--max", type=_positive, dest="max",
                   help="range for the recurrence/tree-walk check (default: --max-brute)")
    p.add_argument("--format", choices=["json", "pretty"], default="json")

    p = sub.add_parser("bench", parents=[common], help="time recurrence vs brute force")
    p.add_argument("--max", type=_positive, default=1000, dest="max")
    p.add_argument("--max-brute", "--brute-max", type=int, default=0, dest="max_brute")
    p.add_argument("--format", choices=["json", "csv", "pretty"], default="pretty")
    return parser


def _spec(args) -> GroupSpec:
    try:
        return GroupSpec(args.N)
    except WordError as exc:
        raise UsageError(str(exc)) from None


def _term_limit(args) -> int:
    if args.term_limit is not None:
        return args.term_limit
    try:
        return default_term_limit()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def cmd_expand(args) -> tuple[int, str]:
    v = expand_power(_spec(args), args.n)
    if args.format == "pretty":
        return EXIT_OK, format_expansion(v) + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "coefficient"])
        for k, c in v.nonzero().items():
            writer.writerow([k, str(c)])
        return EXIT_OK, buf.getvalue()
    return EXIT_OK, _json(expansion_to_dict(v))


def cmd_moments(args) -> tuple[int, str]:
    table = moment_series(_spec(args), args.max)
    if args.format == "csv":
        return EXIT_OK, moments_to_csv(table)
    if args.format == "pretty":
        width = len(str(args.max))
        return EXIT_OK, "".join(f"tau(G^{n:<{width}}) = {v}\n" for n, v in table.rows)
    return EXIT_OK, _json(moments_to_dict(table))


def cmd_opval(args) -> tuple[int, str]:
    cspec = CommutatorSpec(_spec(args))
    n_max = args.n if args.n is not None else args.max
    table = opval_moment_series(cspec, n_max)
    rows = table.rows if args.n is None else table.rows[-1:]
    if args.format == "csv":
        return EXIT_OK, opval_series_to_csv(type(table)(cspec, rows))
    if args.format == "pretty":
        return EXIT_OK, "".join(f"E(G^{n}) = {format_laurent(v)}\n" for n, v in rows)
    docs = [opval_to_dict(v, n) for n, v in rows]
    return EXIT_OK, _json(docs[0] if args.n is not None else docs)


def cmd_verify(args) -> tuple[int, str]:
    spec = _spec(args)
    limit = _term_limit(args)
    n_max = max(args.max or args.max_brute, args.max_brute)
    reports = [
        verify_expansion(spec, n_max, max_brute=args.max_brute, term_limit=limit),
        verify_opval(CommutatorSpec(spec), n_max, max_brute=args.max_brute, term_limit=limit),
    ]
    status = EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH
    if args.format == "json":
        return status, _json([r.to_dict() for r in reports])
    lines = []
    for r in reports:
        lines.append(f"# {r.method}  N={r.N}  n={r.n_range[0]}..{r.n_range[1]}")
        for row in r.results:
            detail = ""
            if "checks" in row:
                detail = "  " + " ".join(f"{k}={v}" for k, v in row["checks"].items())
            if row["status"] == MISMATCH:
                detail += "  " + json.dumps(row["values"])
            lines.append(f"n={row['n']:<4} {row['status']:<17} {row['ms']:>10.3f} ms{detail}")
        lines.extend(f"note: {note}" for note in r.notes)
    lines.append("OK" if status == EXIT_OK else "MISMATCH")
    return status, "\n".join(lines) + "\n"


BENCH_FIELDS = ["method", "n", "ms", "terms", "predicted_terms", "moment_digits", "error"]


def cmd_bench(args) -> tuple[int, str]:
    spec = _spec(args)
    rows = bench_recurrence(spec, args.max)
    if args.max_brute > 0:
        rows += bench_brute(spec, args.max_brute, term_limit=_term_limit(args))
    if args.format == "json":
        return EXIT_OK, _json({"schema": BENCH_SCHEMA, "N": spec.N, "rows": rows})
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return EXIT_OK, buf.getvalue()
    lines = [f"{'method':<11}{'n':>7}{'ms':>14}{'terms':>12}{'predicted':>12}"]
    for row in rows:
        ms = "-" if row["ms"] is None else f"{row['ms']:.3f}"
        terms = "-" if row["terms"] is None else str(row["terms"])
        line = f"{row['method']:<11}{row['n']:>7}{ms:>14}{terms:>12}{row['predicted_terms']:>12}"
        if "error" in row:
            line += f"  {row['error']}"
        lines.append(line)
    return EXIT_OK, "\n".join(lines) + "\n"


COMMANDS = {
    "expand": cmd_expand,
    "moments": cmd_moments,
    "opval": cmd_opval,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".radial-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status, text = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"radial: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TermLimitError as exc:
        print(f"radial: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    _write(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 invalid records found, 2 usage or I/O error,
3 census outside the engine's capability.
"""

import argparse
import json
import logging
import os
import sys
import tempfile
from contextlib import contextmanager
from pathlib import Path

from . import __version__
from .cache import default_cache_dir
from .census import CensusQuery, Filter, enumerate_semirings, verify_semiring
from .errors import CapabilityError, UsageError
from .report import render, reproduce
from .tables import Mode, OpTable

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_CAPABILITY = 0, 1, 2, 3

log = logging.getLogger("semirings")


def _dump(obj):
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


@contextmanager
def _output(path):
    """Write to stdout, or atomically to ``path`` (no partial files on error)."""
    if path is None:
        yield sys.stdout
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            yield fh
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _query(args):
    return CensusQuery(
        args.order,
        Mode.parse(args.equiv),
        Filter(with_zero=args.with_zero, with_one=args.with_one, ai=args.ai,
               commutative_mul=args.commutative),
    )


def _cache_dir(args):
    return Path(args.cache_dir) if args.cache_dir else default_cache_dir()


def _census(args, emit=False):
    return enumerate_semirings(_query(args), emit=emit, threads=args.threads,
                               cache_dir=_cache_dir(args), long_run=args.long_run)


def cmd_count(args):
    result = _census(args)
    prov = result.provenance
    print(result.count)
    print(f"additive classes visited: {prov.additive_classes}")
    print(f"multiplicative classes visited: {prov.multiplicative_classes}")
    print(f"double cosets tested: {prov.double_cosets}")
    print(f"distributive hits: {prov.distributive_hits}")
    return EXIT_OK


def cmd_table(args):
    rows = reproduce(args.table, args.max_order, threads=args.threads,
                     cache_dir=_cache_dir(args), long_run=args.long_run)
    text = render(args.table, rows, args.format or "csv")
    with _output(args.out) as fh:
        fh.write(text)
    return EXIT_OK


def semiring_record(pair):
    return {"n": pair.n, "add": pair.add.rows(), "mul": pair.mul.rows()}


def cmd_enumerate(args):
    result = _census(args, emit=True)
    q = result.query
    with _output(args.out) as fh:
        for pair in result.pairs:
            fh.write(_dump(semiring_record(pair)) + "\n")
        summary = {
            "summary": True,
            "count": result.count,
            "n": q.n,
            "equiv": q.equiv.value,
            "filter": q.filter.label(),
            "provenance": vars(result.provenance),
        }
        fh.write(_dump(summary) + "\n")
    return EXIT_OK


def parse_record(line):
    """(add, mul) from one JSONL record; raises UsageError on bad input."""
    try:
        obj = json.loads(line)
    except ValueError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise UsageError("record is not a JSON object")
    missing = [k for k in ("n", "add", "mul") if k not in obj]
    if missing:
        raise UsageError(f"missing field(s): {', '.join(missing)}")
    try:
        add = OpTable.from_rows(obj["add"])
        mul = OpTable.from_rows(obj["mul"])
    except (TypeError, UsageError) as exc:
        raise UsageError(f"bad table: {exc}") from None
    if add.n != obj["n"] or mul.n != obj["n"]:
        raise UsageError(f"declared n={obj['n']!r} does not match table sizes")
    return add, mul


def check_lines(lines):
    """Yield one report dict per non-summary line, plus the totals at the end."""
    records = invalid = malformed = 0
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            if json.loads(line).get("summary"):
                continue
        except (ValueError, AttributeError):
            pass
        records += 1
        try:
            add, mul = parse_record(line)
        except UsageError as exc:
            malformed += 1
            invalid += 1
            yield {"line": lineno, "valid": False, "error": str(exc)}
            continue
        report = verify_semiring(add, mul)
        if not report.ok:
            invalid += 1
        entry = {"line": lineno}
        entry.update(report.as_dict())
        yield entry
    yield {"summary": True, "records": records, "invalid": invalid, "malformed": malformed}


def cmd_check(args):
    try:
        fh = open(args.input, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    invalid = 0
    with fh, _output(args.out) as out:
        for entry in check_lines(fh):
            if entry.get("summary"):
                invalid = entry["invalid"]
            elif not entry["valid"]:
                what = entry.get("error") or "; ".join(
                    f"{c['axiom']} fails at {tuple(c['witness'])}"
                    for c in entry["checks"] if not c["ok"])
                log.warning("line %d: %s", entry["line"], what)
            out.write(_dump(entry) + "\n")
    return EXIT_INVALID if invalid else EXIT_OK


def build_parser():
    census = argparse.ArgumentParser(add_help=False)
    census.add_argument("--order", "-n", type=int, required=True)
    census.add_argument("--equiv", choices=["iso", "anti"], default="iso",
                        help="up to isomorphism, or up to isomorphism or anti-isomorphism")
    census.add_argument("--ai", action="store_true", help="additively idempotent")
    census.add_argument("--with-zero", action="store_true")
    census.add_argument("--with-one", action="store_true")
    census.add_argument("--commutative", action="store_true",
                        help="commutative multiplication")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--cache-dir", default=None,
                        help="semigroup cache directory (default: $SEMIRINGS_CACHE_DIR)")
    common.add_argument("--long-run", action="store_true",
                        help="allow censuses of order 6 and above")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="semirings", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[census, common], help="count semirings")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", parents=[common], help="reproduce a published count table")
    p.add_argument("--table", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--format", choices=["csv", "markdown", "jsonl"], default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("enumerate", parents=[census, common], help="write semirings as JSONL")
    p.add_argument("--format", choices=["jsonl"], default="jsonl")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check", parents=[common], help="validate JSONL table pairs")
    p.add_argument("input")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except CapabilityError as exc:
        print(f"semirings: unsupported census: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except UsageError as exc:
        print(f"semirings: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"semirings: {exc.filename or ''}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

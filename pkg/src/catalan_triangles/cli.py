"""Command line front end: exact values, identity sweeps, conjecture scans.

Exit codes are never conflated: 0 means every check passed, 1 means a
mathematical mismatch or counterexample was found, 2 means the request
itself was bad.  All output is deterministic; timing fields can be dropped
with --no-timing so that runs diff cleanly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import conjectures, identities, triangles
from .errors import DomainError, IntegrityError, UsageError
from .exact import binomial, harmonic

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2

JOBS_ENV_VAR = "CATALAN_TRIANGLES_JOBS"


def _span(text: str) -> tuple[int, int]:
    """Parse 'a..b' (inclusive both ends) or a single integer 'a'."""
    lo, sep, hi = text.partition("..")
    try:
        if sep:
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected INT or INT..INT, got %r" % text) from None


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV_VAR, "1")))
    except ValueError:
        return 1


# --- value ------------------------------------------------------------------

_VALUE_FUNCTIONS = {
    "c": (2, triangles.c_number),
    "b": (2, triangles.b_number),
    "a": (2, triangles.a_number),
    "catalan": (1, triangles.catalan),
    "gen-catalan": (2, triangles.gen_catalan),
    "seq-a": (1, triangles.seq_a),
    "seq-b": (1, triangles.seq_b),
    "harmonic": (1, harmonic),
    "binomial": (2, binomial),
}


def _cmd_value(args) -> int:
    arity, function = _VALUE_FUNCTIONS[args.name]
    if len(args.indices) != arity:
        raise UsageError("%s takes %d index argument(s), got %d" % (args.name, arity, len(args.indices)))
    print(function(*args.indices))
    return EXIT_OK


# --- verify -----------------------------------------------------------------


def _cli_ranges(args, ident) -> dict[str, tuple[int, int]]:
    flags = {"m": args.m, "n": args.n, "k": args.k, "i": args.i}
    names = ident.parameter_names()
    return {name: span for name, span in flags.items() if span is not None and name in names}


def _print_plain_report(report, show_timing: bool) -> None:
    timing = ", %.1f ms" % report.elapsed_ms if show_timing else ""
    print("%s: %s (%d cells%s)" % (report.identity, report.status, report.cells, timing))
    for mismatch in report.mismatches:
        cell = " ".join("%s=%d" % pair for pair in mismatch.assignment)
        print("  mismatch at %s: lhs=%s rhs=%s" % (cell, mismatch.lhs, mismatch.rhs))


def _cmd_verify(args) -> int:
    if args.identity == "all":
        idents = identities.list_identities()
    else:
        idents = [identities.get_identity(args.identity)]
    show_timing = not args.no_timing
    reports = []
    for ident in idents:
        reports.append(
            identities.verify_identity(
                ident,
                ranges=_cli_ranges(args, ident),
                parallelism=args.jobs,
                fail_fast=args.fail_fast,
                allow_outside_domain=args.allow_outside_domain,
                cap=args.max,
            )
        )
    if args.format == "json":
        docs = [report.to_dict(include_timing=show_timing) for report in reports]
        print(json.dumps(docs[0] if args.identity != "all" else docs, indent=2))
    else:
        for report in reports:
            _print_plain_report(report, show_timing)
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FINDING


# --- scan -------------------------------------------------------------------

_SCAN_VARIANTS = {
    "c-powers": "c",
    "b-cubes": "b",
    "a-cubes": "a",
    "c": "c",
    "b": "b",
    "a": "a",
}


def _print_plain_state(state, show_timing: bool) -> None:
    label = state.conjecture if state.p is None else "%s p=%d" % (state.conjecture, state.p)
    timing = ", %.1f ms" % state.elapsed_ms if show_timing else ""
    print(
        "%s: %d cells processed, %d counterexamples%s"
        % (label, state.processed, len(state.counterexamples), timing)
    )
    if state.skipped_zero_divisor:
        print("  zero-divisor cells skipped: %d" % state.skipped_zero_divisor)
    if state.frontier is not None:
        print("  incomplete, next cell: %s" % (list(state.frontier),))
    for record in state.counterexamples:
        cell = " ".join("%s=%d" % pair for pair in sorted(record["assignment"].items()))
        detail = {key: value for key, value in record.items() if key != "assignment"}
        print("  counterexample at %s: %s" % (cell, json.dumps(detail, sort_keys=True)))


def _cmd_scan(args) -> int:
    checkpoint = None
    if args.checkpoint and os.path.exists(args.checkpoint):
        checkpoint = conjectures.load_checkpoint(args.checkpoint)

    if args.variant == "mixed":
        if args.p is not None:
            raise UsageError("the mixed scan takes no exponent; drop --p")
        if args.n is None or args.m is None:
            raise UsageError("scan mixed needs both --n and --m ranges")
        state = conjectures.scan_mixed(
            args.n, args.m, checkpoint=checkpoint, jobs=args.jobs, max_cells=args.limit
        )
    else:
        variant = _SCAN_VARIANTS[args.variant]
        if args.p is None:
            raise UsageError("scan %s needs an odd exponent --p" % args.variant)
        state = conjectures.scan_divisibility(
            variant,
            args.p,
            n_range=args.n,
            m_range=args.m,
            checkpoint=checkpoint,
            jobs=args.jobs,
            max_cells=args.limit,
        )

    if args.checkpoint:
        conjectures.save_checkpoint(state, args.checkpoint)
    if args.format == "json":
        print(json.dumps(state.to_dict(include_timing=not args.no_timing), indent=2))
    else:
        _print_plain_state(state, show_timing=not args.no_timing)
    return EXIT_FINDING if state.counterexamples else EXIT_OK


# --- seq --------------------------------------------------------------------

_SEQ_KINDS = {"catalan": "catalan", "a": "seq_a", "b": "seq_b"}
_SEQ_PARAMETRIC_KINDS = {"gen-catalan": "gen_catalan", "c-row": "c_row", "b-row": "b_row", "a-row": "a_row"}


def _parse_seq_name(name: str) -> tuple[str, int | None]:
    base, sep, param = name.partition(":")
    if not sep:
        if base in _SEQ_KINDS:
            return _SEQ_KINDS[base], None
        raise UsageError(
            "unknown sequence %r; expected one of %s or %s with ':INDEX'"
            % (name, sorted(_SEQ_KINDS), sorted(_SEQ_PARAMETRIC_KINDS))
        )
    if base not in _SEQ_PARAMETRIC_KINDS:
        raise UsageError("unknown parametric sequence %r" % name)
    try:
        return _SEQ_PARAMETRIC_KINDS[base], int(param)
    except ValueError:
        raise UsageError("bad index in %r; expected %s:INT" % (name, base)) from None


def _cmd_seq(args) -> int:
    kind, param = _parse_seq_name(args.name)
    values = triangles.generate(triangles.SequenceSpec(kind, args.start, args.count, param))
    indices = range(args.start, args.start + args.count)
    if args.format == "plain":
        print(" ".join(str(v) for v in values))
    elif args.format == "csv":
        print(",".join(str(v) for v in values))
    elif args.format == "oeis-bfile":
        sys.stdout.write("".join("%d %d\n" % (i, v) for i, v in zip(indices, values)))
    elif args.format == "json":
        print(json.dumps(
            {"name": args.name, "start": args.start, "count": args.count,
             "terms": [str(v) for v in values]},
            indent=2,
        ))
    else:  # plain-table
        width = len(str(indices[-1]))
        for i, v in zip(indices, values):
            print("%*d  %s" % (width, i, v))
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catalan-triangles",
        description="Exact Catalan-triangle values, identity sweeps, and conjecture scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    value = sub.add_parser("value", help="print one exact value")
    value.add_argument("name", choices=sorted(_VALUE_FUNCTIONS))
    value.add_argument("indices", nargs="+", type=int)
    value.set_defaults(handler=_cmd_value)

    verify = sub.add_parser("verify", help="sweep an identity (or all) over parameter ranges")
    verify.add_argument("identity", help="registered identity id, or 'all'")
    for flag in ("m", "n", "k", "i"):
        verify.add_argument("--%s" % flag, type=_span, default=None, metavar="A..B",
                            help="range for parameter %s" % flag)
    verify.add_argument("--max", type=int, default=None,
                        help="upper bound for parameters without an explicit range")
    verify.add_argument("--jobs", type=int, default=_default_jobs())
    verify.add_argument("--format", choices=("plain", "json"), default="plain")
    verify.add_argument("--fail-fast", action="store_true",
                        help="stop a sweep at its first mismatch")
    verify.add_argument("--allow-outside-domain", action="store_true",
                        help="explore cells outside the identity's stated domain")
    verify.add_argument("--no-timing", action="store_true",
                        help="omit elapsed-time fields for diffable output")
    verify.set_defaults(handler=_cmd_verify)

    scan = sub.add_parser("scan", help="search a conjecture domain for counterexamples")
    scan.add_argument("variant", choices=sorted(set(_SCAN_VARIANTS) | {"mixed"}))
    scan.add_argument("--p", type=int, default=None, help="odd exponent for divisibility scans")
    scan.add_argument("--n", type=_span, default=None, metavar="A..B")
    scan.add_argument("--m", type=_span, default=None, metavar="A..B")
    scan.add_argument("--checkpoint", default=None, metavar="PATH",
                      help="resume from PATH if present; save final state there")
    scan.add_argument("--limit", type=int, default=None, metavar="CELLS",
                      help="process at most CELLS cells this run")
    scan.add_argument("--jobs", type=int, default=_default_jobs())
    scan.add_argument("--format", choices=("plain", "json"), default="plain")
    scan.add_argument("--no-timing", action="store_true")
    scan.set_defaults(handler=_cmd_scan)

    seq = sub.add_parser("seq", help="print a slice of a sequence or triangle row")
    seq.add_argument("name", help="catalan | a | b | gen-catalan:K | c-row:M | b-row:N | a-row:N")
    seq.add_argument("start", type=int)
    seq.add_argument("count", type=int)
    seq.add_argument("--format", choices=("plain", "csv", "json", "oeis-bfile", "plain-table"),
                     default="plain")
    seq.set_defaults(handler=_cmd_seq)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (UsageError, DomainError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except IntegrityError as exc:
        print("integrity error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())

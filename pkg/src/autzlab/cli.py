"""Command-line entry point: ``autzlab analyze|verify|oracle-compare``.

Exit codes: 0 every check passed, 1 a verdict failed (or a check could not
be decided), 2 bad input (parse, realize, unknown id, missing directory).
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .catalog import _declared_prime, catalog_files, default_catalog_dir, load_entry
from .errors import AutzLabError, NotPurelyNonabelian, ScopeExceeded, UnknownTheoremId
from .pcp import load_presentation, realize
from .report import (
    VerificationSummary,
    analyze_group,
    oracle_compare,
    verify_group,
)
from .theorems import THEOREM_IDS, resolve_ids

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _load_group(path):
    return realize(load_presentation(path))


def _emit(text: str):
    sys.stdout.write(text)
    sys.stdout.flush()


def cmd_analyze(args) -> int:
    try:
        G = _load_group(args.file)
    except (AutzLabError, ValueError, OSError) as exc:
        print(f"error: {args.file}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = analyze_group(G)
    _emit(report.to_csv() if args.format == "csv" else report.to_text())
    if args.figures:
        from .plotting import plot_series

        out = plot_series(report, args.figures)
        print(f"figure: {out}", file=sys.stderr)
    failed = any(v.applicable and not v.passed for v in report.verdicts)
    return EXIT_FAILED if failed else EXIT_OK


def _verify_one(path: Path, ids, want_counts: bool):
    """Worker: load one catalog file and run the requested checks."""
    try:
        entry = load_entry(path)
    except (AutzLabError, ValueError, IndexError, OSError) as exc:
        return ("error", path.name, f"{type(exc).__name__}: {exc}", None)
    G = entry.group
    rows = verify_group(ids, G, entry.name)
    counts = None
    if want_counts and not G.is_abelian():
        from .central_aut import autz_equals_zinn

        try:
            v = autz_equals_zinn(G)
            counts = (v.autz_enumerated, v.z_inn)
        except ScopeExceeded:
            pass
    return ("ok", entry.name, rows, counts)


def cmd_verify(args) -> int:
    try:
        ids = resolve_ids(args.theorem_id)
    except UnknownTheoremId as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    directory = Path(args.directory) if args.directory else default_catalog_dir()
    try:
        paths = catalog_files(directory)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    skipped = []
    todo = []
    for path in paths:
        if not args.include_p5 and _declared_prime(path) == 5:
            skipped.append(path.name)
        else:
            todo.append(path)
    want_counts = bool(args.figures)
    if args.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_one, todo, [ids] * len(todo), [want_counts] * len(todo)))
    else:
        results = [_verify_one(p, ids, want_counts) for p in todo]

    order = {tid: k for k, tid in enumerate(ids)}
    rows, load_errors, counts = [], [], {}
    for kind, name, payload, c in results:
        if kind == "error":
            load_errors.append((name, payload))
        else:
            rows.extend(payload)
            if c is not None:
                counts[name] = c
    rows.sort(key=lambda r: (r.entry, order[r.theorem_id]))
    load_errors.sort()
    summary = VerificationSummary(rows, load_errors, sorted(skipped))
    _emit(summary.to_csv() if args.format == "csv" else summary.to_text())
    if args.figures and counts:
        from .plotting import plot_autz_vs_zinn

        names = sorted(counts)
        out = plot_autz_vs_zinn(names, [counts[n][0] for n in names], [counts[n][1] for n in names], args.figures)
        print(f"figure: {out}", file=sys.stderr)
    return summary.exit_code()


def cmd_oracle_compare(args) -> int:
    try:
        G = _load_group(args.file)
    except (AutzLabError, ValueError, OSError) as exc:
        print(f"error: {args.file}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        result = oracle_compare(G)
    except NotPurelyNonabelian as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ScopeExceeded as exc:
        print(f"error: out of scope: {exc}", file=sys.stderr)
        return EXIT_FAILED
    _emit(result.to_csv() if args.format == "csv" else result.to_text())
    return EXIT_OK if result.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv"), default="text")
    common.add_argument("--figures", metavar="DIR", help="also write PNG charts into DIR")

    parser = argparse.ArgumentParser(prog="autzlab", description="Central automorphisms of finite p-groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="invariant report for one presentation file")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="run equality checks over a catalog directory")
    v.add_argument("theorem_id", metavar="theorem-id", help=f"one of {', '.join(THEOREM_IDS)}")
    v.add_argument("directory", nargs="?", help="catalog directory (default: the shipped catalog)")
    v.add_argument("--include-p5", action="store_true", help="also run p=5 entries")
    v.add_argument("--jobs", type=int, default=1, metavar="K", help="worker processes")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle-compare", parents=[common], help="counting formula vs enumeration")
    o.add_argument("file")
    o.set_defaults(func=cmd_oracle_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success / pair holds, 1 checked and false / counterexample
found, 2 usage or input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from .certificates import is_spectral_pair, is_tiling_pair, verify_hadamard
from .constructors import decide
from .fourier_zeros import fourier_value_float, is_zero, orbit_representatives, unit_orbit, zero_set
from .group_core import FugledeError, GroupParams, SubsetMask
from .search.harness import SearchBudget, default_workers, verify_conjecture
from .textio import dumps, format_elem, parse_group, parse_subset, read_subset_file, subset_json

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _add_set_args(ap: argparse.ArgumentParser, name: str = "set", flag: str = "--set") -> None:
    ap.add_argument(flag, dest=name, help="elements '(d1,d2);...' or hex mask '0x...'")
    ap.add_argument(flag + "-file", dest=name + "_file", help="file with one element per line")


def _read_set(args, G: GroupParams, name: str = "set") -> SubsetMask:
    text, path = getattr(args, name), getattr(args, name + "_file")
    if (text is None) == (path is None):
        raise UsageError(f"give exactly one of --{name.replace('_', '-')} / --{name.replace('_', '-')}-file")
    return parse_subset(text, G) if text is not None else read_subset_file(path, G)


def _nonempty(A: SubsetMask) -> SubsetMask:
    if A.is_empty():
        raise UsageError("empty set")
    return A


def _parse_sizes(text: str, G: GroupParams) -> list[int]:
    if text.strip() == "all":
        return list(range(G.order + 1))
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {text!r}") from None


def cmd_zeros(args) -> int:
    G = parse_group(args.group)
    A = _nonempty(_read_set(args, G))
    Z = zero_set(A)
    if args.float_check:
        rows = []
        for d in G.elements():
            if d == (0, 0):
                continue
            rows.append({"direction": format_elem(d, G), "zero": is_zero(A, d),
                         "abs_float": round(abs(fourier_value_float(A, d)), 12)})
        _emit(args, {"zeros": subset_json(Z.members), "float_check": rows})
    elif args.format == "plain":
        print("\n".join(subset_json(Z.members)))
    else:
        print(dumps(subset_json(Z.members)))
    return EXIT_OK


def cmd_check(args) -> int:
    G = parse_group(args.group)
    GB = parse_group(args.group_b) if args.group_b else G
    if GB != G:
        raise UsageError("sets live in different groups")
    A = _nonempty(_read_set(args, G))
    B = _nonempty(_read_set(args, GB, "set_b"))
    verdict = is_spectral_pair(A, B) if args.kind == "spectral" else is_tiling_pair(A, B)
    out = verdict.to_json(G)
    if args.float_check and args.kind == "spectral" and A.cardinality == B.cardinality:
        out["hadamard"] = verify_hadamard(A, B)
    _emit(args, out)
    return EXIT_OK if verdict.holds else EXIT_FALSE


def cmd_decide(args) -> int:
    G = parse_group(args.group)
    A = _nonempty(_read_set(args, G))
    dec = decide(A)
    out = dec.to_json()
    if args.float_check and dec.spectrum is not None:
        out["hadamard"] = verify_hadamard(A, dec.spectrum)
    _emit(args, out)
    return EXIT_OK


def cmd_verify(args) -> int:
    G = parse_group(args.group)
    budget = SearchBudget(
        max_group_order=args.max_group_order,
        max_subsets=args.max_subsets,
        worker_count=args.workers,
        random_seed=args.seed,
    )
    report = verify_conjecture(
        G, _parse_sizes(args.sizes, G), budget, canonical=args.canonical,
        mode=args.mode, rows=args.format == "csv" or bool(args.csv),
    )
    print(f"examined {report.subsets_examined} subsets in {report.wall_clock:.2f}s", file=sys.stderr)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            _write_rows(fh, report.rows or [])
    if args.format == "csv":
        buf = io.StringIO()
        _write_rows(buf, report.rows or [])
        sys.stdout.write(buf.getvalue())
    else:
        print(dumps(report.to_json(with_timing=False)))
    if report.counterexamples:
        return EXIT_FALSE
    return EXIT_OK if report.complete else EXIT_INCOMPLETE


def cmd_orbits(args) -> int:
    G = parse_group(args.group)
    reps = orbit_representatives(G)
    if args.format == "plain":
        for d in reps:
            print(f"{format_elem(d, G)}\t{len(unit_orbit(d, G))}")
    else:
        print(dumps([{"rep": format_elem(d, G), "size": len(unit_orbit(d, G))} for d in reps]))
    return EXIT_OK


def _write_rows(fh, rows) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["bitmask", "size", "is_spectral", "is_tile", "provenance"])
    w.writerows(rows)


def _emit(args, obj) -> None:
    if getattr(args, "format", "json") == "plain":
        for key in sorted(obj):
            print(f"{key}: {obj[key]}")
    else:
        print(dumps(obj))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fuglede-lab",
        description="Spectral sets and tiles in Z_{p^n} x Z_{p^m}. Formats: see FORMATS.md.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formats=("json", "plain")) -> None:
        p.add_argument("--group", required=True, help="group descriptor 'p,n,m'")
        p.add_argument("--format", choices=formats, default="json")

    z = sub.add_parser("zeros", help="print the Fourier zero set of a subset")
    common(z)
    _add_set_args(z)
    z.add_argument("--float-check", action="store_true", help="add floating-point |sum| per direction")
    z.set_defaults(func=cmd_zeros)

    c = sub.add_parser("check", help="check a spectral or tiling pair")
    c.add_argument("kind", choices=("spectral", "tiling"))
    common(c)
    c.add_argument("--group-b", help="group of the second set (must match --group)")
    _add_set_args(c)
    _add_set_args(c, "set_b", "--set-b")
    c.add_argument("--float-check", action="store_true", help="add the Hadamard-matrix float check")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("decide", help="decide spectral and tile status with witnesses")
    common(d)
    _add_set_args(d)
    d.add_argument("--float-check", action="store_true", help="add the Hadamard-matrix float check")
    d.set_defaults(func=cmd_decide)

    v = sub.add_parser("verify", help="check spectral <=> tile over enumerated subsets")
    common(v, ("json", "csv"))
    v.add_argument("--sizes", default="all", help="'all' or comma-separated sizes")
    v.add_argument("--canonical", action="store_true", help="one subset per translation class")
    v.add_argument("--mode", choices=("theorem", "exploration"))
    v.add_argument("--max-subsets", type=int)
    v.add_argument("--max-group-order", type=int, default=SearchBudget().max_group_order)
    v.add_argument("--workers", type=int, default=None, help="default: $FUGLEDE_LAB_WORKERS or 1")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--csv", help="also write one CSV row per examined subset to this path")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("orbits", help="print unit-orbit representatives")
    common(o)
    o.set_defaults(func=cmd_orbits)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "workers", 1) is None:
        args.workers = default_workers()
    try:
        return args.func(args)
    except (UsageError, FugledeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

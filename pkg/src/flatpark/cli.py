"""Command-line surface: table reproduction, verification sweeps, and exports.

Exit codes: 0 success or all checks passed, 1 verification failure, 2 usage
error, 3 enumeration-ceiling exceeded.  All output is deterministic; the
``--jobs`` flag changes only how counting work is partitioned, never the
bytes produced.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import verify as verify_mod
from .bijections import BIJECTION_NAMES, verify_bijection
from .families import (
    FamilySpec,
    ResourceCeilingError,
    count_Bkr,
    count_family,
    count_family_by_runs,
    format_partition,
    gen_family,
)
from .gfseries import compare_gf
from .words import format_word, max_runs_bound

_FAMILY_ALIASES = {
    "permutations": "permutations",
    "parking-functions": "parking_functions",
    "flat-pf": "flat_pf",
    "s-insertion-pf": "s_insertion_pf",
    "flat-s-insertion": "flat_s_insertion",
    "set-partitions": "set_partitions",
    "restricted-set-partitions": "restricted_set_partitions",
}


def _parse_multiset(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted(int(part) for part in text.split(",") if part.strip()))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad multiset {text!r}: comma-separated integers") from exc


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# table1: flattened parking functions by length and run count
# ---------------------------------------------------------------------------


def _table1_rows(n_max: int, jobs: int) -> tuple[list[str], list[list[int]]]:
    k_cols = max(4, max_runs_bound(n_max))
    header = ["n", "total"] + [f"k={k}" for k in range(1, k_cols + 1)]
    rows = []
    for n in range(1, n_max + 1):
        by_runs = count_family_by_runs(FamilySpec("flat_pf", n), jobs=jobs)
        rows.append([n, sum(by_runs.values())] + [by_runs.get(k, 0) for k in range(1, k_cols + 1)])
    return header, rows


def _render_table(header: list[str], rows: list[list[int]], fmt: str) -> list[str]:
    if fmt == "csv":
        return [",".join(header)] + [",".join(str(v) for v in row) for row in rows]
    widths = [max(len(h), *(len(str(row[i])) for row in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    for row in rows:
        lines.append("  ".join(str(v).rjust(w) for v, w in zip(row, widths)))
    return lines


def _cmd_table1(args) -> int:
    header, rows = _table1_rows(args.n_max, args.jobs)
    if args.format == "json":
        payload = [{"n": r[0], "total": r[1],
                    "by_runs": {str(k): r[1 + k] for k in range(1, len(header) - 1)}}
                   for r in rows]
        _emit([json.dumps({"rows": payload}, indent=2, sort_keys=True)], args.out)
    else:
        _emit(_render_table(header, rows, args.format), args.out)
    return 0


# ---------------------------------------------------------------------------
# table2: the (r,k)-Bell triangles, doubly computed
# ---------------------------------------------------------------------------


def _cmd_table2(args) -> int:
    r_values = sorted(set(args.r_set))
    n_max = args.n_max
    disagreements = 0
    records = []
    for r in r_values:
        for n in range(1, n_max + 1):
            words_by_k = count_family_by_runs(FamilySpec("flat_s_insertion", n, (1,) * r),
                                              jobs=args.jobs)
            for k in range(1, n_max + 1):
                parts = count_Bkr(n, r, k)
                words = words_by_k.get(k, 0)
                if parts != words:
                    disagreements += 1
                records.append((r, n, k, parts, words))
    if args.format == "json":
        payload = [{"r": r, "n": n, "k": k, "partitions": p, "words": w, "agree": p == w}
                   for (r, n, k, p, w) in records]
        lines = [json.dumps({"cells": payload, "disagreements": disagreements},
                            indent=2, sort_keys=True)]
    elif args.format == "csv":
        lines = ["r,n,k,partitions,words,agree"]
        lines += [f"{r},{n},{k},{p},{w},{str(p == w).lower()}" for (r, n, k, p, w) in records]
    else:
        lines = []
        for r in r_values:
            lines.append(f"B_k(n,{r})  [partition count | word count]")
            lines.append("n\\k  " + "  ".join(f"{k:>11d}" for k in range(1, n_max + 1)))
            for n in range(1, n_max + 1):
                cells = []
                for k in range(1, n_max + 1):
                    rec = next(x for x in records if x[:3] == (r, n, k))
                    mark = "" if rec[3] == rec[4] else "*"
                    cells.append(f"{rec[3]:>5d}|{rec[4]:<5d}{mark}".rjust(11))
                lines.append(f"{n:>3d}  " + "  ".join(cells))
            lines.append("")
        lines.append("disagreements: " + ("none" if not disagreements else str(disagreements)))
    _emit(lines, args.out)
    return 0 if disagreements == 0 else 1


# ---------------------------------------------------------------------------
# verify: oracle sweeps
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    targets = list(args.targets)
    if targets == ["all"]:
        targets = list(verify_mod.ALL_TARGETS)
    unknown = [t for t in targets if t not in verify_mod.ALL_TARGETS]
    if unknown:
        raise UsageError(f"unknown verify target(s): {', '.join(unknown)}; "
                         f"choose from {', '.join(verify_mod.ALL_TARGETS)} or 'all'")
    results = [verify_mod.run_target(t, n_max=args.n_max, r_max=args.r_max,
                                     k_max=args.k_max, s_max=args.s_max)
               for t in targets]
    if args.format == "json":
        lines = [json.dumps([r.to_dict() for r in results], indent=2, sort_keys=True)]
    elif args.format == "csv":
        lines = ["target,status,checked,mismatches"]
        lines += [f"{r.target},{r.status},{r.checked},{len(r.mismatches)}" for r in results]
    else:
        lines = []
        for r in results:
            lines.append(f"{r.status}  {r.target}  (checked {r.checked})")
            lines.extend(f"    {m}" for m in r.mismatches)
            lines.extend(f"    {n}" for n in r.notes)
    _emit(lines, args.out)
    return 0 if all(r.passed is not False for r in results) else 1


# ---------------------------------------------------------------------------
# enumerate / count
# ---------------------------------------------------------------------------


def _spec_from_args(args) -> FamilySpec:
    family = _FAMILY_ALIASES[args.family]
    return FamilySpec(family, args.n, S=args.S or (), k=args.k, r=args.r)


def _cmd_enumerate(args) -> int:
    spec = _spec_from_args(args)
    lines = []
    for member in gen_family(spec):
        if isinstance(member, tuple) and member and isinstance(member[0], int):
            lines.append(format_word(member))
        else:
            lines.append(format_partition(member))
    _emit(lines, args.out)
    return 0


def _cmd_count(args) -> int:
    spec = _spec_from_args(args)
    value = count_family(spec, jobs=args.jobs)
    if args.format == "json":
        _emit([json.dumps({"count": value})], args.out)
    elif args.format == "csv":
        _emit(["count", str(value)], args.out)
    else:
        _emit([str(value)], args.out)
    return 0


# ---------------------------------------------------------------------------
# bijection / gf
# ---------------------------------------------------------------------------


def _cmd_bijection(args) -> int:
    report = verify_bijection(args.name, n=args.n, r=args.r, S=args.S, ell=args.ell)
    if args.format == "json":
        _emit([json.dumps(report.to_dict(), indent=2, sort_keys=True)], args.out)
    else:
        d = report.to_dict()
        lines = [f"bijection {d['name']} {d['params']}"]
        lines += [f"  {key}: {d[key]}" for key in
                  ("domain_size", "codomain_size", "injective", "surjective",
                   "image_in_codomain", "inverse_composes", "statistic_preserved", "ok")]
        lines += [f"  counterexample: {c}" for c in d["counterexamples"]]
        _emit(lines, args.out)
    return 0 if report.ok else 1


def _cmd_gf(args) -> int:
    cmp = compare_gf(args.n_max, args.k_max)
    if args.format == "json":
        _emit([cmp.to_json()], args.out)
    else:
        _emit(cmp.text_grid(), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser plumbing
# ---------------------------------------------------------------------------


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser, fmt_default: str = "text") -> None:
    p.add_argument("--format", choices=("text", "csv", "json"), default=fmt_default)
    p.add_argument("--out", default=None, help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatpark",
        description="Exact enumeration, recursions, and bijections for flattened parking functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="flattened parking functions by length and run count")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("table2", help="(r,k)-Bell triangles, by partitions and by words")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--r-set", type=_parse_multiset, default=(2, 3, 4, 5))
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=_cmd_table2)

    p = sub.add_parser("verify", help="sweep recursions/bijections against brute force")
    p.add_argument("targets", nargs="+", metavar="TARGET",
                   help=f"one of {', '.join(verify_mod.ALL_TARGETS)}, or 'all'")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--s-max", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("enumerate", help="stream family members, one per line")
    p.add_argument("--family", choices=sorted(_FAMILY_ALIASES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--S", type=_parse_multiset, default=None, help="insertion multiset, e.g. 1,1,2")
    p.add_argument("--k", type=int, default=None, help="run-count filter")
    p.add_argument("--r", type=int, default=None, help="first-r-separated restriction")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("count", help="count family members")
    p.add_argument("--family", choices=sorted(_FAMILY_ALIASES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--S", type=_parse_multiset, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("bijection", help="exhaustively check one bijection")
    p.add_argument("name", choices=BIJECTION_NAMES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--S", type=_parse_multiset, default=None)
    p.add_argument("--ell", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_bijection)

    p = sub.add_parser("gf", help="closed-form vs counts coefficient grid")
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--k-max", type=int, default=4)
    _add_common(p)
    p.set_defaults(func=_cmd_gf)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceCeilingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 success, 1 a spread check failed, 2 usage error, 3 I/O, parse
or other input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds
from .constructions import construct7, klee_padding, naive_insertion
from .corpus import corpus, lookup
from .errors import CircuitCodeError, VerificationError
from .fileformat import export_table, format_code_file, parse_code_file
from .model import CircuitCode, has_spread, is_simple_cycle, max_spread

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


def _read_code(spec: str) -> CircuitCode:
    if spec.startswith("corpus:"):
        return lookup(spec.split(":", 1)[1]).code
    data = sys.stdin.buffer.read() if spec == "-" else Path(spec).read_bytes()
    return parse_code_file(data)


def _write(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _range(s: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in s.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {s!r}") from None
    return lo, hi


def _grid(args) -> tuple[tuple[int, int], tuple[int, int]]:
    n_range, k_range = bounds.DEFAULT_N_RANGE, bounds.DEFAULT_K_RANGE
    if args.table_range:
        cfg = json.loads(Path(args.table_range).read_text())
        n_range = tuple(cfg.get("n", n_range))
        k_range = tuple(cfg.get("k", k_range))
    if args.n_range:
        n_range = args.n_range
    if args.k_range:
        k_range = args.k_range
    return n_range, k_range


def _table(args, propagated: bool) -> bounds.BoundTable:
    n_range, k_range = _grid(args)
    table = bounds.seed_table(n_range, k_range, codes=not args.no_corpus)
    return bounds.propagate(table) if propagated else table


def cmd_verify(args) -> int:
    code = _read_code(args.file)
    k = code.k if args.k is None else args.k
    simple = is_simple_cycle(code.seq, code.n)
    if not simple:
        print(f"not a simple cycle: {simple.describe()}")
        return EXIT_VIOLATION
    verdict = has_spread(code, k)
    print(f"spread {k}: {verdict.describe()}")
    return EXIT_OK if verdict else EXIT_VIOLATION


def cmd_spread(args) -> int:
    print(max_spread(_read_code(args.file)))
    return EXIT_OK


def _report(rep, label: str) -> None:
    n, k, N = rep.input_params
    n2, k2, N2 = rep.output_params
    print(
        f"{label}: ({n},{k},{N}) -> ({n2},{k2},{N2}); q={rep.q} r={rep.r} "
        f"insertions={rep.total_insertions}",
        file=sys.stderr,
    )


def cmd_construct7(args) -> int:
    rep = construct7(_read_code(args.file))
    _report(rep, "construct7")
    _write(format_code_file(rep.output), args.output)
    return EXIT_OK


def cmd_pad(args) -> int:
    rep = klee_padding(_read_code(args.file))
    _report(rep, "pad")
    _write(format_code_file(rep.output), args.output)
    return EXIT_OK


def cmd_naive(args) -> int:
    code = _read_code(args.file)
    seq = naive_insertion(code, args.offset)
    cand = CircuitCode(code.n + 1, code.k + 1, seq)
    _write(format_code_file(cand), args.output)
    return EXIT_OK


def cmd_table(args) -> int:
    table = _table(args, propagated=args.command == "propagate")
    if args.command == "propagate":
        print(f"fixpoint after {table.rounds} rounds, {len(table)} entries", file=sys.stderr)
    sys.stdout.write(export_table(table, args.format).decode())
    return EXIT_OK


def cmd_explain(args) -> int:
    table = _table(args, propagated=True)
    entry = table[(args.n, args.k)]
    print(f"K({args.n},{args.k}) >= {entry.value}: {bounds.explain(entry)}")
    if args.tree:
        print(bounds.explain_tree(entry))
    return EXIT_OK


def cmd_bound_k4(args) -> int:
    new = bounds.theorem2_bound(args.n)
    try:
        base = bounds.singleton_k4_baseline(args.n)
    except CircuitCodeError:
        base = None
    print(f"new K({args.n},4) bound: {'n/a' if new is None else new}")
    print(f"baseline: {'n/a' if base is None else base}")
    if new is not None and base is not None:
        print("new bound is larger" if new > base else "baseline is at least as large")
    if args.crossover_limit:
        n0 = bounds.k4_crossover(args.crossover_limit)
        print(f"new bound wins for every n in [{n0}, {args.crossover_limit}]" if n0 else "no crossover found")
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.dump:
        e = lookup(args.dump)
        _write(format_code_file(e.code, comment=f"{e.id}: {e.source}"), args.output)
        return EXIT_OK
    for e in corpus():
        n, k, N = e.code.params
        print(f"{e.id}\t({n},{k},{N})\t{e.source}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="circuitcodes", description="Hypercube circuit code workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    def code_cmd(name, func, help, output=False):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="code file, '-' for stdin, or corpus:ID")
        if output:
            sp.add_argument("-o", "--output", help="output file (default stdout)")
        sp.set_defaults(func=func)
        return sp

    sp = code_cmd("verify", cmd_verify, "check a code's spread")
    sp.add_argument("--k", type=int, help="spread to check (default: the file's claimed k)")
    code_cmd("spread", cmd_spread, "print the largest spread that holds")
    code_cmd("construct7", cmd_construct7, "raise spread by one", output=True)
    code_cmd("pad", cmd_pad, "pad length to a multiple of k+1", output=True)
    sp = code_cmd("naive", cmd_naive, "build a naive insertion candidate", output=True)
    sp.add_argument("--offset", type=int, choices=(0, 1, 2), required=True)

    def grid_args(sp):
        sp.add_argument("--n-range", type=_range, metavar="LO:HI")
        sp.add_argument("--k-range", type=_range, metavar="LO:HI")
        sp.add_argument("--table-range", metavar="CONFIG", help='JSON file like {"n": [2, 30], "k": [1, 10]}')
        sp.add_argument("--no-corpus", action="store_true", help="do not seed from embedded codes")

    for name, help in (("seed-table", "print the seeded table"), ("propagate", "print the propagated table")):
        sp = sub.add_parser(name, help=help)
        grid_args(sp)
        sp.add_argument("--format", choices=("csv", "text"), default="csv")
        sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("explain", help="show how a bound was derived")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("--tree", action="store_true")
    grid_args(sp)
    sp.set_defaults(func=cmd_explain)

    sp = sub.add_parser("bound-k4", help="compare spread-4 lower bounds")
    sp.add_argument("n", type=int)
    sp.add_argument("--crossover-limit", type=int, metavar="N", help="also report the smallest crossover up to N")
    sp.set_defaults(func=cmd_bound_k4)

    sp = sub.add_parser("corpus", help="list or dump embedded codes")
    sp.add_argument("--dump", metavar="ID")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (CircuitCodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface for the grammar-to-sampler pipeline.

Commands: normalize, count, sample, enumerate, check-ambiguity, bench,
render.  Exit codes: 0 success, 2 input error, 3 empty slice,
4 internal invariant breach.  All outputs are deterministic for a fixed
configuration; sampling defaults to seed 1729 unless --seed=random.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from . import cnf, counting, grammar, hypergraph, oracle, sampler

DEFAULT_SEED = 1729

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EMPTY_SLICE = 3
EXIT_INTERNAL = 4


class _InputError(Exception):
    pass


def _load_grammar(path: str) -> grammar.Grammar:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}: not valid JSON: {exc}") from exc
    try:
        g = grammar.grammar_from_json(obj)
    except grammar.GrammarError as exc:
        raise _InputError(f"{path}: {exc}") from exc
    problems = grammar.validate_grammar(g)
    if problems:
        raise _InputError(f"{path}: invalid grammar:\n  " + "\n  ".join(problems))
    return g


def _require_cnf(g: grammar.Grammar, path: str) -> None:
    problems = cnf.is_cnf(g)
    if problems:
        raise _InputError(
            f"{path}: grammar is not in CNF (run `hrgen normalize` first):\n  "
            + "\n  ".join(problems))


def _write(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _dump(obj: dict, output: str | None) -> None:
    _write(json.dumps(obj, indent=2, sort_keys=False) + "\n", output)


def _parse_seed(text: str) -> int:
    if text == "random":
        import secrets

        return secrets.randbits(64)
    try:
        return int(text, 0)
    except ValueError as exc:
        raise _InputError(f"--seed must be an integer or 'random', got {text!r}") from exc


def _load_or_build_tables(g: grammar.Grammar, n: int,
                          cache_path: str | None) -> counting.CountTables:
    digest = counting.grammar_digest(g)
    if cache_path:
        try:
            with open(cache_path) as fh:
                obj = json.load(fh)
            if obj.get("grammar_digest") == digest and int(obj.get("n_max", -1)) >= n:
                return counting.tables_from_json(obj)
        except (OSError, json.JSONDecodeError, counting.CountError):
            pass
    tables = counting.pre(g, n)
    if cache_path:
        with open(cache_path, "w") as fh:
            json.dump(counting.tables_to_json(tables, digest), fh)
    return tables


def cmd_normalize(args: argparse.Namespace) -> int:
    g = _load_grammar(args.grammar)
    if not cnf.is_cnf(g):  # no violations
        print(f"{args.grammar}: already CNF", file=sys.stderr)
        _dump(grammar.grammar_to_json(g), args.output)
        return EXIT_OK
    trace: list[str] = []
    try:
        out = cnf.to_cnf(g, trace)
    except grammar.GrammarError as exc:
        raise _InputError(str(exc)) from exc
    if args.trace:
        for line in trace:
            print(line, file=sys.stderr)
    _dump(grammar.grammar_to_json(out), args.output)
    return EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    g = _load_grammar(args.grammar)
    _require_cnf(g, args.grammar)
    tables = _load_or_build_tables(g, args.size, args.table_cache)
    _dump(counting.tables_to_json(tables, counting.grammar_digest(g)), args.output)
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    g = _load_grammar(args.grammar)
    _require_cnf(g, args.grammar)
    start = args.start or g.start
    if start not in g.nonterminals:
        raise _InputError(f"start symbol {start!r} is not a nonterminal of the grammar")
    if args.size < g.typing[start]:
        raise _InputError(
            f"size {args.size} is below type({start}) = {g.typing[start]}")
    tables = _load_or_build_tables(g, max(1, args.size - g.typing[start]),
                                   args.table_cache)
    seed = _parse_seed(args.seed)
    chunks = []
    for i, report in enumerate(
            sampler.sample_many(g, tables, start, args.size, seed, args.count)):
        if args.format == "dot":
            chunks.append(hypergraph.to_dot(report.graph, name=f"sample{i}"))
        else:
            chunks.append(json.dumps(sampler.report_to_json(report)) + "\n")
    _write("".join(chunks), args.output)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    g = _load_grammar(args.grammar)
    start = args.start or g.start
    if start not in g.nonterminals:
        raise _InputError(f"start symbol {start!r} is not a nonterminal of the grammar")
    try:
        result = oracle.census(g, start, args.size, cap=args.oracle_cap)
    except oracle.OracleError as exc:
        raise _InputError(str(exc)) from exc
    _dump(oracle.census_to_json(result), args.output)
    return EXIT_OK


def cmd_check_ambiguity(args: argparse.Namespace) -> int:
    g = _load_grammar(args.grammar)
    try:
        verdict = oracle.check_n_ambiguity(g, args.size, cap=args.oracle_cap)
    except oracle.OracleError as exc:
        raise _InputError(str(exc)) from exc
    obj = {"size": verdict.size, "ambiguous": verdict.ambiguous}
    if verdict.witnesses is not None:
        obj["witnesses"] = [grammar.tree_to_json(t) for t in verdict.witnesses]
    _dump(obj, args.output)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    g = _load_grammar(args.grammar)
    _require_cnf(g, args.grammar)
    start = args.start or g.start
    sizes = args.sizes
    t0 = time.perf_counter()
    tables = counting.pre(g, max(1, max(sizes) - g.typing[start]))
    pre_ms = (time.perf_counter() - t0) * 1000.0
    seed = _parse_seed(args.seed)
    shorthands = cnf.shorthand(g)
    rows = []
    root = sampler.RandomSource(seed)
    for n in sizes:
        timings = []
        for j in range(args.count):
            rng = root.split(n * 1_000_003 + j)
            t1 = time.perf_counter()
            sampler.gen(g, tables, start, n, rng, shorthands)
            timings.append((time.perf_counter() - t1) * 1000.0)
        rows.append({"n": n, "median_ms": statistics.median(timings),
                     "samples": args.count})
    _dump({"pre_ms": pre_ms, "per_sample": rows}, args.output)
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    try:
        with open(args.graph) as fh:
            h = hypergraph.from_json(json.load(fh))
    except OSError as exc:
        raise _InputError(f"cannot read {args.graph}: {exc}") from exc
    except (json.JSONDecodeError, hypergraph.HypergraphError) as exc:
        raise _InputError(f"{args.graph}: {exc}") from exc
    _write(hypergraph.to_dot(h), args.output)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hrgen",
        description="Uniform random hypergraph generation from hyperedge"
                    " replacement grammars.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grammar_arg=True):
        if grammar_arg:
            p.add_argument("--grammar", required=True, help="grammar JSON file")
        p.add_argument("--output", "-o", default=None,
                       help="output path (default: stdout)")

    p = sub.add_parser("normalize", help="transform a grammar into CNF")
    common(p)
    p.add_argument("--trace", action="store_true",
                   help="print the applied rules to stderr")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("count", help="build derivation-count tables")
    common(p)
    p.add_argument("--size", type=int, required=True,
                   help="largest size offset to tabulate")
    p.add_argument("--table-cache", default=None,
                   help="JSON cache keyed by grammar digest and size")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sample", help="draw size-n hypergraphs uniformly at random")
    common(p)
    p.add_argument("--size", type=int, required=True, help="hypergraph size n")
    p.add_argument("--count", type=int, default=1, help="number of samples")
    p.add_argument("--start", default=None, help="start nonterminal (default: grammar's)")
    p.add_argument("--seed", default=str(DEFAULT_SEED),
                   help=f"integer seed or 'random' (default {DEFAULT_SEED})")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--table-cache", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("enumerate", help="exhaustively enumerate a language slice")
    common(p)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--start", default=None)
    p.add_argument("--oracle-cap", type=int, default=None,
                   help=f"size cap (default {oracle.DEFAULT_SIZE_CAP};"
                        f" env {oracle.ORACLE_CAP_ENV} overrides)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check-ambiguity", help="exact ambiguity verdict for one slice")
    common(p)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--oracle-cap", type=int, default=None)
    p.set_defaults(func=cmd_check_ambiguity)

    p = sub.add_parser("bench", help="median per-sample generation time by size")
    common(p)
    p.add_argument("--sizes", type=int, nargs="+", required=True)
    p.add_argument("--count", type=int, default=50, help="samples per size")
    p.add_argument("--start", default=None)
    p.add_argument("--seed", default=str(DEFAULT_SEED))
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="render a hypergraph JSON file as DOT")
    p.add_argument("--graph", required=True, help="hypergraph JSON file")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"hrgen: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except sampler.EmptySliceError as exc:
        print(f"hrgen: {exc}", file=sys.stderr)
        return EXIT_EMPTY_SLICE
    except (sampler.TablesMismatchError, counting.CountError,
            hypergraph.HypergraphError, grammar.GrammarError) as exc:
        print(f"hrgen: internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

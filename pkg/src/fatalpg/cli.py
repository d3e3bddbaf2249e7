"""Command-line front end (``fatalpg`` or ``python -m fatalpg``)."""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

from . import bench, generators
from .game import GameError
from .lift import resolve_solver
from .pgsolver import ParseError, read_game, serialize_pgsolver
from .reference import FullSolution, complete, verify_solution, zielonka
from .solvers import SolverTimeout

EXIT_SOLVED, EXIT_ERROR, EXIT_RESIDUAL = 0, 1, 2

SOLVER_NAMES = "psol, psolB, psolQ, lift-psolB, zielonka, complete:<partial>"


def _ext(g, ids):
    return [g.external_id(v) for v in ids]


def _solve(g, name, timeout, strategies):
    """Returns (won, residual, strategy, stats) in internal ids."""
    view = g.full_view()
    deadline = time.perf_counter() + timeout if timeout else None
    if name == "zielonka" or name.startswith("complete:"):
        if name == "zielonka":
            sol = zielonka(view, deadline=deadline)
        else:
            sol = complete(resolve_solver(name.split(":", 1)[1]), view, deadline=deadline)
        return sol.regions, [], sol.strategy, None
    result = resolve_solver(name)(view, deadline=deadline, strategies=strategies)
    return result.won, result.residual.nodes(), result.strategy, result.stats


def cmd_solve(args) -> int:
    g = read_game(args.file)
    won, residual, strategy, stats = _solve(g, args.solver, args.timeout, args.strategies)
    payload = {
        "solver": args.solver,
        "won": {str(p): _ext(g, won[p].ids()) for p in (0, 1)},
        "residual": _ext(g, residual),
    }
    # ``regions``/``strategy`` make the output usable as input to ``verify``.
    payload["regions"] = payload["won"]
    if stats is not None:
        payload["stats"] = {"fatal_attractors": stats.fatal_attractors,
                            "edges_removed": stats.edges_removed,
                            "recursive_calls": stats.recursive_calls,
                            "elapsed_ms": round(stats.elapsed * 1000.0, 3)}
    if args.strategies:
        payload["strategy"] = {str(p): {str(g.external_id(v)): g.external_id(w)
                                        for v, w in sorted(strategy[p].items())}
                               for p in (0, 1)}
    if args.json:
        print(json.dumps(payload))
    else:
        for p in (0, 1):
            print(f"W{p}: {' '.join(g.name(v) for v in won[p].ids())}")
        print(f"residual: {' '.join(g.name(v) for v in residual)}")
        if stats is not None:
            print("stats: " + ", ".join(f"{k}={v}" for k, v in payload["stats"].items()))
        if args.strategies:
            for p in (0, 1):
                moves = " ".join(f"{g.name(v)}->{g.name(w)}"
                                 for v, w in sorted(strategy[p].items()))
                print(f"strategy {p}: {moves}")
    return EXIT_RESIDUAL if residual else EXIT_SOLVED


def _gen_game(family, params, seed):
    if family in generators.FAMILIES:
        return generators.FAMILIES[family](int(params))
    kv = bench._keyvals(params)
    if family == "random":
        spec = generators.RandomSpec(kv["n"], (kv["l"], kv["u"]), kv["c"], seed)
        return generators.gen_random(spec)
    if family == "buchi":
        return generators.gen_random_buchi(kv["n"], kv["l"], kv["u"], seed)
    if family == "deterministic":
        return generators.gen_random_deterministic(kv["n"], kv["c"], seed)
    if family == "weak":
        return generators.gen_random_weak(kv["blocks"], kv["size"], seed)
    raise ValueError(f"unknown family {family!r}")


def cmd_gen(args) -> int:
    try:
        g = _gen_game(args.family, args.params, args.seed)
    except KeyError as exc:
        raise ValueError(f"family {args.family!r} needs parameter {exc.args[0]!r}") from None
    text = serialize_pgsolver(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_SOLVED


def cmd_bench(args) -> int:
    sources = []
    for spec in args.spec:
        sources.extend(bench.parse_family_spec(spec))
    solvers = [s for s in args.solvers.split(",") if s]
    for s in solvers:
        if s != "zielonka":
            resolve_solver(s)
    records = bench.run_bench(sources, solvers, args.timeout, args.repetitions,
                              args.complete, args.jobs)
    out = open(args.output, "w", encoding="utf-8", newline="") if args.output else sys.stdout
    try:
        if args.jsonl:
            bench.write_jsonl(records, out)
        else:
            bench.write_csv(records, out)
    finally:
        if args.output:
            out.close()
    return EXIT_SOLVED


def cmd_compare(args) -> int:
    mismatches = 0
    rows = []
    for path in args.files:
        g = read_game(path)
        view = g.full_view()
        row = {"file": path}
        regions = {}
        for tag, name in (("a", args.a), ("b", args.b)):
            if name == "zielonka" or name.startswith("complete:"):
                sol = (zielonka(view) if name == "zielonka"
                       else complete(resolve_solver(name.split(":", 1)[1]), view))
                row[f"{tag}_residual"] = 0
            else:
                rho = resolve_solver(name)
                row[f"{tag}_residual"] = len(rho(view, strategies=False).residual)
                sol = complete(rho, view)
            regions[tag] = sol.regions
        row["regions_match"] = all(regions["a"][p] == regions["b"][p] for p in (0, 1))
        mismatches += not row["regions_match"]
        rows.append(row)
    if args.json:
        print(json.dumps({"a": args.a, "b": args.b, "games": rows, "mismatches": mismatches}))
    else:
        for row in rows:
            status = "match" if row["regions_match"] else "MISMATCH"
            print(f"{row['file']}: {args.a} residual {row['a_residual']}, "
                  f"{args.b} residual {row['b_residual']}, regions {status}")
        print(f"mismatches: {mismatches}")
    return EXIT_RESIDUAL if mismatches else EXIT_SOLVED


def cmd_verify(args) -> int:
    g = read_game(args.file)
    with open(args.solution, encoding="utf-8") as fh:
        data = json.load(fh)
    index = {g.external_id(v): v for v in range(g.node_count)}

    def internal(x):
        try:
            return index[int(x)]
        except KeyError:
            raise GameError(f"solution mentions unknown node {x}") from None

    raw_regions = data.get("regions") or data.get("won") if isinstance(data, dict) else None
    if not isinstance(raw_regions, dict):
        raise ValueError("solution JSON needs a 'regions' object")
    regions = {str(p): [internal(v) for v in raw_regions.get(str(p), [])] for p in (0, 1)}
    strategy = {str(p): {internal(v): internal(w)
                         for v, w in data.get("strategy", {}).get(str(p), {}).items()}
                for p in (0, 1)}
    sol = FullSolution.from_json({"regions": regions, "strategy": strategy}, g.node_count)
    report = verify_solution(g.full_view(), sol)
    if report.ok:
        print("solution verified")
        return EXIT_SOLVED
    for problem in report.problems:
        print(problem)
    if report.witness_cycle:
        print("witness cycle: " + " -> ".join(g.name(v) for v in report.witness_cycle))
    return EXIT_RESIDUAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fatalpg",
                                     description="Parity-game partial solvers and benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one game file")
    p.add_argument("file")
    p.add_argument("solver", help=SOLVER_NAMES)
    p.add_argument("--json", action="store_true")
    p.add_argument("--strategies", action="store_true")
    p.add_argument("--timeout", type=float, default=None, help="seconds (default: none)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate a game in PGSolver format")
    p.add_argument("family", help="clique, ladder, random, buchi, deterministic, weak")
    p.add_argument("params", help="size for clique/ladder, else key=value list")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a benchmark sweep")
    p.add_argument("spec", nargs="+", help="family spec or path (see the bench module)")
    p.add_argument("--solvers", default="psolB,zielonka")
    p.add_argument("--timeout", type=float, default=bench.DEFAULT_TIMEOUT,
                   help="seconds per run (default: 60)")
    p.add_argument("--long-timeout", dest="timeout", action="store_const",
                   const=bench.LONG_TIMEOUT, help="use a 20 minute timeout")
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--complete", action="store_true",
                   help="follow partial solvers by Zielonka on the residual")
    p.add_argument("--jobs", type=int, default=1)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true", help="CSV output (default)")
    fmt.add_argument("--jsonl", action="store_true", help="JSON lines output")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compare", help="compare two solvers on game files")
    p.add_argument("files", nargs="+")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="check a solution JSON against a game")
    p.add_argument("file")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args)
    except (ParseError, GameError, ValueError, OSError, SolverTimeout) as exc:
        msg = "timeout" if isinstance(exc, SolverTimeout) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

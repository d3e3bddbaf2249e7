"""Benchmark sweeps: family specs, per-run records, CSV/JSON-lines output.

A family spec is ``<family>:<params>`` or a path:

* ``clique:8,64,512`` and ``ladder:8,64`` list sizes;
* ``random:n=500,l=1,u=5,c=5,count=100,seed=0`` (``seed`` is the first
  seed, game ``i`` uses ``seed+i``);
* ``buchi:n=100,l=1,u=4,count=..,seed=..``,
  ``deterministic:n=100,c=10,count=..,seed=..``,
  ``weak:blocks=10,size=8,count=..,seed=..``;
* a ``.gm`` file, or a directory whose ``*.gm`` files are read in name order.
"""

from __future__ import annotations

import csv
import io
import json
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import generators
from .pgsolver import read_game
from .reference import zielonka
from .solvers import SolverTimeout

DEFAULT_TIMEOUT = 60.0
LONG_TIMEOUT = 20 * 60.0


@dataclass
class BenchRecord:
    game_id: str
    family: str
    params: str
    solver: str
    solved_completely: bool
    residual_nodes: int
    fatal_attractors: int
    edges_removed: int
    elapsed_ms: float
    outcome: str  # ok | abo | error

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    @classmethod
    def from_row(cls, row: dict) -> "BenchRecord":
        return cls(
            game_id=row["game_id"], family=row["family"], params=row["params"],
            solver=row["solver"],
            solved_completely=str(row["solved_completely"]).lower() == "true",
            residual_nodes=int(row["residual_nodes"]),
            fatal_attractors=int(row["fatal_attractors"]),
            edges_removed=int(row["edges_removed"]),
            elapsed_ms=float(row["elapsed_ms"]), outcome=row["outcome"],
        )


@dataclass(frozen=True)
class GameSource:
    """How to obtain one benchmark game (picklable, for worker processes)."""

    game_id: str
    family: str
    params: str
    kind: str
    args: tuple

    def load(self):
        if self.kind == "file":
            return read_game(self.args[0])
        if self.kind == "random":
            n, l, u, c, seed = self.args
            return generators.gen_random(generators.RandomSpec(n, (l, u), c, seed))
        if self.kind == "buchi":
            return generators.gen_random_buchi(*self.args)
        if self.kind == "deterministic":
            return generators.gen_random_deterministic(*self.args)
        if self.kind == "weak":
            return generators.gen_random_weak(*self.args)
        return generators.FAMILIES[self.kind](*self.args)


def _keyvals(text: str) -> dict[str, int]:
    out = {}
    for item in filter(None, text.split(",")):
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, found {item!r}")
        out[key.strip()] = int(val)
    return out


def parse_family_spec(spec: str) -> list[GameSource]:
    family, sep, params = spec.partition(":")
    if not sep or os.path.exists(spec):
        path = Path(spec)
        if path.is_dir():
            files = sorted(path.glob("*.gm"))
        elif path.exists():
            files = [path]
        else:
            raise ValueError(f"no such file or family spec: {spec!r}")
        return [GameSource(f.stem, "file", str(f), "file", (str(f),)) for f in files]
    if family in generators.FAMILIES:
        sizes = [int(s) for s in params.split(",") if s]
        return [GameSource(f"{family}-{n}", family, f"n={n}", family, (n,)) for n in sizes]
    kv = _keyvals(params)
    count = kv.pop("count", 1)
    seed = kv.pop("seed", 0)
    try:
        if family == "random":
            base = (kv["n"], kv["l"], kv["u"], kv["c"])
        elif family == "buchi":
            base = (kv["n"], kv["l"], kv["u"])
        elif family == "deterministic":
            base = (kv["n"], kv["c"])
        elif family == "weak":
            base = (kv["blocks"], kv["size"])
        else:
            raise ValueError(f"unknown family {family!r}")
    except KeyError as exc:
        raise ValueError(f"family {family!r} needs parameter {exc.args[0]!r}") from None
    label = ",".join(f"{k}={v}" for k, v in kv.items())
    width = len(str(count - 1))
    return [GameSource(f"{family}-{i:0{width}d}", family, f"{label},seed={seed + i}",
                       family, base + (seed + i,))
            for i in range(count)]


def run_one(game, solver_name: str, timeout: float, complete: bool = False) -> dict:
    """One timed run; returns the record fields other than the game labels."""
    from .lift import resolve_solver

    start = time.perf_counter()
    deadline = start + timeout
    fatal = removed = 0
    try:
        view = game.full_view()
        if solver_name == "zielonka":
            zielonka(view, deadline=deadline)
            residual = 0
        else:
            result = resolve_solver(solver_name)(view, deadline=deadline, strategies=False)
            fatal = result.stats.fatal_attractors
            removed = result.stats.edges_removed
            residual = len(result.residual)
            if complete and residual:
                zielonka(result.residual, deadline=deadline)
        outcome = "ok"
    except SolverTimeout:
        residual = game.node_count
        outcome = "abo"
    elapsed = (time.perf_counter() - start) * 1000.0
    return dict(solved_completely=outcome == "ok" and residual == 0, residual_nodes=residual,
                fatal_attractors=fatal, edges_removed=removed, elapsed_ms=elapsed,
                outcome=outcome)


_warm = set()


def _warm_up(solvers) -> None:
    """Load the compiled kernels before the first timed run."""
    for name in solvers:
        if name not in _warm:
            run_one(generators.gen_clique(3), name, DEFAULT_TIMEOUT, True)
            _warm.add(name)


def _run_source(job) -> list[BenchRecord]:
    source, solvers, timeout, repetitions, complete = job
    _warm_up(solvers)
    try:
        game = source.load()
    except Exception as exc:  # unreadable input: one diagnostic record per solver
        return [BenchRecord(source.game_id, source.family, f"{source.params} ({exc})", s,
                            False, 0, 0, 0, 0.0, "error") for s in solvers]
    records = []
    for name in solvers:
        runs = [run_one(game, name, timeout, complete) for _ in range(max(1, repetitions))]
        rec = runs[0]
        rec["elapsed_ms"] = statistics.median(r["elapsed_ms"] for r in runs)
        if any(r["outcome"] == "abo" for r in runs):
            rec = next(r for r in runs if r["outcome"] == "abo")
        label = f"{name}+zielonka" if complete and name != "zielonka" else name
        records.append(BenchRecord(source.game_id, source.family, source.params, label, **rec))
    return records


def run_bench(sources, solvers, timeout=DEFAULT_TIMEOUT, repetitions=1, complete=False,
              jobs=1):
    """Yield one record per (game, solver), in game order."""
    work = [(s, list(solvers), timeout, repetitions, complete) for s in sources]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for records in pool.map(_run_source, work):
                yield from records
    else:
        for job in work:
            yield from _run_source(job)


def write_csv(records, fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=BenchRecord.columns(), lineterminator="\n")
    writer.writeheader()
    for rec in records:
        row = asdict(rec)
        row["solved_completely"] = str(rec.solved_completely).lower()
        row["elapsed_ms"] = f"{rec.elapsed_ms:.3f}"
        writer.writerow(row)


def write_jsonl(records, fh) -> None:
    for rec in records:
        fh.write(json.dumps(asdict(rec)) + "\n")


def read_csv(text: str) -> list[BenchRecord]:
    return [BenchRecord.from_row(row) for row in csv.DictReader(io.StringIO(text))]

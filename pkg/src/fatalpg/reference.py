"""Full solvers used as ground truth, and solution checking."""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, _oracle
from .game import Game, GameError, GameView, NodeSet
from .graph import strongly_connected_components
from .solvers import PartialResult, SolverTimeout

BRUTE_FORCE_MAX_NODES = 12
BRUTE_FORCE_MAX_STRATEGIES = 10**6

# Above this size the recursion runs on a thread with a large stack.
_BIG_GAME = 20_000


@dataclass
class FullSolution:
    regions: dict[int, NodeSet]
    strategy: dict[int, dict[int, int]] = field(default_factory=lambda: {0: {}, 1: {}})

    def winner(self, v: int) -> int:
        return 0 if v in self.regions[0] else 1

    def to_json(self) -> dict:
        return {
            "regions": {str(p): self.regions[p].ids() for p in (0, 1)},
            "strategy": {str(p): {str(v): w for v, w in sorted(self.strategy[p].items())}
                         for p in (0, 1)},
        }

    @classmethod
    def from_json(cls, data: dict, node_count: int) -> "FullSolution":
        regions = {p: NodeSet.of(node_count, data["regions"].get(str(p), [])) for p in (0, 1)}
        raw = data.get("strategy", {})
        strategy = {p: {int(v): int(w) for v, w in raw.get(str(p), {}).items()} for p in (0, 1)}
        return cls(regions, strategy)


def _solution_from_arrays(view, win, strat) -> FullSolution:
    g = view.game
    alive = view.alive_mask
    regions = {p: NodeSet(alive & (win == p)) for p in (0, 1)}
    strategy = {}
    for p in (0, 1):
        ids = np.flatnonzero(alive & (win == p) & (g.owner == p))
        strategy[p] = {int(v): int(strat[v]) for v in ids}
    return FullSolution(regions, strategy)


def zielonka(view: GameView, *, deadline=None) -> FullSolution:
    """Zielonka's recursive algorithm on the minimal color."""
    g = view.game
    n = g.node_count
    win = np.full(n, -1, np.int64)
    strat = np.full(n, -1, np.int64)
    calls = np.zeros(1, np.int64)

    def run():
        return _kernels.zielonka(g.succ_ptr, g.succ_idx, g.pred_ptr, g.pred_idx, g.pred_eid,
                                 view.edge_mask, g.owner, g.color, view.alive_mask.copy(),
                                 win, strat, float(deadline or 0.0), calls)

    if n > _BIG_GAME:
        box = []
        old = threading.stack_size(1 << 29)
        try:
            worker = threading.Thread(target=lambda: box.append(run()))
            worker.start()
            worker.join()
        finally:
            threading.stack_size(old)
        status = box[0]
    else:
        status = run()
    if status:
        raise SolverTimeout()
    return _solution_from_arrays(view, win, strat)


def brute_force(g: Game) -> FullSolution:
    """Enumerate memoryless strategies of both players on a tiny game."""
    if isinstance(g, GameView):
        g = g.game
    n = g.node_count
    if n > BRUTE_FORCE_MAX_NODES:
        raise GameError(f"brute force is limited to {BRUTE_FORCE_MAX_NODES} nodes, got {n}")
    degrees = np.diff(g.succ_ptr)
    for p in (0, 1):
        product = 1
        for d in degrees[g.owner == p].tolist():
            product *= d
        if product > BRUTE_FORCE_MAX_STRATEGIES:
            raise GameError(f"player {p} has {product} memoryless strategies, "
                            f"more than {BRUTE_FORCE_MAX_STRATEGIES}")
    regions, strategy = {}, {}
    for p in (0, 1):
        union, best, choice = _oracle.best_strategy(g.succ_ptr, g.succ_idx, g.owner,
                                                    g.color, p)
        if union != best:
            raise AssertionError("no uniform memoryless strategy found")
        mask = np.array([(int(union) >> v) & 1 for v in range(n)], dtype=np.bool_)
        regions[p] = NodeSet(mask)
        strategy[p] = {v: int(choice[v]) for v in np.flatnonzero(mask & (g.owner == p)).tolist()}
    if regions[0] & regions[1] or len(regions[0]) + len(regions[1]) != n:
        raise AssertionError("brute force regions do not partition the game")
    return FullSolution(regions, strategy)


@dataclass
class VerificationReport:
    ok: bool
    problems: list[str] = field(default_factory=list)
    witness_cycle: list[int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _find_cycle(start, members, succ):
    """A cycle through ``start`` inside ``members`` (which must contain one)."""
    parent = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in succ(v):
            if w not in members:
                continue
            if w == start:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return None


def _bad_cycle(nodes, succ, color, bad_parity):
    """Search for a cycle whose minimal color has ``bad_parity``."""
    work = [set(nodes)]
    while work:
        part = work.pop()
        inside = lambda v: [w for w in succ(v) if w in part]  # noqa: E731
        for comp in strongly_connected_components(sorted(part), inside):
            if len(comp) == 1 and comp[0] not in succ(comp[0]):
                continue
            members = set(comp)
            low = min(color[v] for v in members)
            if low % 2 == bad_parity:
                start = min(v for v in members if color[v] == low)
                return _find_cycle(start, members, succ)
            rest = {v for v in members if color[v] != low}
            if rest:
                work.append(rest)
    return None


def verify_solution(view: GameView, s: FullSolution) -> VerificationReport:
    """Check that ``s`` is a winning solution on ``view``.

    Raises :class:`GameError` if the regions do not partition the alive
    nodes or a winner's node has no move.
    """
    g = view.game
    alive = view.alive
    r0, r1 = s.regions[0], s.regions[1]
    if r0 & r1 or (r0 | r1) != alive:
        raise GameError("regions do not partition the alive nodes")
    problems: list[str] = []
    witness = None
    color = g.color.tolist()
    for p in (0, 1):
        region = s.regions[p]
        moves = s.strategy.get(p, {})
        for v in region:
            if g.owner[v] == p:
                if v not in moves:
                    raise GameError(f"strategy of player {p} has no move at node {v}")
                w = moves[v]
                if not view.has_edge(v, w):
                    problems.append(f"move {v}->{w} of player {p} is not an edge")
                elif w not in region:
                    problems.append(f"move {v}->{w} of player {p} leaves its region")
            else:
                for w in view.successors(v):
                    if w not in region:
                        problems.append(f"node {v} of player {1 - p} escapes W{p} via {w}")
                        break

        # Plays under the strategy, with the opponent (and any node
        # without a recorded move) free to pick every successor.
        def succ(v, p=p, moves=moves):
            if g.owner[v] == p and v in moves and view.has_edge(v, moves[v]):
                return [moves[v]]
            return view.successors(v)

        reach = set(region.ids())
        queue = deque(reach)
        while queue:
            for w in succ(queue.popleft()):
                if w not in reach:
                    reach.add(w)
                    queue.append(w)
        cycle = _bad_cycle(reach, succ, color, 1 - p)
        if cycle is not None:
            low = min(color[v] for v in cycle)
            problems.append(f"player {1 - p} can loop through {cycle} from W{p} "
                            f"with minimal color {low}")
            witness = witness or cycle
    return VerificationReport(not problems, problems, witness)


def _resolve(rho):
    if isinstance(rho, str):
        from .lift import resolve_solver
        return resolve_solver(rho)
    return rho


def complete(rho, view: GameView, *, deadline=None) -> FullSolution:
    """Run a partial solver, then Zielonka on what it left undecided.

    Where the partial solver recorded no strategy (psolQ), the strategy
    on its won region comes from Zielonka on that region alone.
    """
    rho = _resolve(rho)
    partial: PartialResult = rho(view, deadline=deadline)
    rest = zielonka(partial.residual, deadline=deadline)
    regions = {p: partial.won[p] | rest.regions[p] for p in (0, 1)}
    strategy = {}
    g = view.game
    for p in (0, 1):
        moves = dict(partial.strategy[p])
        won = partial.won[p]
        if any(v not in moves for v in won if g.owner[v] == p):
            moves = zielonka(view.restrict(won), deadline=deadline).strategy[p]
        moves.update(rest.strategy[p])
        strategy[p] = moves
    return FullSolution(regions, strategy)


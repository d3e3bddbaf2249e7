"""Partial solvers based on fatal attractors: psol, psolB and psolQ.

Every solver takes a :class:`GameView` and returns a
:class:`PartialResult`.  The shared keyword arguments are

``deadline``
    absolute ``time.perf_counter()`` value after which
    :class:`SolverTimeout` is raised;
``stop_when_won_by``
    a player; the run ends as soon as that player wins some node (the
    result is then a prefix of the full run and still sound);
``strategies``
    set to False to skip strategy recording.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ._arena import Arena
from .attractors import layered_masks
from .game import GameView, NodeSet


class SolverTimeout(Exception):
    """A solver passed its deadline."""


@dataclass
class RunStats:
    fatal_attractors: int = 0
    edges_removed: int = 0
    recursive_calls: int = 0
    elapsed: float = 0.0

    def add(self, other: "RunStats") -> None:
        self.fatal_attractors += other.fatal_attractors
        self.edges_removed += other.edges_removed
        self.recursive_calls += other.recursive_calls
        self.elapsed += other.elapsed


@dataclass
class PartialResult:
    won: dict[int, NodeSet]
    strategy: dict[int, dict[int, int]]
    residual: GameView
    stats: RunStats = field(default_factory=RunStats)
    solver: str = ""

    @property
    def solved_completely(self) -> bool:
        return self.residual.is_empty

    @property
    def decided(self) -> NodeSet:
        return self.won[0] | self.won[1]


class _Stop(Exception):
    pass


class _Run:
    """Mutable state of one solver call."""

    def __init__(self, view, deadline, stop_when_won_by, strategies):
        self.arena = Arena.from_view(view)
        n = view.game.node_count
        self.owner = view.game.owner
        self.color = view.game.color
        self.won = [np.zeros(n, np.bool_), np.zeros(n, np.bool_)]
        self.strat = [np.full(n, -1, np.int64), np.full(n, -1, np.int64)]
        self.stats = RunStats()
        self.deadline = deadline
        self.stop = stop_when_won_by
        self.strategies = strategies
        self.start = time.perf_counter()

    def check(self):
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise SolverTimeout()

    def remove(self, p, ma, rank=None, target=None):
        """Remove ``Attr_p(ma)`` as won by ``p``.

        With ``rank``/``target`` given, ``ma`` is a fatal monotone
        attractor for ``target`` and its strategy is recorded as well.
        """
        arena = self.arena
        attr, arank = arena.attract(p, ma)
        if self.strategies:
            mine = self.owner == p
            outer = arena.moves(p, attr, arank, ma)
            sel = attr & ~ma & mine
            self.strat[p][sel] = outer[sel]
            if rank is not None:
                inner = arena.moves(p, ma, rank, target)
                sel = ma & mine
                self.strat[p][sel] = inner[sel]
        self.won[p] |= attr
        arena.kill(attr)
        self.stats.fatal_attractors += 1
        self.stats.recursive_calls += 1
        if self.stop == p:
            raise _Stop()

    def result(self, name, with_strategies=True) -> PartialResult:
        self.stats.elapsed = time.perf_counter() - self.start
        won = {p: NodeSet(self.won[p]) for p in (0, 1)}
        strategy = {0: {}, 1: {}}
        if with_strategies and self.strategies:
            for p in (0, 1):
                ids = np.flatnonzero(self.won[p] & (self.owner == p) & (self.strat[p] >= 0))
                strategy[p] = {int(v): int(self.strat[p][v]) for v in ids}
        residual = GameView(self.arena.game, self.arena.alive, self.arena.edge_alive,
                            _outdeg=self.arena.outdeg)
        return PartialResult(won, strategy, residual, self.stats, name)


def _execute(name, body, view, deadline, stop_when_won_by, strategies, with_strategies=True):
    run = _Run(view, deadline, stop_when_won_by, strategies)
    try:
        body(run)
    except _Stop:
        pass
    return run.result(name, with_strategies)


def _psol(run: _Run):
    arena = run.arena
    n = arena.game.node_count
    single = np.zeros(n, np.bool_)
    while True:
        alive = np.flatnonzero(arena.alive)
        order = alive[np.lexsort((alive, -run.color[alive].astype(np.int64)))]
        fired = False
        for k in order.tolist():
            run.check()
            c = int(run.color[k])
            p = c % 2
            single[k] = True
            ma, rank = arena.attract(p, single, c, False, False)
            single[k] = False
            if ma[k]:
                single[k] = True
                run.remove(p, ma, rank, single.copy())
                single[k] = False
                fired = True
                break
            run.stats.edges_removed += arena.drop_edges_into(k, ma)
        if not fired:
            return


def _greatest_b(run: _Run, d: int) -> bool:
    """One greatest fixpoint of psolB at color ``d``; True if it removed."""
    arena = run.arena
    p = d % 2
    X = arena.alive & (run.color == d)
    while X.any():
        run.check()
        ma, rank = arena.attract(p, X, d, False, False)
        if not (X & ~ma).any():
            run.remove(p, ma, rank, X)
            return True
        X &= ma
    return False


def _psolB(run: _Run, order, until_stable):
    if order is None:
        while True:
            for d in arena_colors_desc(run.arena):
                if _greatest_b(run, d):
                    break
            else:
                return
    while True:
        fired = False
        for d in order:
            if _greatest_b(run, int(d)):
                fired = True
        if not fired or not until_stable:
            return


def arena_colors_desc(arena: Arena) -> list[int]:
    return arena.colors()[::-1].tolist()


def _psolQ(run: _Run):
    arena = run.arena
    color = run.color
    while True:
        fired = False
        for b in arena.colors().tolist():
            p = b % 2
            X = arena.alive & (color <= b) & (color % 2 == p)
            while X.any():
                run.check()
                W, _ = layered_masks(arena, p, X)
                if not (X & ~W).any():
                    run.remove(p, W)
                    fired = True
                    break
                X &= W
            if fired:
                break
        if not fired:
            return


def psol(view: GameView, *, deadline=None, stop_when_won_by=None,
         strategies=True) -> PartialResult:
    """Fatal attractors of single nodes, in descending color order, plus
    removal of the edges that lead a node into its own monotone attractor.

    Edge removals persist into the residual game.
    """
    return _execute("psol", _psol, view, deadline, stop_when_won_by, strategies)


def psolB(view: GameView, order=None, *, until_stable=True, deadline=None,
          stop_when_won_by=None, strategies=True) -> PartialResult:
    """Greatest fixpoint over the nodes of one color at a time.

    Without ``order`` the colors are tried in descending order and the
    sweep restarts from the top after every removal, until a full sweep
    removes nothing.  With ``order`` each listed color runs one greatest
    fixpoint on the current game (so at most one removal per entry); the
    whole sequence is repeated while it still removes something, unless
    ``until_stable`` is False.
    """
    return _execute("psolB", lambda run: _psolB(run, order, until_stable), view,
                    deadline, stop_when_won_by, strategies)


def psolQ(view: GameView, *, deadline=None, stop_when_won_by=None,
          strategies=True) -> PartialResult:
    """Layered fatal attractors for increasing color bounds ``b``.

    Decided regions only; the strategy fragments are empty.
    """
    return _execute("psolQ", _psolQ, view, deadline, stop_when_won_by, False)


SOLVERS = {"psol": psol, "psolB": psolB, "psolQ": psolQ}


def get_solver(name: str):
    try:
        return SOLVERS[name]
    except KeyError:
        raise ValueError(f"unknown partial solver {name!r}") from None

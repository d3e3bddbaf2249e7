"""The lift transformation of a partial solver, and checks of the
properties it relies on (idempotency and locality)."""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .game import GameError, GameView, NodeSet, fix_edge, remove_edge
from .solvers import PartialResult, RunStats, get_solver

# Solvers for which the preconditions of lift are known to hold.
_PROVEN = {"psolB"}


def _name(rho) -> str:
    return getattr(rho, "solver_name", None) or getattr(rho, "__name__", repr(rho))


def lift_solve(rho, view: GameView, *, deadline=None, stop_when_won_by=None,
               strategies=True) -> PartialResult:
    """Run ``rho``, then probe edges ``(v, w)`` of nodes with several
    successors in ascending order.  If fixing ``v``'s move to ``w`` lets
    the opponent of ``v``'s owner win something under ``rho``, the edge is
    deleted and everything restarts on the smaller game.
    """
    start = time.perf_counter()
    g = view.game
    n = g.node_count
    won = [np.zeros(n, np.bool_), np.zeros(n, np.bool_)]
    strategy: dict[int, dict[int, int]] = {0: {}, 1: {}}
    stats = RunStats()
    current = view
    while True:
        r = rho(current, deadline=deadline, stop_when_won_by=stop_when_won_by,
                strategies=strategies)
        stats.add(r.stats)
        for p in (0, 1):
            won[p] |= r.won[p].mask
            strategy[p].update(r.strategy[p])
        current = r.residual
        if stop_when_won_by is not None and won[stop_when_won_by].any():
            break
        deleted = losing_edge(rho, current, deadline)
        if deleted is None:
            break
        current = remove_edge(current, deleted)
        stats.edges_removed += 1
        stats.recursive_calls += 1
    stats.elapsed = time.perf_counter() - start
    return PartialResult({p: NodeSet(won[p]) for p in (0, 1)}, strategy, current, stats,
                         f"lift-{_name(rho)}")


def losing_edge(rho, view: GameView, deadline=None):
    """First edge ``(v, w)`` in ascending order whose fixing lets ``rho``
    decide a node for the opponent of ``v``'s owner, or None."""
    g = view.game
    for v in np.flatnonzero(view.alive_mask & (view.outdeg > 1)).tolist():
        q = 1 - int(g.owner[v])
        for w in view.successors(v):
            probe = rho(fix_edge(view, v, w), deadline=deadline, stop_when_won_by=q,
                        strategies=False)
            if probe.won[q]:
                return v, w
    return None


def lift(rho):
    """``lift(rho)`` as a solver with the usual call signature."""
    if isinstance(rho, str):
        rho = get_solver(rho)
    name = _name(rho)
    if name not in _PROVEN:
        warnings.warn(f"lift is only known to be sound for psolB, not for {name}",
                      stacklevel=2)

    def lifted(view, *, deadline=None, stop_when_won_by=None, strategies=True):
        return lift_solve(rho, view, deadline=deadline, stop_when_won_by=stop_when_won_by,
                          strategies=strategies)

    lifted.solver_name = f"lift-{name}"
    lifted.__name__ = f"lift-{name}"
    return lifted


def resolve_solver(name: str):
    """Partial solver by name: ``psol``, ``psolB``, ``psolQ`` or ``lift-<name>``."""
    if name.startswith("lift-"):
        return lift(resolve_solver(name[len("lift-"):]))
    solver = get_solver(name)
    return solver


def check_idempotent(rho, view: GameView) -> bool:
    """True if running ``rho`` on its own residual changes nothing."""
    first = rho(view)
    second = rho(first.residual)
    return not second.decided and second.residual.same_subgame(first.residual)


@dataclass
class LocalityReport:
    checked: list[tuple[int, int]] = field(default_factory=list)
    skipped: dict[tuple[int, int], str] = field(default_factory=dict)
    violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def check_local(rho, view: GameView, edges) -> LocalityReport:
    """Check locality of ``rho`` on sampled edges ``(x, w)``.

    An edge qualifies if ``rho`` decides nothing for the opponent of
    ``x``'s owner on ``view``.  For each qualifying edge, if fixing it lets
    that opponent win anything, ``x`` must be among the won nodes.
    """
    g = view.game
    report = LocalityReport()
    base = rho(view, strategies=False)
    for x, w in edges:
        e = (int(x), int(w))
        q = 1 - int(g.owner[x])
        if base.won[q]:
            report.skipped[e] = f"rho already decides nodes for player {q}"
            continue
        try:
            probe_view = fix_edge(view, *e)
        except GameError:
            report.skipped[e] = "not an edge of the view"
            continue
        report.checked.append(e)
        probe = rho(probe_view, strategies=False)
        if probe.won[q] and x not in probe.won[q]:
            report.violations.append(e)
    return report

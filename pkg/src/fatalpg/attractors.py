"""Attractor fixpoints over a :class:`~fatalpg.game.GameView`.

Players are ``0`` and ``1``.  Node-set arguments may be a
:class:`NodeSet` or any iterable of ids; every set is intersected with
the alive nodes of the view.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._arena import Arena
from .game import GameError, GameView, NodeSet, _mask_of


@dataclass(frozen=True)
class AttractionOutcome:
    """Result of an attractor.

    ``rank`` is the fixpoint round in which a node entered (targets of a
    classical attractor have rank 0).  ``strategy`` maps the attracting
    player's attracted nodes to their chosen successor.
    """

    nodes: NodeSet
    strategy: dict[int, int] = field(default_factory=dict)
    rank: dict[int, int] = field(default_factory=dict)

    def __contains__(self, v) -> bool:
        return v in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)


def _target(view: GameView, X) -> np.ndarray:
    return _mask_of(view.game.node_count, X) & view.alive_mask


def _alive_succ_all_in(view: GameView, v: int, region: np.ndarray) -> bool:
    return all(region[w] for w in view.successors(v))


def _alive_succ_any_in(view: GameView, v: int, region: np.ndarray) -> bool:
    return any(region[w] for w in view.successors(v))


def _predecessor(view, player, region, guard) -> NodeSet:
    """One step of forcing into ``region``, restricted to ``guard`` nodes."""
    g = view.game
    out = np.zeros(g.node_count, np.bool_)
    for v in np.flatnonzero(view.alive_mask & guard).tolist():
        if g.owner[v] == player:
            out[v] = _alive_succ_any_in(view, v, region)
        else:
            out[v] = _alive_succ_all_in(view, v, region)
    return NodeSet(out)


def control_predecessor(view: GameView, player: int, X) -> NodeSet:
    """Nodes from which ``player`` forces the next move into ``X``."""
    return _predecessor(view, player, _target(view, X), view.alive_mask)


def monotone_predecessor(view: GameView, player: int, A, X, c: int) -> NodeSet:
    region = _target(view, A) | _target(view, X)
    return _predecessor(view, player, region, view.game.color >= c)


def permissive_monotone_predecessor(view: GameView, player: int, A, X, c: int) -> NodeSet:
    target = _target(view, X)
    region = _target(view, A) | target
    return _predecessor(view, player, region, (view.game.color >= c) | target)


def _outcome(arena, player, inset, rank, target) -> AttractionOutcome:
    moves = arena.moves(player, inset, rank, target)
    members = np.flatnonzero(inset)
    strategy = {int(v): int(moves[v]) for v in members if moves[v] >= 0}
    return AttractionOutcome(NodeSet(inset), strategy,
                             {int(v): int(rank[v]) for v in members})


def attractor(view: GameView, player: int, X) -> AttractionOutcome:
    """Nodes from which ``player`` forces a visit to ``X`` (``X`` included)."""
    arena = Arena.from_view(view)
    target = _target(view, X)
    inset, rank = arena.attract(player, target)
    return _outcome(arena, player, inset, rank, target)


def is_trap(view: GameView, player: int, X) -> bool:
    """True if ``player`` cannot leave ``X`` and the opponent can stay."""
    region = _target(view, X)
    g = view.game
    for v in np.flatnonzero(region).tolist():
        if g.owner[v] == player:
            if not _alive_succ_all_in(view, v, region):
                return False
        elif not _alive_succ_any_in(view, v, region):
            return False
    return True


def monotone_attractor(view: GameView, player: int, X, c: int) -> AttractionOutcome:
    """Nodes from which ``player`` forces, in at least one move, a visit
    to ``X`` while seeing only colors ``>= c``.  ``X`` itself is not seeded
    into the result."""
    target = _target(view, X)
    if not target.any():
        return AttractionOutcome(NodeSet.empty(view.game.node_count))
    arena = Arena.from_view(view)
    inset, rank = arena.attract(player, target, c, False, False)
    return _outcome(arena, player, inset, rank, target)


def is_fatal(view: GameView, X, outcome: AttractionOutcome) -> bool:
    return NodeSet(_target(view, X)).issubset(outcome.nodes)


def permissive_monotone_attractor(view: GameView, player: int, X, c: int) -> NodeSet:
    """Like :func:`monotone_attractor`, but target nodes pass the color
    guard regardless of their color."""
    target = _target(view, X)
    if not target.any():
        return NodeSet.empty(view.game.node_count)
    inset, _ = Arena.from_view(view).attract(player, target, c, True, False)
    return NodeSet(inset)


def layered_masks(arena: Arena, player: int, X: np.ndarray):
    """Layered attraction on an arena; returns ``(nodes, layer)``.

    ``layer[v]`` is the bound ``d`` of the first layer containing ``v``
    (-1 outside).  Only bounds equal to a color of ``X`` are computed: if
    ``Y`` did not grow since bound ``d-2``, the previous result ``A`` is
    already the fixpoint at ``d`` (the guard at ``d`` only admits nodes
    the guard at ``d-2`` admitted, or members of ``A``).
    """
    g = arena.game
    n = g.node_count
    A = np.zeros(n, np.bool_)
    layer = np.full(n, -1, np.int64)
    for d in np.unique(g.color[X]).tolist():
        A, _ = arena.attract(player, A | (X & (g.color <= d)), d, True, False)
        layer[A & (layer < 0)] = d
    return A, layer


def _check_parity(view, player, target):
    colors = view.game.color[target]
    if colors.size and (colors % 2 != player).any():
        bad = int(np.flatnonzero(target & (view.game.color % 2 != player))[0])
        raise GameError(f"node {bad} in the target has the wrong parity for player {player}")


def layered_attractor(view: GameView, player: int, X) -> NodeSet:
    """Layered permissive attraction to ``X``, all of whose nodes must
    have the parity of ``player``."""
    target = _target(view, X)
    _check_parity(view, player, target)
    nodes, _ = layered_masks(Arena.from_view(view), player, target)
    return NodeSet(nodes)


def layered_attractor_layers(view: GameView, player: int, X) -> dict[int, int]:
    """Layer bound at which each node of the layered attractor appeared."""
    target = _target(view, X)
    _check_parity(view, player, target)
    nodes, layer = layered_masks(Arena.from_view(view), player, target)
    return {int(v): int(layer[v]) for v in np.flatnonzero(nodes)}


def validate_outcome(view: GameView, player: int, X, outcome: AttractionOutcome,
                     *, include_target: bool = True, min_color: int | None = None) -> list[str]:
    """Check the rank/strategy invariant of an outcome; returns problems.

    Every attracted node of ``player`` must move to a target or to a node
    of strictly smaller rank; every other attracted node must have all its
    successors there.
    """
    g = view.game
    target = _target(view, X)
    problems = []

    def level(w):
        if target[w]:
            return 0
        return outcome.rank.get(w)

    for v in outcome.nodes:
        r = outcome.rank.get(v)
        if r is None:
            problems.append(f"node {v} has no rank")
            continue
        if include_target and target[v]:
            if r != 0:
                problems.append(f"target node {v} has rank {r}")
            continue
        if r < 1:
            problems.append(f"attracted node {v} has rank {r}")
            continue
        if min_color is not None and g.color[v] < min_color:
            problems.append(f"node {v} violates the color guard")
        succ = view.successors(v)
        if g.owner[v] == player:
            w = outcome.strategy.get(v)
            if w is None or w not in succ:
                problems.append(f"node {v} has no valid move")
            elif level(w) is None or level(w) >= r:
                problems.append(f"move {v}->{w} does not decrease rank")
        else:
            for w in succ:
                if level(w) is None or level(w) >= r:
                    problems.append(f"opponent node {v} escapes via {w}")
                    break
    return problems

"""Parity-game data model.

A :class:`Game` is immutable and stores its edges in CSR form, sorted by
source and then by target, so iteration order is ascending node id
everywhere.  A :class:`GameView` is a sub-game of a game described by an
alive-node mask and an alive-edge mask; views are never mutated, edge
surgery returns a new view.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .graph import strongly_connected_components

MAX_COLOR = 2**32 - 1


class GameError(ValueError):
    """A game or view violates a structural invariant."""


def opponent(player: int) -> int:
    return 1 - player


def parity_of(color: int) -> int:
    return color % 2


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class NodeSet:
    """Immutable set of node ids of one game, backed by a boolean mask.

    Iteration is in ascending id order.  Comparison with plain Python
    sets is supported for convenience.
    """

    __slots__ = ("_mask",)

    def __init__(self, mask: np.ndarray):
        if mask.dtype != np.bool_:
            raise TypeError("NodeSet mask must be boolean")
        if mask.flags.writeable:
            mask = _readonly(mask.copy())
        self._mask = mask

    @classmethod
    def of(cls, n: int, ids: Iterable[int] = ()) -> "NodeSet":
        mask = np.zeros(n, np.bool_)
        ids = list(ids)
        if ids:
            mask[np.asarray(ids, dtype=np.int64)] = True
        return cls(_readonly(mask))

    @classmethod
    def empty(cls, n: int) -> "NodeSet":
        return cls(_readonly(np.zeros(n, np.bool_)))

    @classmethod
    def full(cls, n: int) -> "NodeSet":
        return cls(_readonly(np.ones(n, np.bool_)))

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    @property
    def universe(self) -> int:
        return self._mask.shape[0]

    def ids(self) -> list[int]:
        return np.flatnonzero(self._mask).tolist()

    def __iter__(self) -> Iterator[int]:
        return iter(self.ids())

    def __len__(self) -> int:
        return int(np.count_nonzero(self._mask))

    def __bool__(self) -> bool:
        return bool(self._mask.any())

    def __contains__(self, v) -> bool:
        return 0 <= v < self._mask.shape[0] and bool(self._mask[v])

    def _other(self, other) -> np.ndarray:
        if isinstance(other, NodeSet):
            return other._mask
        return NodeSet.of(self.universe, other)._mask

    def __or__(self, other) -> "NodeSet":
        return NodeSet(_readonly(self._mask | self._other(other)))

    def __and__(self, other) -> "NodeSet":
        return NodeSet(_readonly(self._mask & self._other(other)))

    def __sub__(self, other) -> "NodeSet":
        return NodeSet(_readonly(self._mask & ~self._other(other)))

    def __xor__(self, other) -> "NodeSet":
        return NodeSet(_readonly(self._mask ^ self._other(other)))

    def issubset(self, other) -> bool:
        return not (self._mask & ~self._other(other)).any()

    def __le__(self, other) -> bool:
        return self.issubset(other)

    def __ge__(self, other) -> bool:
        return not (self._other(other) & ~self._mask).any()

    def __eq__(self, other) -> bool:
        if isinstance(other, NodeSet):
            return self.universe == other.universe and bool(
                np.array_equal(self._mask, other._mask))
        if isinstance(other, (set, frozenset)):
            return set(self.ids()) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._mask.tobytes())

    def __repr__(self) -> str:
        return f"NodeSet({set(self.ids())!r})"


class Game:
    """Immutable parity game over dense node ids ``0..n-1``.

    ``successors`` is one iterable of targets per node.  ``names`` are
    optional labels and ``ids`` the external ids of a compacted file; both
    are carried for output only.
    """

    def __init__(self, owner: Sequence[int], color: Sequence[int],
                 successors: Sequence[Iterable[int]],
                 names: Sequence[str | None] | None = None,
                 ids: Sequence[int] | None = None):
        n = len(owner)
        if len(color) != n or len(successors) != n:
            raise GameError("owner, color and successors must have equal length")
        self.owner = _readonly(np.asarray(owner, dtype=np.int8).reshape(n))
        self.color = _readonly(np.asarray(color, dtype=np.int64).reshape(n))
        if n and not np.isin(self.owner, (0, 1)).all():
            raise GameError("owners must be 0 or 1")
        if n and self.color.min() < 0:
            raise GameError("colors must be natural numbers")

        rows = [sorted(s) for s in successors]
        for v, row in enumerate(rows):
            if not row:
                raise GameError(f"node {v} has no successor")
        lengths = np.fromiter((len(r) for r in rows), dtype=np.int64, count=n)
        succ_ptr = np.zeros(n + 1, np.int64)
        np.cumsum(lengths, out=succ_ptr[1:])
        succ_idx = np.fromiter((w for r in rows for w in r), dtype=np.int64,
                               count=int(succ_ptr[-1]))
        if succ_idx.size and (succ_idx.min() < 0 or succ_idx.max() >= n):
            bad = int(np.flatnonzero((succ_idx < 0) | (succ_idx >= n))[0])
            src = int(np.searchsorted(succ_ptr, bad, side="right") - 1)
            raise GameError(f"node {src} has successor {int(succ_idx[bad])} out of range")
        src = np.repeat(np.arange(n, dtype=np.int64), lengths)
        dup = (np.diff(succ_idx) == 0) & (np.diff(src) == 0)
        if dup.any():
            j = int(np.flatnonzero(dup)[0])
            raise GameError(f"node {int(src[j])} lists successor {int(succ_idx[j])} twice")

        order = np.argsort(succ_idx, kind="stable")
        pred_ptr = np.zeros(n + 1, np.int64)
        np.cumsum(np.bincount(succ_idx, minlength=n), out=pred_ptr[1:])
        self.succ_ptr = _readonly(succ_ptr)
        self.succ_idx = _readonly(succ_idx)
        self.edge_src = _readonly(src)
        self.pred_ptr = _readonly(pred_ptr)
        self.pred_idx = _readonly(src[order])
        self.pred_eid = _readonly(order.astype(np.int64))

        if names is not None and len(names) != n:
            raise GameError("names must have one entry per node")
        self.names = tuple(names) if names is not None else None
        if ids is not None:
            if len(ids) != n or len(set(ids)) != n:
                raise GameError("ids must be distinct, one per node")
        self.ids = tuple(int(i) for i in ids) if ids is not None else None

    @property
    def node_count(self) -> int:
        return self.owner.shape[0]

    def __len__(self) -> int:
        return self.node_count

    @property
    def edge_count(self) -> int:
        return self.succ_idx.shape[0]

    def successors(self, v: int) -> list[int]:
        return self.succ_idx[self.succ_ptr[v]:self.succ_ptr[v + 1]].tolist()

    def predecessors(self, v: int) -> list[int]:
        return self.pred_idx[self.pred_ptr[v]:self.pred_ptr[v + 1]].tolist()

    def edges(self) -> Iterator[tuple[int, int]]:
        return zip(self.edge_src.tolist(), self.succ_idx.tolist())

    def edge_id(self, v: int, w: int) -> int:
        """Position of edge ``(v, w)`` in the successor array, or -1."""
        if not (0 <= v < self.node_count):
            return -1
        lo, hi = int(self.succ_ptr[v]), int(self.succ_ptr[v + 1])
        j = lo + int(np.searchsorted(self.succ_idx[lo:hi], w))
        if j < hi and self.succ_idx[j] == w:
            return j
        return -1

    def name(self, v: int) -> str:
        if self.names is not None and self.names[v] is not None:
            return self.names[v]
        return f"v{v}"

    def external_id(self, v: int) -> int:
        return self.ids[v] if self.ids is not None else v

    def full_view(self) -> "GameView":
        n = self.node_count
        return GameView(self, np.ones(n, np.bool_), np.ones(self.edge_count, np.bool_),
                        _outdeg=np.diff(self.succ_ptr), _check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Game):
            return NotImplemented
        return (np.array_equal(self.owner, other.owner)
                and np.array_equal(self.color, other.color)
                and np.array_equal(self.succ_ptr, other.succ_ptr)
                and np.array_equal(self.succ_idx, other.succ_idx))

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return f"Game(nodes={self.node_count}, edges={self.edge_count})"


class GameView:
    """Sub-game of a :class:`Game`: its alive nodes and its alive edges.

    An edge is part of the view when its mask bit is set and both end
    points are alive.  Construction checks that every alive node keeps a
    successor.
    """

    __slots__ = ("game", "_alive", "_edge_alive", "_outdeg")

    def __init__(self, game: Game, alive: np.ndarray, edge_alive: np.ndarray,
                 *, _outdeg: np.ndarray | None = None, _check: bool = True):
        self.game = game
        self._alive = _readonly(np.array(alive, dtype=np.bool_, copy=True))
        self._edge_alive = _readonly(np.array(edge_alive, dtype=np.bool_, copy=True))
        if _outdeg is None:
            _outdeg = _kernels.alive_outdeg(game.succ_ptr, game.succ_idx,
                                            self._edge_alive, self._alive)
        else:
            _outdeg = np.array(_outdeg, dtype=np.int64, copy=True)
        self._outdeg = _readonly(_outdeg)
        if _check:
            dead = self._alive & (self._outdeg == 0)
            if dead.any():
                v = int(np.flatnonzero(dead)[0])
                raise GameError(f"node {v} has no successor inside the sub-game")

    @property
    def alive(self) -> NodeSet:
        return NodeSet(self._alive)

    @property
    def alive_mask(self) -> np.ndarray:
        return self._alive

    @property
    def edge_mask(self) -> np.ndarray:
        return self._edge_alive

    @property
    def outdeg(self) -> np.ndarray:
        return self._outdeg

    @property
    def removed_edges(self) -> frozenset[tuple[int, int]]:
        g = self.game
        gone = np.flatnonzero(~self._edge_alive)
        return frozenset(zip(g.edge_src[gone].tolist(), g.succ_idx[gone].tolist()))

    def __len__(self) -> int:
        return int(np.count_nonzero(self._alive))

    @property
    def is_empty(self) -> bool:
        return not self._alive.any()

    def nodes(self) -> list[int]:
        return np.flatnonzero(self._alive).tolist()

    def _edge_slots(self, v: int) -> np.ndarray:
        g = self.game
        lo, hi = g.succ_ptr[v], g.succ_ptr[v + 1]
        targets = g.succ_idx[lo:hi]
        return targets[self._edge_alive[lo:hi] & self._alive[targets]]

    def successors(self, v: int) -> list[int]:
        if not self._alive[v]:
            return []
        return self._edge_slots(v).tolist()

    def predecessors(self, v: int) -> list[int]:
        if not self._alive[v]:
            return []
        g = self.game
        lo, hi = g.pred_ptr[v], g.pred_ptr[v + 1]
        sources = g.pred_idx[lo:hi]
        keep = self._edge_alive[g.pred_eid[lo:hi]] & self._alive[sources]
        return sources[keep].tolist()

    def out_degree(self, v: int) -> int:
        return int(self._outdeg[v])

    def has_edge(self, v: int, w: int) -> bool:
        j = self.game.edge_id(v, w)
        return j >= 0 and bool(self._edge_alive[j] and self._alive[v] and self._alive[w])

    def edges(self) -> Iterator[tuple[int, int]]:
        g = self.game
        keep = self._edge_alive & self._alive[g.edge_src] & self._alive[g.succ_idx]
        return zip(g.edge_src[keep].tolist(), g.succ_idx[keep].tolist())

    @property
    def edge_count(self) -> int:
        return int(self._outdeg.sum())

    def colors(self) -> list[int]:
        """Distinct colors of alive nodes, ascending."""
        return np.unique(self.game.color[self._alive]).tolist()

    def restrict(self, nodes) -> "GameView":
        """The sub-game on ``nodes`` (a subset of the alive nodes)."""
        mask = _mask_of(self.game.node_count, nodes)
        if (mask & ~self._alive).any():
            raise GameError("restriction must be a subset of the alive nodes")
        return GameView(self.game, mask, self._edge_alive)

    def same_subgame(self, other: "GameView") -> bool:
        """Equal alive nodes and equal edges among them."""
        if self.game is not other.game or not np.array_equal(self._alive, other._alive):
            return False
        g = self.game
        live = self._alive[g.edge_src] & self._alive[g.succ_idx]
        return bool(np.array_equal(self._edge_alive & live, other._edge_alive & live))

    def __repr__(self) -> str:
        return f"GameView(alive={len(self)}/{self.game.node_count}, removed_edges={int((~self._edge_alive).sum())})"


def _mask_of(n: int, nodes) -> np.ndarray:
    if isinstance(nodes, NodeSet):
        return nodes.mask
    if isinstance(nodes, np.ndarray) and nodes.dtype == np.bool_:
        return nodes
    return NodeSet.of(n, nodes).mask


def subgame_view(g: Game, alive) -> GameView:
    """View of ``g`` restricted to ``alive``; raises if a node dead-ends."""
    return GameView(g, _mask_of(g.node_count, alive), np.ones(g.edge_count, np.bool_))


def _alive_edge_id(view: GameView, src: int, dst: int) -> int:
    j = view.game.edge_id(src, dst)
    if j < 0 or not view.has_edge(src, dst):
        raise GameError(f"edge ({src},{dst}) is not an edge of the view")
    return j


def remove_edge(view: GameView, e: tuple[int, int]) -> GameView:
    """The view without edge ``e``; removing a last successor is an error."""
    src, dst = e
    j = _alive_edge_id(view, src, dst)
    if view.outdeg[src] < 2:
        raise GameError(f"edge ({src},{dst}) is the last successor of node {src}")
    edges = view.edge_mask.copy()
    edges[j] = False
    outdeg = view.outdeg.copy()
    outdeg[src] -= 1
    return GameView(view.game, view.alive_mask, edges, _outdeg=outdeg, _check=False)


def fix_edge(view: GameView, src: int, dst: int) -> GameView:
    """The view in which ``src`` has ``dst`` as its only successor."""
    _alive_edge_id(view, src, dst)
    g = view.game
    lo, hi = int(g.succ_ptr[src]), int(g.succ_ptr[src + 1])
    edges = view.edge_mask.copy()
    edges[lo:hi] = g.succ_idx[lo:hi] == dst
    outdeg = view.outdeg.copy()
    outdeg[src] = 1
    return GameView(g, view.alive_mask, edges, _outdeg=outdeg, _check=False)


def scc_decompose(view: GameView) -> list[NodeSet]:
    """SCCs of the view, ordered so that edges never point backwards."""
    n = view.game.node_count
    comps = list(strongly_connected_components(view.nodes(), view.successors))
    comps.reverse()
    return [NodeSet.of(n, sorted(c)) for c in comps]

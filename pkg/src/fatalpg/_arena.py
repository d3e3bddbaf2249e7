"""Mutable working copy of a view, owned by a single solver run."""

import numpy as np

from . import _kernels
from .game import GameError, GameView


class Arena:
    __slots__ = ("game", "alive", "edge_alive", "outdeg")

    def __init__(self, game, alive, edge_alive, outdeg):
        self.game = game
        self.alive = alive
        self.edge_alive = edge_alive
        self.outdeg = outdeg

    @classmethod
    def from_view(cls, view: GameView) -> "Arena":
        return cls(view.game, view.alive_mask.copy(), view.edge_mask.copy(),
                   view.outdeg.copy())

    def copy(self) -> "Arena":
        return Arena(self.game, self.alive.copy(), self.edge_alive.copy(), self.outdeg.copy())

    def view(self) -> GameView:
        return GameView(self.game, self.alive, self.edge_alive, _outdeg=self.outdeg,
                        _check=False)

    def attract(self, player, target, min_color=-1, permissive=False, include_target=True):
        g = self.game
        return _kernels.attract(g.pred_ptr, g.pred_idx, g.pred_eid, self.edge_alive,
                                self.alive, self.outdeg, g.owner, g.color, player, target,
                                min_color, permissive, include_target)

    def moves(self, player, inset, rank, target):
        g = self.game
        return _kernels.attractor_moves(g.succ_ptr, g.succ_idx, self.edge_alive, self.alive,
                                        g.owner, player, inset, rank, target)

    def kill(self, region) -> None:
        g = self.game
        stranded = _kernels.kill_nodes(g.pred_ptr, g.pred_idx, g.pred_eid, self.edge_alive,
                                       self.alive, self.outdeg, region)
        if stranded:
            raise GameError("removing a region left nodes without successors")

    def drop_edges_into(self, src: int, region) -> int:
        """Remove every alive edge from ``src`` into ``region``."""
        g = self.game
        lo, hi = g.succ_ptr[src], g.succ_ptr[src + 1]
        slots = self.edge_alive[lo:hi] & region[g.succ_idx[lo:hi]]
        k = int(np.count_nonzero(slots))
        if k:
            self.edge_alive[lo:hi] &= ~slots
            self.outdeg[src] -= k
            if self.outdeg[src] == 0:
                raise GameError(f"edge removal stranded node {src}")
        return k

    def colors(self):
        return np.unique(self.game.color[self.alive])

"""Benchmark families and seeded random games.

Random games draw from numpy's PCG64 generator seeded with the given
value.  The stream is consumed in a fixed order: owners of all nodes,
then colors of all nodes, then out-degrees of all nodes, then the
successor sample of node 0, node 1, and so on.  The same seed therefore
yields the same game on every platform numpy supports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import Game


@dataclass(frozen=True)
class RandomSpec:
    n: int
    out_degree: tuple[int, int]
    colors: int
    seed: int = 0

    def validate(self) -> None:
        lo, hi = self.out_degree
        if self.n < 2:
            raise ValueError("random games need at least 2 nodes (no self-loops)")
        if not 1 <= lo <= hi:
            raise ValueError(f"out-degree bounds must satisfy 1 <= l <= u, got ({lo},{hi})")
        if lo > self.n - 1:
            raise ValueError(f"minimal out-degree {lo} exceeds n-1 = {self.n - 1}")
        if self.colors < 1:
            raise ValueError("at least one color is required")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned value")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _successor_sample(rng, n, v, d):
    """``d`` distinct successors of ``v`` other than ``v``, ascending."""
    picks = rng.choice(n - 1, size=d, replace=False)
    picks[picks >= v] += 1
    picks.sort()
    return picks.tolist()


def gen_random(spec: RandomSpec) -> Game:
    spec.validate()
    n = spec.n
    lo, hi = spec.out_degree
    hi = min(hi, n - 1)
    rng = _rng(spec.seed)
    owner = rng.integers(0, 2, size=n)
    color = rng.integers(0, spec.colors, size=n)
    degree = rng.integers(lo, hi + 1, size=n)
    succ = [_successor_sample(rng, n, v, int(degree[v])) for v in range(n)]
    return Game(owner, color, succ)


def gen_random_buchi(n: int, l: int, u: int, seed: int = 0) -> Game:
    return gen_random(RandomSpec(n, (l, u), 2, seed))


def gen_random_deterministic(n: int, c: int, seed: int = 0) -> Game:
    """Every node has exactly one successor, never itself."""
    if n < 2:
        raise ValueError("deterministic games need at least 2 nodes")
    return gen_random(RandomSpec(n, (1, 1), c, seed))


def gen_random_weak(num_sccs: int, scc_size: int, seed: int = 0, *,
                    extra_edges: int | None = None) -> Game:
    """A chain of strongly connected blocks of constant color.

    Each block is a Hamiltonian cycle over a random permutation of its
    nodes plus ``extra_edges`` random internal edges (default: the block
    size).  Block colors are non-decreasing along the chain and every
    block except the last gets one to three edges into the next block.
    """
    if num_sccs < 1:
        raise ValueError("need at least one block")
    if scc_size < 2:
        raise ValueError("blocks need at least 2 nodes")
    rng = _rng(seed)
    n = num_sccs * scc_size
    extra = scc_size if extra_edges is None else extra_edges
    owner = rng.integers(0, 2, size=n)
    steps = rng.integers(0, 3, size=num_sccs)
    steps[0] = rng.integers(0, 4)
    block_color = np.cumsum(steps)
    color = np.repeat(block_color, scc_size)
    succ: list[set[int]] = [set() for _ in range(n)]
    for b in range(num_sccs):
        base = b * scc_size
        order = base + rng.permutation(scc_size)
        for i in range(scc_size):
            succ[order[i]].add(int(order[(i + 1) % scc_size]))
        for _ in range(extra):
            v, w = base + rng.integers(0, scc_size, size=2)
            if v != w:
                succ[v].add(int(w))
        if b + 1 < num_sccs:
            for _ in range(int(rng.integers(1, 4))):
                v = base + int(rng.integers(0, scc_size))
                w = base + scc_size + int(rng.integers(0, scc_size))
                succ[v].add(w)
    return Game(owner, color, [sorted(s) for s in succ])


def gen_clique(n: int) -> Game:
    """Complete graph without self-loops, node ``i`` has owner ``i % 2``
    and color ``i``."""
    if n < 2:
        raise ValueError("cliques need at least 2 nodes")
    ids = np.arange(n)
    succ = [np.delete(ids, i) for i in range(n)]
    return Game(ids % 2, ids, succ)


def gen_ladder(n: int) -> Game:
    """``2n`` nodes, ``v -> v+1`` and ``v -> v+2`` modulo ``2n``; owner and
    color are both ``v % 2``."""
    if n < 1:
        raise ValueError("ladders need at least one layer")
    m = 2 * n
    ids = np.arange(m)
    succ = [sorted({(v + 1) % m, (v + 2) % m}) for v in range(m)]
    return Game(ids % 2, ids % 2, succ)


FAMILIES = {
    "clique": gen_clique,
    "ladder": gen_ladder,
}

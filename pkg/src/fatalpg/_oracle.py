"""Brute-force oracle over memoryless strategies.

Deliberately shares no fixpoint code with the solvers: plays are judged
by bitmask reachability on the strategy-restricted graph.  Limited to
games of at most 62 nodes by the mask width; the public wrapper imposes
a much smaller bound.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _closure(adj, within):
    """Transitive (non-reflexive) reachability inside the node mask ``within``."""
    n = adj.shape[0]
    reach = np.zeros(n, np.int64)
    for v in range(n):
        if (within >> v) & 1:
            reach[v] = adj[v] & within
    for k in range(n):
        if not (within >> k) & 1:
            continue
        bit = np.int64(1) << k
        for v in range(n):
            if reach[v] & bit:
                reach[v] |= reach[k]
    return reach


@njit(cache=True)
def _safe_nodes(adj, color, player, full):
    """Nodes from which no reachable cycle has a minimum of the wrong parity."""
    n = adj.shape[0]
    bad = np.int64(0)
    for v in range(n):
        c = color[v]
        if c % 2 == player:
            continue
        within = np.int64(0)
        for u in range(n):
            if color[u] >= c:
                within |= np.int64(1) << u
        reach = _closure(adj, within)
        if (reach[v] >> v) & 1:
            bad |= np.int64(1) << v
    reach = _closure(adj, full)
    safe = np.int64(0)
    for v in range(n):
        if ((reach[v] | (np.int64(1) << v)) & bad) == 0:
            safe |= np.int64(1) << v
    return safe


@njit(cache=True)
def best_strategy(succ_ptr, succ_idx, owner, color, player):
    """Enumerate every memoryless strategy of ``player``.

    Returns ``(union, best, choice)``: the union of the sets each strategy
    wins, the set won by the best single strategy, and that strategy as
    a move per node (-1 for nodes of the opponent).
    """
    n = owner.shape[0]
    full = (np.int64(1) << n) - 1
    mine = np.zeros(n, np.bool_)
    pick = np.zeros(n, np.int64)
    for v in range(n):
        mine[v] = owner[v] == player
    base = np.zeros(n, np.int64)
    for v in range(n):
        for j in range(succ_ptr[v], succ_ptr[v + 1]):
            base[v] |= np.int64(1) << succ_idx[j]
    adj = base.copy()
    union = np.int64(0)
    best = np.int64(-1)
    best_count = -1
    choice = np.full(n, -1, np.int64)
    while True:
        for v in range(n):
            if mine[v]:
                adj[v] = np.int64(1) << succ_idx[succ_ptr[v] + pick[v]]
        safe = _safe_nodes(adj, color, player, full)
        union |= safe
        count = 0
        for v in range(n):
            if (safe >> v) & 1:
                count += 1
        if count > best_count:
            best_count = count
            best = safe
            for v in range(n):
                choice[v] = succ_idx[succ_ptr[v] + pick[v]] if mine[v] else -1
        # advance the mixed-radix counter over the player's choices
        v = 0
        while v < n:
            if mine[v]:
                pick[v] += 1
                if pick[v] < succ_ptr[v + 1] - succ_ptr[v]:
                    break
                pick[v] = 0
            v += 1
        if v == n:
            break
    return union, best, choice

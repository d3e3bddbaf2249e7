"""Compiled exhaustive sweep: Zielonka against brute force on all tiny games.

Games are enumerated up to renaming of nodes: the pairs (color, owner)
are listed in non-decreasing order, so every game is isomorphic to one
visited here, while successor sets range over all non-empty subsets of
size at most ``max_deg``, self-loops included.
"""

import numpy as np
from numba import njit

from fatalpg import _kernels, _oracle


@njit(cache=True)
def _subsets(n, max_deg):
    """All successor sets of size 1..max_deg over n nodes, as bitmasks."""
    out = []
    for m in range(1, 1 << n):
        k = 0
        for v in range(n):
            if (m >> v) & 1:
                k += 1
        if k <= max_deg:
            out.append(m)
    return np.array(out, np.int64)


@njit(cache=True)
def _check_game(n, rows, owner, color):
    succ_ptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        k = 0
        for w in range(n):
            if (rows[v] >> w) & 1:
                k += 1
        succ_ptr[v + 1] = succ_ptr[v] + k
    m = succ_ptr[n]
    succ_idx = np.empty(m, np.int64)
    for v in range(n):
        j = succ_ptr[v]
        for w in range(n):
            if (rows[v] >> w) & 1:
                succ_idx[j] = w
                j += 1
    pred_ptr = np.zeros(n + 1, np.int64)
    for j in range(m):
        pred_ptr[succ_idx[j] + 1] += 1
    for v in range(n):
        pred_ptr[v + 1] += pred_ptr[v]
    fill = pred_ptr[:n].copy()
    pred_idx = np.empty(m, np.int64)
    pred_eid = np.empty(m, np.int64)
    for v in range(n):
        for j in range(succ_ptr[v], succ_ptr[v + 1]):
            w = succ_idx[j]
            pred_idx[fill[w]] = v
            pred_eid[fill[w]] = j
            fill[w] += 1
    edge_alive = np.ones(m, np.bool_)
    alive = np.ones(n, np.bool_)
    win = np.full(n, -1, np.int64)
    strat = np.full(n, -1, np.int64)
    calls = np.zeros(1, np.int64)
    _kernels.zielonka(succ_ptr, succ_idx, pred_ptr, pred_idx, pred_eid, edge_alive, owner,
                      color, alive, win, strat, 0.0, calls)
    u0, b0, c0 = _oracle.best_strategy(succ_ptr, succ_idx, owner, color, 0)
    u1, b1, c1 = _oracle.best_strategy(succ_ptr, succ_idx, owner, color, 1)
    for v in range(n):
        in0 = (u0 >> v) & 1
        in1 = (u1 >> v) & 1
        if in0 + in1 != 1:
            return False
        if (win[v] == 0) != (in0 == 1):
            return False
    return u0 == b0 and u1 == b1


@njit(cache=True)
def sweep(n, max_deg, num_colors):
    """Returns (games checked, mismatches)."""
    subsets = _subsets(n, max_deg)
    s = subsets.shape[0]
    keys = 2 * num_colors
    key = np.zeros(n, np.int64)
    owner = np.zeros(n, np.int64)
    color = np.zeros(n, np.int64)
    rows = np.zeros(n, np.int64)
    pick = np.zeros(n, np.int64)
    checked = 0
    bad = 0
    while True:
        for v in range(n):
            color[v] = key[v] // 2
            owner[v] = key[v] % 2
        pick[:] = 0
        while True:
            for v in range(n):
                rows[v] = subsets[pick[v]]
            checked += 1
            if not _check_game(n, rows, owner, color):
                bad += 1
            v = 0
            while v < n:
                pick[v] += 1
                if pick[v] < s:
                    break
                pick[v] = 0
                v += 1
            if v == n:
                break
        # next non-decreasing key sequence
        i = n - 1
        while i >= 0 and key[i] == keys - 1:
            i -= 1
        if i < 0:
            break
        key[i] += 1
        for j in range(i + 1, n):
            key[j] = key[i]
    return checked, bad

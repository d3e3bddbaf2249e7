"""Compiled inner loops over the CSR adjacency of a game.

Every kernel takes plain numpy arrays so that it can be shared by all
views of one game.  Edge ids are positions in the successor array;
``pred_eid[j]`` maps a predecessor slot back to that id.
"""

import time

import numpy as np
from numba import njit, objmode


@njit(cache=True)
def alive_outdeg(succ_ptr, succ_idx, edge_alive, alive):
    n = alive.shape[0]
    deg = np.zeros(n, np.int64)
    for v in range(n):
        if alive[v]:
            k = 0
            for j in range(succ_ptr[v], succ_ptr[v + 1]):
                if edge_alive[j] and alive[succ_idx[j]]:
                    k += 1
            deg[v] = k
    return deg


@njit(cache=True)
def attract(pred_ptr, pred_idx, pred_eid, edge_alive, alive, outdeg, owner,
            color, player, target, min_color, permissive, include_target):
    """Backward worklist fixpoint shared by all attractor flavours.

    Returns ``(inset, rank)``.  Target nodes sit at level 0 of the
    worklist.  With ``include_target`` they are members of rank 0
    (classical attractor); otherwise they join only when attracted in at
    least one move (monotone attractors).  A node is admitted if its
    color is at least ``min_color``, or, when ``permissive``, if it is a
    target node.
    """
    n = alive.shape[0]
    inset = np.zeros(n, np.bool_)
    rank = np.full(n, -1, np.int64)
    level = np.zeros(n, np.int64)
    count = outdeg.copy()
    queue = np.empty(n, np.int64)
    head = 0
    tail = 0
    for v in range(n):
        if target[v] and alive[v]:
            queue[tail] = v
            tail += 1
            if include_target:
                inset[v] = True
                rank[v] = 0
    while head < tail:
        w = queue[head]
        head += 1
        lw = level[w]
        for j in range(pred_ptr[w], pred_ptr[w + 1]):
            if not edge_alive[pred_eid[j]]:
                continue
            u = pred_idx[j]
            if not alive[u] or inset[u]:
                continue
            if color[u] < min_color and not (permissive and target[u]):
                continue
            if owner[u] == player:
                ok = True
            else:
                count[u] -= 1
                ok = count[u] == 0
            if ok:
                inset[u] = True
                rank[u] = lw + 1
                if not target[u]:
                    level[u] = lw + 1
                    queue[tail] = u
                    tail += 1
    return inset, rank


@njit(cache=True)
def attractor_moves(succ_ptr, succ_idx, edge_alive, alive, owner, player,
                    inset, rank, target):
    """Strategy of ``player`` on the attracted part of ``inset``.

    Each attracted node moves to the successor of minimal rank (targets
    count as rank 0), ties broken by the smaller id.  -1 marks no move.
    """
    n = alive.shape[0]
    moves = np.full(n, -1, np.int64)
    for u in range(n):
        if not inset[u] or owner[u] != player or rank[u] < 1:
            continue
        best = -1
        best_rank = rank[u]
        for j in range(succ_ptr[u], succ_ptr[u + 1]):
            if not edge_alive[j]:
                continue
            w = succ_idx[j]
            if not alive[w]:
                continue
            if target[w]:
                r = 0
            elif inset[w]:
                r = rank[w]
            else:
                continue
            if r < best_rank:
                best = w
                best_rank = r
        moves[u] = best
    return moves


@njit(cache=True)
def kill_nodes(pred_ptr, pred_idx, pred_eid, edge_alive, alive, outdeg, region):
    """Remove ``region`` from ``alive`` in place, keeping ``outdeg`` exact.

    Returns the number of surviving nodes left without a successor.
    """
    n = alive.shape[0]
    for w in range(n):
        if region[w]:
            alive[w] = False
            outdeg[w] = 0
    stranded = 0
    for w in range(n):
        if not region[w]:
            continue
        for j in range(pred_ptr[w], pred_ptr[w + 1]):
            u = pred_idx[j]
            if alive[u] and edge_alive[pred_eid[j]]:
                outdeg[u] -= 1
                if outdeg[u] == 0:
                    stranded += 1
    return stranded


@njit(cache=True)
def _now():
    with objmode(t="float64"):
        t = time.perf_counter()
    return t


@njit(cache=True)
def zielonka(succ_ptr, succ_idx, pred_ptr, pred_idx, pred_eid, edge_alive, owner,
             color, alive, win, strat, deadline, calls):
    """Recursive Zielonka on the sub-game ``alive``, minimal color first.

    Fills ``win`` (winner per node) and ``strat`` (move of the winner's
    nodes) for every alive node.  Returns 1 if ``deadline`` (seconds on
    the ``perf_counter`` clock, 0 for none) passed, else 0.
    """
    n = alive.shape[0]
    lowest = -1
    for v in range(n):
        if alive[v] and (lowest < 0 or color[v] < lowest):
            lowest = color[v]
    if lowest < 0:
        return 0
    calls[0] += 1
    if deadline > 0.0 and calls[0] % 32 == 0:
        if _now() > deadline:
            return 1
    p = lowest % 2
    q = 1 - p
    outdeg = alive_outdeg(succ_ptr, succ_idx, edge_alive, alive)
    top = alive & (color == lowest)
    A, rank = attract(pred_ptr, pred_idx, pred_eid, edge_alive, alive, outdeg, owner,
                      color, p, top, -1, False, True)
    sub = alive & ~A
    if sub.any():
        if zielonka(succ_ptr, succ_idx, pred_ptr, pred_idx, pred_eid, edge_alive, owner,
                    color, sub, win, strat, deadline, calls):
            return 1
    lost = sub & (win == q)
    if not lost.any():
        moves = attractor_moves(succ_ptr, succ_idx, edge_alive, alive, owner, p, A, rank, top)
        for v in range(n):
            if not alive[v]:
                continue
            win[v] = p
            if owner[v] != p or sub[v]:
                continue
            if top[v]:
                for j in range(succ_ptr[v], succ_ptr[v + 1]):
                    if edge_alive[j] and alive[succ_idx[j]]:
                        strat[v] = succ_idx[j]
                        break
            else:
                strat[v] = moves[v]
        return 0
    B, brank = attract(pred_ptr, pred_idx, pred_eid, edge_alive, alive, outdeg, owner,
                       color, q, lost, -1, False, True)
    moves = attractor_moves(succ_ptr, succ_idx, edge_alive, alive, owner, q, B, brank, lost)
    for v in range(n):
        if B[v]:
            win[v] = q
            if owner[v] == q and not lost[v]:
                strat[v] = moves[v]
    rest = alive & ~B
    if rest.any():
        return zielonka(succ_ptr, succ_idx, pred_ptr, pred_idx, pred_eid, edge_alive, owner,
                        color, rest, win, strat, deadline, calls)
    return 0

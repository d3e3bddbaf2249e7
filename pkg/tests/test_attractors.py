import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatalpg import (GameError, NodeSet, attractor, control_predecessor, is_fatal, is_trap,
                     layered_attractor, layered_attractor_layers, monotone_attractor,
                     monotone_predecessor, permissive_monotone_attractor,
                     permissive_monotone_predecessor, remove_edge, subgame_view,
                     validate_outcome)

from conftest import games


def lfp(step, n):
    z = NodeSet.empty(n)
    while True:
        nxt = step(z)
        if nxt == z:
            return z
        z = nxt


def naive_attractor(view, p, X):
    n = view.game.node_count
    X = NodeSet.of(n, X)
    return lfp(lambda z: X | control_predecessor(view, p, z), n)


def naive_monotone(view, p, X, c):
    return lfp(lambda z: monotone_predecessor(view, p, z, X, c), view.game.node_count)


def naive_permissive(view, p, X, c):
    return lfp(lambda z: permissive_monotone_predecessor(view, p, z, X, c),
               view.game.node_count)


def naive_layered(view, p, X):
    n = view.game.node_count
    X = NodeSet.of(n, X)
    A = NodeSet.empty(n)
    if not X:
        return A
    b = max(int(view.game.color[v]) for v in X)
    for d in range(p, b + 1, 2):
        Y = NodeSet.of(n, [v for v in X if view.game.color[v] <= d])
        A = naive_permissive(view, p, A | Y, d)
    return A


# --- examples ---------------------------------------------------------------

def test_control_predecessor_examples(g1, g5b):
    v = g1.full_view()
    assert {6, 9} <= set(control_predecessor(v, 0, [8]))
    assert not control_predecessor(v, 0, [])
    assert control_predecessor(g5b.full_view(), 0, [0, 2]) == {1}


def test_attractor_examples(g1):
    v = g1.full_view()
    X = {2, 4, 6, 8, 9, 10, 11}
    assert attractor(v, 0, X).nodes == X | {0, 1}
    assert attractor(v, 0, range(12)).nodes == set(range(12))
    assert attractor(v, 0, {9, 10, 11}).nodes == {9, 10, 11}


def test_is_trap_examples(g1):
    v = g1.full_view()
    assert is_trap(v, 0, {3, 5, 7})
    assert is_trap(v, 0, range(12))
    rest = v.alive - attractor(v, 0, {8}).nodes
    assert is_trap(v, 0, rest)
    assert not is_trap(v, 0, {9, 10})


def test_monotone_predecessor_examples(g1):
    v = g1.full_view()
    assert monotone_predecessor(v, 0, [], [8], 4) == {6, 9}
    assert monotone_predecessor(v, 0, [6, 9], [8], 4) == {4, 6, 8, 9, 10}
    assert not monotone_predecessor(v, 0, [], [8], 21)


def test_monotone_attractor_examples(g1):
    v = g1.full_view()
    ma = monotone_attractor(v, 0, [8], 4)
    assert ma.nodes == {2, 4, 6, 8, 9, 10, 11}
    assert is_fatal(v, [8], ma)
    assert monotone_attractor(v, 0, [9], 8).nodes == {9, 10, 11}
    ma11 = monotone_attractor(v, 1, [10], 11)
    assert ma11.nodes == {11} and 10 not in ma11
    assert not is_fatal(v, [10], ma11)
    assert is_fatal(v, [], monotone_attractor(v, 0, [], 0))
    assert not monotone_attractor(v, 0, [], 0).nodes


def test_monotone_attractor_strategy(g1):
    v = g1.full_view()
    ma = monotone_attractor(v, 0, [8], 4)
    assert validate_outcome(v, 0, [8], ma, include_target=False, min_color=4) == []
    assert ma.strategy[9] == 8 and ma.strategy[6] == 8 and ma.strategy[2] == 4


def test_permissive_examples(g1):
    v = g1.full_view()
    # v5 (owner 0, color 20) has both successors v3, v7 in X, so it is
    # attracted; v3 and v7 themselves have successor v5 outside A and X.
    assert permissive_monotone_predecessor(v, 1, [], [3, 7], 19) == {5}
    assert not permissive_monotone_predecessor(v, 1, [], [], 0)
    assert permissive_monotone_predecessor(v, 0, [6, 9], [8], 4) == \
        monotone_predecessor(v, 0, [6, 9], [8], 4)
    assert permissive_monotone_attractor(v, 0, [8], 4) == monotone_attractor(v, 0, [8], 4).nodes
    assert not permissive_monotone_attractor(v, 0, [], 3)


def test_layered_examples(g1):
    v = g1.full_view()
    assert layered_attractor(v, 0, [1, 8]) == set(range(12)) - {3, 5, 7}
    assert layered_attractor(v, 0, [8]) == monotone_attractor(v, 0, [8], 4).nodes
    assert not layered_attractor(v, 0, [])
    with pytest.raises(GameError):
        layered_attractor(v, 0, [1, 7])
    layers = layered_attractor_layers(v, 0, [1, 8])
    # nothing is attracted to {v1} alone at bound 0
    assert set(layers.values()) == {4}


def test_layered_rejects_odd_target_for_player_zero(g1):
    with pytest.raises(GameError, match="parity"):
        layered_attractor(g1.full_view(), 0, [3])


# --- properties -------------------------------------------------------------

@st.composite
def game_and_target(draw):
    g = draw(games())
    X = draw(st.sets(st.integers(0, g.node_count - 1)))
    p = draw(st.integers(0, 1))
    return g, X, p


@settings(max_examples=150)
@given(game_and_target())
def test_attractor_properties(case):
    g, X, p = case
    v = g.full_view()
    out = attractor(v, p, X)
    assert NodeSet.of(g.node_count, X) <= out.nodes
    assert out.nodes == naive_attractor(v, p, X)
    assert validate_outcome(v, p, X, out) == []
    rest = v.alive - out.nodes
    assert is_trap(v, p, rest)
    subgame_view(g, rest)  # the complement is a sub-game
    bigger = attractor(v, p, set(X) | {0})
    assert out.nodes <= bigger.nodes


@settings(max_examples=150)
@given(game_and_target(), st.integers(0, 6))
def test_monotone_attractor_properties(case, c):
    g, X, p = case
    v = g.full_view()
    ma = monotone_attractor(v, p, X, c)
    assert ma.nodes == naive_monotone(v, p, X, c)
    assert all(g.color[u] >= c for u in ma.nodes)
    assert ma.nodes <= attractor(v, p, X).nodes
    assert validate_outcome(v, p, X, ma, include_target=False, min_color=c) == []
    assert permissive_monotone_attractor(v, p, X, c) == naive_permissive(v, p, X, c)


@settings(max_examples=150)
@given(games(), st.integers(0, 6))
def test_permissive_equals_monotone_on_uniform_targets(g, c):
    v = g.full_view()
    X = [u for u in range(g.node_count) if g.color[u] == c]
    assert permissive_monotone_attractor(v, c % 2, X, c) == monotone_attractor(v, c % 2, X, c).nodes


@settings(max_examples=150)
@given(games(), st.integers(0, 1), st.data())
def test_layered_matches_naive(g, p, data):
    v = g.full_view()
    candidates = [u for u in range(g.node_count) if g.color[u] % 2 == p]
    X = data.draw(st.sets(st.sampled_from(candidates)) if candidates else st.just(set()))
    assert layered_attractor(v, p, X) == naive_layered(v, p, X)


@settings(max_examples=60)
@given(games(max_degree=3), st.data())
def test_attractors_respect_removed_edges(g, data):
    v = g.full_view()
    removable = [e for e in v.edges() if v.out_degree(e[0]) > 1]
    if removable:
        v = remove_edge(v, data.draw(st.sampled_from(removable)))
    X = data.draw(st.sets(st.integers(0, g.node_count - 1)))
    for p in (0, 1):
        assert attractor(v, p, X).nodes == naive_attractor(v, p, X)
        assert monotone_attractor(v, p, X, 2).nodes == naive_monotone(v, p, X, 2)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatalpg import (Game, GameError, NodeSet, ParseError, fix_edge, opponent, parity_of,
                     parse_pgsolver, remove_edge, scc_decompose, serialize_pgsolver,
                     subgame_view)

from conftest import games


def test_parse_minimal():
    g = parse_pgsolver("parity 1;\n0 0 0 1;\n1 1 1 0;")
    assert g.node_count == 2
    assert g.owner.tolist() == [0, 1] and g.color.tolist() == [0, 1]
    assert g.successors(0) == [1] and g.successors(1) == [0]


def test_parse_g1(g1):
    assert g1.node_count == 12
    assert g1.color.tolist() == [9, 0, 14, 17, 6, 20, 15, 19, 4, 8, 11, 18]
    assert g1.owner.tolist() == [1, 1, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1]
    assert g1.name(10) == "v10"


@pytest.mark.parametrize("text, fragment", [
    ("parity 0;\n0 5 0 ;", "empty successor list"),
    ("0 1 0 1;", "undefined successor"),
    ("0 1 0 0;\n0 1 0 0;", "defined twice"),
    ("0 1 2 0;", "owner"),
    ("0 4294967296 0 0;", "exceeds"),
    ("parity 0;\n0 1 0 1;\n1 1 0 0;", "header"),
    ("0 1 0 0", "expected ';'"),
    ("0 1 0 0; x", "unknown keyword"),
    ("0 1 0 0; #", "unexpected character"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_pgsolver(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_pgsolver("parity 1;\n0 0 0 1;\n1 1 1 ;")
    assert info.value.line == 3


def test_parse_comments_start_and_sparse_ids():
    g = parse_pgsolver("-- a comment\nparity 9;\nstart 4;\n4 2 1 9, 4 \"a\";\n9 3 0 4; -- tail\n")
    assert g.node_count == 2
    assert g.successors(0) == [0, 1]
    assert [g.external_id(v) for v in range(2)] == [4, 9]
    assert serialize_pgsolver(g).splitlines()[1] == '4 2 1 4,9 "a";'


def test_duplicate_successors_are_merged():
    g = parse_pgsolver("0 0 0 0,0;")
    assert g.successors(0) == [0]


def test_round_trip_fixtures(g1, g5a, g5b, fig7):
    for g in (g1, g5a, g5b, fig7):
        text = serialize_pgsolver(g)
        assert parse_pgsolver(text) == g
        assert serialize_pgsolver(parse_pgsolver(text)) == text
        assert parse_pgsolver(text).names == g.names


def test_round_trip_minimal_bit_identical():
    text = "parity 1;\n0 0 0 1;\n1 1 1 0;\n"
    assert serialize_pgsolver(parse_pgsolver(text)) == text


@settings(max_examples=60)
@given(games())
def test_round_trip_property(g):
    text = serialize_pgsolver(g)
    h = parse_pgsolver(text)
    assert h == g
    assert serialize_pgsolver(h) == text


def test_game_validation():
    with pytest.raises(GameError):
        Game([0], [0], [[]])
    with pytest.raises(GameError):
        Game([0], [0], [[1]])
    with pytest.raises(GameError):
        Game([2], [0], [[0]])
    with pytest.raises(GameError):
        Game([0], [0], [[0, 0]])


def test_predecessors_transpose(g1):
    for v in range(g1.node_count):
        for w in g1.successors(v):
            assert v in g1.predecessors(w)
    assert sum(len(g1.predecessors(v)) for v in range(12)) == g1.edge_count


def test_player_helpers():
    assert opponent(0) == 1 and opponent(1) == 0
    assert parity_of(7) == 1 and parity_of(4) == 0


def test_nodeset_algebra():
    a = NodeSet.of(6, [0, 2, 4])
    b = NodeSet.of(6, [2, 3])
    assert (a | b).ids() == [0, 2, 3, 4]
    assert (a & b).ids() == [2]
    assert (a - b).ids() == [0, 4]
    assert (a ^ b).ids() == [0, 3, 4]
    assert list(a) == [0, 2, 4] and len(a) == 3 and 2 in a and 3 not in a
    assert (a & b) <= a and a >= (a & b)
    assert a == {0, 2, 4}
    assert not NodeSet.empty(6) and NodeSet.full(3).ids() == [0, 1, 2]
    assert hash(a) == hash(NodeSet.of(6, [4, 2, 0]))


@given(st.sets(st.integers(0, 9)), st.sets(st.integers(0, 9)), st.sets(st.integers(0, 9)))
def test_nodeset_laws(x, y, z):
    a, b, c = (NodeSet.of(10, s) for s in (x, y, z))
    assert a | a == a and a & a == a
    assert a | b == b | a and a & b == b & a
    assert a | (b & c) == (a | b) & (a | c)
    assert a - b == a & (NodeSet.full(10) - b)
    assert set(a | b) == x | y and list(a) == sorted(x)


def test_subgame_view_examples(g1):
    v = subgame_view(g1, {3, 5, 7})
    assert v.successors(5) == [3, 7] and v.successors(3) == [5]
    assert set(v.edges()) == {(3, 5), (5, 3), (5, 7), (7, 5)}
    full = subgame_view(g1, range(12))
    assert full.same_subgame(g1.full_view())
    with pytest.raises(GameError):
        subgame_view(g1, {0})
    empty = subgame_view(g1, [])
    assert empty.is_empty and len(empty) == 0


def test_remove_edge(g1, fig7):
    v = remove_edge(g1.full_view(), (10, 11))
    assert v.successors(10) == [9]
    assert 10 not in v.predecessors(11)
    assert (10, 11) in v.removed_edges
    assert v.colors() == g1.full_view().colors() and v.alive == g1.full_view().alive
    w = remove_edge(fig7.full_view(), (4, 3))
    assert w.successors(4) == [5]
    with pytest.raises(GameError):
        remove_edge(w, (4, 5))
    with pytest.raises(GameError):
        remove_edge(w, (4, 3))


def test_fix_edge(fig7):
    base = fig7.full_view()
    v = fix_edge(base, 4, 3)
    assert v.successors(4) == [3]
    assert all(v.successors(u) == base.successors(u) for u in range(8) if u != 4)
    assert fix_edge(base, 1, 0).successors(1) == [0]
    assert fix_edge(base, 0, 1).same_subgame(base)
    with pytest.raises(GameError):
        fix_edge(base, 0, 2)


def test_scc_examples(g5b):
    assert scc_decompose(g5b.full_view()) == [{0, 1, 2}]
    g = Game([0, 0], [0, 0], [[1], [1]])
    assert [s.ids() for s in scc_decompose(g.full_view())] == [[0], [1]]


@settings(max_examples=80)
@given(games())
def test_scc_partition_and_order(g):
    view = g.full_view()
    comps = scc_decompose(view)
    seen = np.zeros(g.node_count, bool)
    position = {}
    for i, comp in enumerate(comps):
        assert not np.any(seen & comp.mask)
        seen |= comp.mask
        for v in comp:
            position[v] = i
    assert seen.all()
    for v, w in view.edges():
        assert position[v] <= position[w]

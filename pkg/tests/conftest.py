from pathlib import Path

import pytest
from hypothesis import strategies as st

from fatalpg import Game, read_game

DATA = Path(__file__).resolve().parent.parent / "test-data"


def load(name: str) -> Game:
    return read_game(DATA / f"{name}.gm")


@pytest.fixture(scope="session")
def g1():
    return load("g1")


@pytest.fixture(scope="session")
def g5a():
    return load("g5a")


@pytest.fixture(scope="session")
def g5b():
    return load("g5b")


@pytest.fixture(scope="session")
def fig7():
    return load("g_fig7")


@st.composite
def games(draw, max_nodes=8, max_color=6, max_degree=3):
    """Arbitrary small games, self-loops allowed."""
    n = draw(st.integers(1, max_nodes))
    owner = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    color = draw(st.lists(st.integers(0, max_color), min_size=n, max_size=n))
    succ = [sorted(draw(st.sets(st.integers(0, n - 1), min_size=1,
                                max_size=min(n, max_degree))))
            for _ in range(n)]
    return Game(owner, color, succ)

"""Parity-game partial solvers built on fatal monotone attractors."""

from .attractors import (
    AttractionOutcome,
    attractor,
    control_predecessor,
    is_fatal,
    is_trap,
    layered_attractor,
    layered_attractor_layers,
    monotone_attractor,
    monotone_predecessor,
    permissive_monotone_attractor,
    permissive_monotone_predecessor,
    validate_outcome,
)
from .game import (
    Game,
    GameError,
    GameView,
    NodeSet,
    fix_edge,
    opponent,
    parity_of,
    remove_edge,
    scc_decompose,
    subgame_view,
)
from .generators import (
    RandomSpec,
    gen_clique,
    gen_ladder,
    gen_random,
    gen_random_buchi,
    gen_random_deterministic,
    gen_random_weak,
)
from .lift import LocalityReport, check_idempotent, check_local, lift, lift_solve, resolve_solver
from .pgsolver import ParseError, parse_pgsolver, read_game, serialize_pgsolver, write_game
from .reference import (
    FullSolution,
    VerificationReport,
    brute_force,
    complete,
    verify_solution,
    zielonka,
)
from .solvers import PartialResult, RunStats, SolverTimeout, psol, psolB, psolQ

__all__ = [name for name in dir() if not name.startswith("_")]

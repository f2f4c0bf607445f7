"""Frequently self-knowingly correct algorithms and the tooling to check them.

Dodgson scoring (exact and greedy), the benign-scheme wrapper over the
standard uniform distribution, junta constructions with exact condition
checkers, and a seeded Monte Carlo harness for the niceness bounds.
"""
from .elections import (
    DodgsonTriple,
    Election,
    condorcet_winner,
    deficits,
    format_election,
    is_nice,
    pairwise_tally,
    parse_election,
    parse_preflib,
)
from .kernels import BACKEND
from .skc import FAULT, Flag, SkcOutput
from .solvers import (
    SolverGuardError,
    dodgson_winners_exact,
    exact_score_bfs,
    exact_score_lift,
    greedy_score,
    greedy_winner,
)

__version__ = "0.1.0"

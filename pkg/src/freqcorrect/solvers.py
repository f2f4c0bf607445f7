"""Exact Dodgson scores and the greedy self-knowingly correct heuristics.

Two exact routes are provided. ``exact_score_bfs`` searches the literal
swap graph and only handles tiny profiles; ``exact_score_lift`` uses the fact
that an optimal swap sequence only ever moves the designated candidate up,
and runs a dynamic program over residual deficits. The BFS is the oracle
the lift solver is tested against.
"""
from __future__ import annotations

import math
from collections import deque

from .elections import (
    DodgsonTriple,
    Election,
    deficits,
    is_nice,
    majority_threshold,
)
from .skc import Flag, SkcOutput

LIFT_STATE_LIMIT = 10**7
BFS_STATE_LIMIT = 10**6


class SolverGuardError(RuntimeError):
    """The instance is too large for the requested exact solver."""


def exact_score_lift(t: DodgsonTriple) -> int:
    e, c = t.election, t.c
    need = deficits(t)
    opponents = [d for d in sorted(need) if need[d] > 0]
    if not opponents:
        return 0
    states = math.prod(need[d] + 1 for d in opponents)
    if states > LIFT_STATE_LIMIT:
        raise SolverGuardError(
            f"lift DP needs {states} deficit states (limit {LIFT_STATE_LIMIT}) "
            f"for m={e.m}, n={e.n}"
        )
    slot = {d: i for i, d in enumerate(opponents)}

    # per vote: the opponent slots c passes when lifted 1, 2, ... places
    lifts = []
    for vote in e.votes:
        p = vote.index(c)
        passed = [slot.get(vote[p - k]) for k in range(1, p + 1)]
        while passed and passed[-1] is None:
            passed.pop()
        if passed:
            lifts.append(passed)

    best = {tuple(need[d] for d in opponents): 0}
    for passed in lifts:
        nxt = dict(best)
        for state, cost in best.items():
            cur = list(state)
            for k, s in enumerate(passed, start=1):
                if s is not None and cur[s] > 0:
                    cur[s] -= 1
                key = tuple(cur)
                if nxt.get(key, cost + k + 1) > cost + k:
                    nxt[key] = cost + k
        best = nxt
    goal = (0,) * len(opponents)
    if goal not in best:
        # unreachable: lifting c to the top of every vote wins every contest
        raise AssertionError("lift DP failed to reach the winning state")
    return best[goal]


def _wins_all(votes: tuple[tuple[int, ...], ...], c: int, m: int, need: int) -> bool:
    for d in range(m):
        if d == c:
            continue
        if sum(1 for v in votes if v.index(c) < v.index(d)) < need:
            return False
    return True


def exact_score_bfs(t: DodgsonTriple) -> int:
    e, c = t.election, t.c
    size = math.factorial(e.m) ** e.n
    if size > BFS_STATE_LIMIT:
        raise SolverGuardError(
            f"BFS state space (m!)^n = {size} exceeds limit {BFS_STATE_LIMIT} for m={e.m}, n={e.n}"
        )
    need = majority_threshold(e.n)
    start = e.votes
    if _wins_all(start, c, e.m, need):
        return 0
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        state, dist = frontier.popleft()
        for i, vote in enumerate(state):
            for k in range(e.m - 1):
                swapped = vote[:k] + (vote[k + 1], vote[k]) + vote[k + 2:]
                nxt = state[:i] + (swapped,) + state[i + 1:]
                if nxt in seen:
                    continue
                if _wins_all(nxt, c, e.m, need):
                    return dist + 1
                seen.add(nxt)
                frontier.append((nxt, dist + 1))
    raise AssertionError("BFS exhausted the profile space without a winning state")


def exact_scores(e: Election) -> list[int]:
    return [exact_score_lift(DodgsonTriple(e, c)) for c in range(e.m)]


def dodgson_winners_exact(e: Election) -> set[int]:
    scores = exact_scores(e)
    low = min(scores)
    return {c for c, s in enumerate(scores) if s == low}


def greedy_score(t: DodgsonTriple) -> SkcOutput[int]:
    """Deficit sum, flagged definitely exactly when the triple is nice.

    On non-nice triples the deficit sum is only a placeholder.
    """
    total = sum(deficits(t).values())
    nice, _ = is_nice(t)
    return SkcOutput(total, Flag.DEFINITELY if nice else Flag.MAYBE)


def greedy_winner(e: Election, c: int) -> SkcOutput[bool]:
    outs = [greedy_score(DodgsonTriple(e, d)) for d in range(e.m)]
    answer = outs[c].value <= min(o.value for o in outs)
    flag = Flag.DEFINITELY if all(o.definitely for o in outs) else Flag.MAYBE
    return SkcOutput(answer, flag)


__all__ = [
    "SolverGuardError",
    "dodgson_winners_exact",
    "exact_score_bfs",
    "exact_score_lift",
    "exact_scores",
    "greedy_score",
    "greedy_winner",
]

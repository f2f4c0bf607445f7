import itertools
import random

import pytest

from freqcorrect.elections import DodgsonTriple, Election, condorcet_winner, deficits, is_nice, majority_threshold
from freqcorrect.skc import Flag
from freqcorrect.solvers import (
    SolverGuardError,
    dodgson_winners_exact,
    exact_score_bfs,
    exact_score_lift,
    greedy_score,
    greedy_winner,
)

from .conftest import ALL_RANKINGS_3

CYCLE = Election(3, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
UNANIMOUS = Election(3, [[0, 1, 2]] * 3)
NICE = Election(3, [[0, 2, 1], [0, 2, 1], [2, 0, 1]])
NOT_NICE = Election(3, [[0, 1, 2], [0, 1, 2], [2, 0, 1]])


def all_triples(n):
    for votes in itertools.product(ALL_RANKINGS_3, repeat=n):
        e = Election(3, votes)
        for c in range(3):
            yield DodgsonTriple(e, c)


def test_lift_examples():
    assert exact_score_lift(DodgsonTriple(UNANIMOUS, 0)) == 0
    assert exact_score_lift(DodgsonTriple(NICE, 2)) == 1
    assert exact_score_lift(DodgsonTriple(CYCLE, 0)) == 1


def test_bfs_examples():
    assert exact_score_bfs(DodgsonTriple(UNANIMOUS, 0)) == 0
    assert exact_score_bfs(DodgsonTriple(Election(2, [[1, 0], [1, 0], [0, 1]]), 0)) == 1
    assert exact_score_bfs(DodgsonTriple(NICE, 2)) == 1


def test_lift_equals_bfs_all_n2():
    for t in all_triples(2):
        assert exact_score_lift(t) == exact_score_bfs(t), t


def test_lift_equals_bfs_random_n3_m4():
    rng = random.Random(7)
    for _ in range(40):
        votes = [rng.sample(range(4), 4) for _ in range(2)]
        t = DodgsonTriple(Election(4, votes), rng.randrange(4))
        assert exact_score_lift(t) == exact_score_bfs(t)


def test_score_zero_iff_condorcet():
    for t in all_triples(3):
        assert (exact_score_lift(t) == 0) == (condorcet_winner(t.election) == t.c)


def test_nice_implies_deficit_sum():
    for t in all_triples(3):
        if is_nice(t)[0]:
            assert exact_score_bfs(t) == sum(deficits(t).values())


def test_guards():
    big = Election(3, [[0, 1, 2]] * 8)
    with pytest.raises(SolverGuardError, match="exceeds limit"):
        exact_score_bfs(DodgsonTriple(big, 2))
    huge = Election(12, [list(range(12))] * 41)
    with pytest.raises(SolverGuardError, match="deficit states"):
        exact_score_lift(DodgsonTriple(huge, 11))


def test_lift_handles_large_electorates():
    rng = random.Random(3)
    e = Election(3, [rng.sample(range(3), 3) for _ in range(401)])
    scores = [exact_score_lift(DodgsonTriple(e, c)) for c in range(3)]
    for c, s in enumerate(scores):
        out = greedy_score(DodgsonTriple(e, c))
        if out.definitely:
            assert out.value == s


def test_winner_examples():
    assert dodgson_winners_exact(UNANIMOUS) == {0}
    assert dodgson_winners_exact(CYCLE) == {0, 1, 2}
    assert dodgson_winners_exact(Election(1, [[0]])) == {0}


def test_greedy_score_examples():
    assert greedy_score(DodgsonTriple(NICE, 2)) == greedy_score(DodgsonTriple(NICE, 2))
    out = greedy_score(DodgsonTriple(NICE, 2))
    assert (out.value, out.flag) == (1, Flag.DEFINITELY)
    assert greedy_score(DodgsonTriple(NOT_NICE, 2)).flag is Flag.MAYBE
    out = greedy_score(DodgsonTriple(UNANIMOUS, 0))
    assert (out.value, out.flag) == (0, Flag.DEFINITELY)


def test_greedy_placeholder_range():
    for n in (1, 2, 3):
        for t in all_triples(n):
            v = greedy_score(t).value
            assert 0 <= v <= (t.election.m - 1) * majority_threshold(t.election.n)


def test_greedy_winner_examples():
    # unanimous 3x3 is not all-nice: no vote puts 2 directly below 0
    assert greedy_winner(UNANIMOUS, 0).flag is Flag.MAYBE
    out = greedy_winner(Election(2, [[0, 1]] * 3), 0)
    assert (out.value, out.flag) == (True, Flag.DEFINITELY)
    assert greedy_winner(NOT_NICE, 0).flag is Flag.MAYBE
    e = Election(2, [[1, 0]] * 3)
    out = greedy_winner(e, 0)
    assert (out.value, out.flag) == (False, Flag.DEFINITELY)
    assert 0 not in dodgson_winners_exact(e)


def test_greedy_winner_self_knowing_exhaustive():
    for votes in itertools.product(ALL_RANKINGS_3, repeat=3):
        e = Election(3, votes)
        winners = None
        all_nice = all(greedy_score(DodgsonTriple(e, d)).definitely for d in range(3))
        for c in range(3):
            out = greedy_winner(e, c)
            assert out.definitely == all_nice
            if out.definitely:
                winners = winners if winners is not None else dodgson_winners_exact(e)
                assert out.value == (c in winners)


def test_greedy_winner_definite_false_m3():
    # add votes favouring candidate 1 until every triple is nice and 0 loses
    found = False
    for votes in itertools.product(ALL_RANKINGS_3, repeat=3):
        e = Election(3, votes)
        out = greedy_winner(e, 0)
        if out.definitely and out.value is False:
            assert 0 not in dodgson_winners_exact(e)
            found = True
    assert found

import math

import numpy as np
import pytest
from scipy import stats

from freqcorrect.elections import DodgsonTriple, is_nice
from freqcorrect.mc import (
    FrequencyEstimate,
    not_nice_bound,
    any_maybe_bound,
    check_bound,
    confidence_upper,
    estimate_event,
    hoeffding_slack,
    sample_election,
    sample_profile,
)

RANKINGS_3 = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]


def two_sided(est, level=0.99):
    half = math.sqrt(math.log(2 / (1 - level)) / (2 * est.trials))
    return est.p_hat - half, est.p_hat + half


def test_sample_determinism():
    assert sample_election(4, 7, 11, 3) == sample_election(4, 7, 11, 3)
    assert sample_election(4, 7, 11, 3) != sample_election(4, 7, 11, 4)
    assert sample_election(4, 7, 11, 3) != sample_election(4, 7, 12, 3)


def test_sample_m1():
    e = sample_election(1, 5, 0, 0)
    assert e.votes == ((0,),) * 5


def test_sample_rankings_are_permutations():
    p = sample_profile(6, 200, 9, 1)
    assert (np.sort(p, axis=1) == np.arange(6)).all()


def test_single_vote_chi_square_uniformity():
    counts = dict.fromkeys(RANKINGS_3, 0)
    for trial in range(60_000):
        counts[sample_election(3, 1, 2024, trial).votes[0]] += 1
    observed = [counts[r] for r in RANKINGS_3]
    stat, p = stats.chisquare(observed)
    assert p > 0.01, (observed, stat)


def test_within_profile_uniformity():
    p = sample_profile(3, 60_000, 77, 0)
    codes = p[:, 0] * 3 + p[:, 1]
    observed = np.bincount(codes, minlength=9)[[1, 2, 3, 5, 6, 7]]
    assert stats.chisquare(observed).pvalue > 0.01


def test_bounds_values():
    assert not_nice_bound(3, 201) == pytest.approx(0.2453, abs=5e-5)
    # 0.0152504; quoted elsewhere rounded up as 0.01526
    assert not_nice_bound(3, 401) == pytest.approx(0.01526, abs=1e-5)
    assert not_nice_bound(3, 0) == 4
    assert any_maybe_bound(3, 401) == pytest.approx(0.0458, abs=5e-5)
    assert any_maybe_bound(3, 201) == pytest.approx(0.736, abs=5e-4)
    for m in range(2, 7):
        for n in (0, 10, 100, 1000):
            assert any_maybe_bound(m, n) == pytest.approx(m * not_nice_bound(m, n), rel=1e-12)
    with pytest.raises(ValueError):
        not_nice_bound(1, 5)


def test_confidence_upper():
    est = FrequencyEstimate("not_nice", 3, 401, 20_000, 0, 1)
    assert confidence_upper(est, 0.99) == pytest.approx(math.sqrt(math.log(100) / 40_000))
    assert confidence_upper(est, 0.99) == pytest.approx(0.01073, abs=5e-6)
    small = FrequencyEstimate("not_nice", 3, 5, 10, 5, 1)
    assert confidence_upper(small, 1 - 1e-12) == 1.0
    big = FrequencyEstimate("not_nice", 3, 5, 10**12, 3 * 10**11, 1)
    assert confidence_upper(big, 0.99) == pytest.approx(0.3, abs=1e-5)
    assert hoeffding_slack(10**12, 0.99) < 1e-5


def test_estimate_m1_is_zero():
    for event in ("not_nice", "any_candidate_maybe"):
        assert estimate_event(event, 1, 9, 200, 3).successes == 0


def test_estimate_rejects_bad_input():
    with pytest.raises(ValueError):
        estimate_event("not_nice", 3, 5, 0, 1)
    with pytest.raises(ValueError):
        estimate_event("sometimes", 3, 5, 10, 1)


def test_estimate_matches_reference_loop():
    # recount with the elections API on the same trials
    from freqcorrect.mc import trial_rng, shuffled_votes
    from freqcorrect.elections import Election

    seed, trials, m, n = 5, 300, 3, 5
    hits = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        e = Election.from_array(shuffled_votes(rng, m, n))
        c = int(rng.integers(0, m))
        hits += not is_nice(DodgsonTriple(e, c))[0]
    assert estimate_event("not_nice", m, n, trials, seed).successes == hits


def test_worker_invariance():
    one = estimate_event("any_candidate_maybe", 3, 7, 900, 42, workers=1)
    three = estimate_event("any_candidate_maybe", 3, 7, 900, 42, workers=3)
    assert one == three
    assert estimate_event("any_candidate_maybe", 3, 7, 900, 42) == one


@pytest.mark.parametrize("m, n", [(2, 40), (2, 80), (3, 120), (3, 201), (4, 300)])
@pytest.mark.parametrize("event", ["not_nice", "any_candidate_maybe"])
def test_consistency_with_bounds(event, m, n):
    chk = check_bound(event, m, n, 2000, 31)
    if chk.applies:
        assert chk.upper <= chk.bound
    assert chk.passed


def test_monotone_trend():
    lo_n = estimate_event("not_nice", 3, 3, 4000, 8)
    hi_n = estimate_event("not_nice", 3, 21, 4000, 8)
    assert two_sided(lo_n)[0] > two_sided(hi_n)[1]


def test_event_nesting():
    for n in (3, 5, 9):
        single = estimate_event("not_nice", 3, n, 4000, 13)
        anyc = estimate_event("any_candidate_maybe", 3, n, 4000, 13)
        assert two_sided(anyc)[1] >= two_sided(single)[0]
        assert anyc.p_hat >= single.p_hat

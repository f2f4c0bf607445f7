import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from freqcorrect import _fallback, kernels


def naive_tally(profile, m):
    wins = np.zeros((m, m), dtype=np.int64)
    adj = np.zeros((m, m), dtype=np.int64)
    for vote in profile.tolist():
        for a in range(m):
            for b in range(a + 1, m):
                wins[vote[a], vote[b]] += 1
        for a in range(m - 1):
            adj[vote[a], vote[a + 1]] += 1
    return wins, adj


profiles = st.integers(1, 6).flatmap(
    lambda m: st.lists(st.permutations(list(range(m))), min_size=1, max_size=12).map(
        lambda rows: (m, kernels.as_profile(rows, m))
    )
)


@settings(max_examples=200, deadline=None)
@given(profiles)
def test_backend_matches_naive(backend, mp):
    m, profile = mp
    wins, adj = backend.tally(profile, m)
    w2, a2 = naive_tally(profile, m)
    assert (wins == w2).all()
    assert (adj == a2).all()


@settings(max_examples=200, deadline=None)
@given(profiles)
def test_backends_agree_on_niceness(mp):
    m, profile = mp
    expected = _fallback.nice_flags(profile, m)
    assert (kernels.nice_flags(profile, m) == expected).all()


def test_backend_name():
    assert kernels.BACKEND in {"cython", "python"}

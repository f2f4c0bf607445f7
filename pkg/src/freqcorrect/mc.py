"""Seeded uniform election sampling and Monte Carlo checks of the niceness bounds.

Trial ``t`` under master seed ``s`` draws from its own Philox stream keyed by
``(s, t)``, so any trial can be regenerated alone and results do not depend
on how trials are split across workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .elections import Election

EVENTS = ("not_nice", "any_candidate_maybe")
_MASK64 = (1 << 64) - 1


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    if not (0 <= seed <= _MASK64 and 0 <= trial <= _MASK64):
        raise ValueError("seed and trial must fit in 64 unsigned bits")
    return np.random.Generator(np.random.Philox(key=seed | (trial << 64)))


def shuffled_votes(rng: np.random.Generator, m: int, n: int) -> np.ndarray:
    """``n`` independent uniform rankings via a column-wise Fisher-Yates pass."""
    profile = np.tile(np.arange(m, dtype=np.int32), (n, 1))
    rows = np.arange(n)
    for i in range(m - 1, 0, -1):
        # Generator.integers draws by rejection, so each j is exactly uniform
        j = rng.integers(0, i + 1, size=n)
        tmp = profile[rows, j]
        profile[rows, j] = profile[:, i]
        profile[:, i] = tmp
    return profile


def sample_profile(m: int, n: int, seed: int, trial: int) -> np.ndarray:
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    return shuffled_votes(trial_rng(seed, trial), m, n)


def sample_election(m: int, n: int, seed: int, trial: int) -> Election:
    return Election.from_array(sample_profile(m, n, seed, trial))


def _trial_hit(event: str, m: int, n: int, seed: int, trial: int) -> bool:
    rng = trial_rng(seed, trial)
    profile = shuffled_votes(rng, m, n)
    flags = kernels.nice_flags(profile, m)
    if event == "not_nice":
        c = int(rng.integers(0, m))
        return not flags[c]
    return not flags.all()


def _count_range(args) -> int:
    event, m, n, seed, lo, hi = args
    return sum(_trial_hit(event, m, n, seed, t) for t in range(lo, hi))


@dataclass(frozen=True)
class FrequencyEstimate:
    event: str
    m: int
    n: int
    trials: int
    successes: int
    seed: int

    @property
    def p_hat(self) -> float:
        return self.successes / self.trials


def estimate_event(event: str, m: int, n: int, trials: int, seed: int, workers: int = 1) -> FrequencyEstimate:
    """Count trials where the event happens.

    ``not_nice`` draws a uniform triple (election plus designated candidate);
    ``any_candidate_maybe`` asks whether some candidate's triple is not nice,
    which is exactly when a greedy score call would answer maybe.
    """
    if event not in EVENTS:
        raise ValueError(f"unknown event {event!r}; expected one of {EVENTS}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    if workers <= 1:
        hits = _count_range((event, m, n, seed, 0, trials))
    else:
        step = -(-trials // workers)
        chunks = [(event, m, n, seed, lo, min(lo + step, trials)) for lo in range(0, trials, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(_count_range, chunks))
    return FrequencyEstimate(event, m, n, trials, hits, seed)


def not_nice_bound(m: int, n: int) -> float:
    """Ceiling on the probability a uniform triple is not nice."""
    if m < 2:
        raise ValueError("bound needs m >= 2")
    return 2 * (m - 1) * math.exp(-n / (8 * m * m))


def any_maybe_bound(m: int, n: int) -> float:
    """Ceiling on the probability some candidate's triple is not nice."""
    if m < 2:
        raise ValueError("bound needs m >= 2")
    return 2 * (m * m - m) * math.exp(-n / (8 * m * m))


def hoeffding_slack(trials: int, level: float) -> float:
    return math.sqrt(math.log(1 / (1 - level)) / (2 * trials))


def confidence_upper(est: FrequencyEstimate, level: float = 0.99) -> float:
    """One-sided Hoeffding upper confidence limit on the event probability."""
    if not 0 < level < 1:
        return 1.0 if level >= 1 else est.p_hat
    return min(1.0, max(0.0, est.p_hat + hoeffding_slack(est.trials, level)))


def event_bound(event: str, m: int, n: int) -> float:
    return not_nice_bound(m, n) if event == "not_nice" else any_maybe_bound(m, n)


@dataclass(frozen=True)
class BoundCheck:
    estimate: FrequencyEstimate
    upper: float
    bound: float

    @property
    def applies(self) -> bool:
        return not math.isnan(self.bound) and self.bound < 1

    @property
    def passed(self) -> bool:
        return self.upper <= self.bound or not self.applies


def check_bound(event: str, m: int, n: int, trials: int, seed: int, workers: int = 1, level: float = 0.99) -> BoundCheck:
    est = estimate_event(event, m, n, trials, seed, workers)
    # no opponent means nothing to bound
    bound = event_bound(event, m, n) if m >= 2 else math.nan
    return BoundCheck(est, confidence_upper(est, level), bound)

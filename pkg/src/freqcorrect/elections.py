"""Election model: votes as strict rankings over integer-indexed candidates.

Candidates are ``0..m-1``. A vote lists them most-preferred first. Names, when
present, live only in ``Election.names`` and never affect any computation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import kernels


class ElectionError(ValueError):
    """An election or triple violates its structural invariants."""


class ParseError(ValueError):
    """Base class for election-file errors; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class HeaderError(ParseError):
    pass


class PermutationError(ParseError):
    pass


class VoteCountError(ParseError):
    pass


def majority_threshold(n: int) -> int:
    """Smallest vote count that is a strict majority of ``n`` voters."""
    return n // 2 + 1


def _check_ranking(ranking: Sequence[int], m: int) -> bool:
    return len(ranking) == m and sorted(ranking) == list(range(m))


@dataclass(frozen=True)
class Election:
    m: int
    votes: tuple[tuple[int, ...], ...]
    names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "votes", tuple(tuple(int(c) for c in v) for v in self.votes))
        if self.m < 1:
            raise ElectionError("an election needs at least one candidate")
        if not self.votes:
            raise ElectionError("an election needs at least one vote")
        for i, v in enumerate(self.votes):
            if not _check_ranking(v, self.m):
                raise ElectionError(f"vote {i} is not a permutation of 0..{self.m - 1}: {list(v)}")
        if self.names is not None and len(self.names) != self.m:
            raise ElectionError("name table length must equal the candidate count")

    @property
    def n(self) -> int:
        return len(self.votes)

    @cached_property
    def profile(self) -> np.ndarray:
        """The votes as an ``(n, m)`` int32 array."""
        arr = kernels.as_profile(self.votes, self.m)
        arr.setflags(write=False)
        return arr

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "Election":
        arr = np.asarray(arr)
        return cls(m=int(arr.shape[1]), votes=tuple(map(tuple, arr.tolist())))


@dataclass(frozen=True)
class DodgsonTriple:
    """An election together with a designated candidate ``c``."""

    election: Election
    c: int

    def __post_init__(self):
        if not 0 <= self.c < self.election.m:
            raise ElectionError(f"designated candidate {self.c} outside 0..{self.election.m - 1}")


# ---------------------------------------------------------------------------
# Parsing


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _parse_ints(line: str, lineno: int, sep: str | None = None) -> list[int]:
    try:
        return [int(tok) for tok in line.split(sep)]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", lineno) from None


def parse_election(text: str) -> Election:
    """Parse the native format: header ``m n`` then ``n`` ranking lines."""
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise HeaderError("missing 'm n' header") from None
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise HeaderError(f"header must be two nonnegative integers 'm n', got {header!r}", lineno)
    m, n = int(parts[0]), int(parts[1])
    if m < 1 or n < 1:
        raise HeaderError("m and n must both be at least 1", lineno)

    votes = []
    last = lineno
    for lineno, line in lines:
        last = lineno
        if len(votes) == n:
            raise VoteCountError(f"header declares {n} votes but more follow", lineno)
        try:
            ranking = _parse_ints(line, lineno)
        except ParseError as exc:
            raise PermutationError(str(exc).split(": ", 1)[-1], lineno) from None
        if not _check_ranking(ranking, m):
            raise PermutationError(f"vote is not a permutation of 0..{m - 1}: {line!r}", lineno)
        votes.append(tuple(ranking))
    if len(votes) != n:
        raise VoteCountError(f"header declares {n} votes but found {len(votes)}", last)
    return Election(m=m, votes=tuple(votes))


def format_election(e: Election) -> str:
    """Canonical native-format text; ``parse_election`` inverts it."""
    out = [f"{e.m} {e.n}"]
    out.extend(" ".join(map(str, v)) for v in e.votes)
    return "\n".join(out) + "\n"


def parse_preflib(text: str) -> Election:
    """Read a PrefLib SOC file (``count: a,b,c`` lines, 1-based alternatives).

    Each data line is expanded into ``count`` identical votes. Alternative
    names come from ``# ALTERNATIVE NAME i: name`` metadata when present.
    """
    m = None
    names: dict[int, str] = {}
    votes: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            key = key.strip().upper()
            if key == "NUMBER ALTERNATIVES":
                try:
                    m = int(value)
                except ValueError:
                    raise HeaderError(f"bad alternative count {value.strip()!r}", lineno) from None
            elif key.startswith("ALTERNATIVE NAME"):
                try:
                    idx = int(key.rsplit(" ", 1)[1])
                except ValueError:
                    raise HeaderError(f"bad alternative name line {line!r}", lineno) from None
                names[idx - 1] = value.strip()
            continue
        if m is None:
            raise HeaderError("data line before '# NUMBER ALTERNATIVES' header", lineno)
        count_s, sep, rank_s = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'count: ranking', got {line!r}", lineno)
        try:
            count = int(count_s)
        except ValueError:
            raise ParseError(f"bad multiplicity {count_s.strip()!r}", lineno) from None
        if "{" in rank_s:
            raise PermutationError("ties are not supported (strict orders only)", lineno)
        ranking = [r - 1 for r in _parse_ints(rank_s, lineno, sep=",")]
        if not _check_ranking(ranking, m):
            raise PermutationError(f"ranking is not a permutation of 1..{m}: {rank_s.strip()!r}", lineno)
        votes.extend([tuple(ranking)] * count)
    if m is None:
        raise HeaderError("missing '# NUMBER ALTERNATIVES' header")
    if not votes:
        raise VoteCountError("no votes found")
    name_table = tuple(names.get(i, str(i)) for i in range(m)) if names else None
    return Election(m=m, votes=tuple(votes), names=name_table)


# ---------------------------------------------------------------------------
# Pairwise structure


def pairwise_tally(e: Election) -> np.ndarray:
    """``wins[i, j]`` = number of votes ranking i above j."""
    wins, _ = kernels.tally(e.profile, e.m)
    return wins


def adjacency_counts(e: Election) -> np.ndarray:
    """``adj[d, c]`` = number of votes placing c exactly one position below d."""
    _, adj = kernels.tally(e.profile, e.m)
    return adj


def condorcet_winner(e: Election) -> Optional[int]:
    wins = pairwise_tally(e)
    need = majority_threshold(e.n)
    for i in range(e.m):
        if all(wins[i, j] >= need for j in range(e.m) if j != i):
            return i
    return None


def deficits(t: DodgsonTriple) -> dict[int, int]:
    """Extra pairwise votes ``c`` needs against each opponent to win it strictly."""
    e = t.election
    wins = pairwise_tally(e)
    need = majority_threshold(e.n)
    return {d: max(0, need - int(wins[t.c, d])) for d in range(e.m) if d != t.c}


def is_nice(t: DodgsonTriple) -> tuple[bool, dict[int, int]]:
    """Niceness test plus its witness counts.

    The witness for opponent d counts votes with ``c`` directly below d; the
    triple is nice when every witness covers the corresponding deficit.
    """
    e = t.election
    wins, adj = kernels.tally(e.profile, e.m)
    need = majority_threshold(e.n)
    witness = {d: int(adj[d, t.c]) for d in range(e.m) if d != t.c}
    nice = all(witness[d] >= max(0, need - int(wins[t.c, d])) for d in witness)
    return nice, witness

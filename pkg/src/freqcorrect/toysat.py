"""A tiny CNF-SAT language over bitstrings with designated in/out witnesses.

Bit layout of a length-``n`` string:

* index width ``b = min(bitlen(ceil(n/6) - 1), max(0, n // 6 - 1))``;
  the formula ranges over ``2**b`` variables ``x0..``;
* a literal is ``1 + b`` bits: a sign bit (``1`` = negated) followed by the
  big-endian variable index;
* a clause is three consecutive literals; the string holds
  ``k = n // (3 * (1 + b))`` clauses from the left;
* the remaining ``n - 3k(1 + b)`` bits are padding and must all be ``0``.
  A string with a nonzero padding bit fails to decode and is a non-member.

A decoded formula (possibly empty) is a member iff some assignment satisfies
it, found by trying all ``2**b`` assignments. The width cap keeps two
clauses inside every length ``n >= 6``: the all-zero string is
``(x0 | x0 | x0)`` repeated and is always a member, while ``neg(n)`` puts
``(~x0 | ~x0 | ~x0)`` in the second clause, which is unsatisfiable.
"""
from __future__ import annotations

from typing import Optional

from .junta import PiercedSet

Literal = tuple[bool, int]  # (negated, variable)
Formula = tuple[tuple[Literal, ...], ...]


def index_width(n: int) -> int:
    vars_wanted = -(-n // 6)
    return min(max(vars_wanted - 1, 0).bit_length(), max(0, n // 6 - 1))


def layout(n: int) -> tuple[int, int, int]:
    """``(index_width, clause_count, padding_bits)`` for length ``n``."""
    b = index_width(n)
    width = 3 * (1 + b)
    k = n // width
    return b, k, n - k * width


def decode(x: str) -> Optional[tuple[int, Formula]]:
    """Return ``(variable_count, clauses)``, or ``None`` if the padding is dirty."""
    b, k, pad = layout(len(x))
    w = 1 + b
    if pad and "1" in x[-pad:]:
        return None
    clauses = []
    for i in range(k):
        lits = []
        for j in range(3):
            start = (3 * i + j) * w
            sign = x[start] == "1"
            var = int(x[start + 1:start + w], 2) if b else 0
            lits.append((sign, var))
        clauses.append(tuple(lits))
    return 2**b, tuple(clauses)


def satisfiable(num_vars: int, clauses: Formula) -> bool:
    for bits in range(2**num_vars):
        if all(any(((bits >> v) & 1) != neg for neg, v in cl) for cl in clauses):
            return True
    return False


def member(x: str) -> bool:
    decoded = decode(x)
    return decoded is not None and satisfiable(*decoded)


def pos(n: int) -> str:
    return "0" * n


def neg(n: int) -> str:
    b, _, _ = layout(n)
    w = 1 + b
    negated = ("1" + "0" * b) * 3
    return "0" * (3 * w) + negated + "0" * (n - 6 * w)


def _first_pierced_length(limit: int = 64) -> int:
    # the first length from which on neg(n) is well formed and correct
    candidate = None
    for n in range(1, limit + 1):
        _, k, _ = layout(n)
        ok = k >= 2 and member(pos(n)) and not member(neg(n)) and pos(n) != neg(n)
        if ok and candidate is None:
            candidate = n
        elif not ok:
            candidate = None
    if candidate is None:
        raise RuntimeError("no pierced length found")
    return candidate


def toy_pierced_sat() -> PiercedSet:
    return PiercedSet(member=member, pos=pos, neg=neg, threshold=_first_pierced_length(), name="toy-sat")


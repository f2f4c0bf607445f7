"""Self-knowingly correct algorithms, the standard uniform density, and
the wrapper turning a benign algorithm scheme into one.

Strings are Python ``str`` over ``{'0', '1'}``. All probabilities are exact
``Fraction`` values; the empty string has mass zero and length 0 never takes
part in any per-length quantity.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Generic, Iterator, Mapping, TypeVar, Union

T = TypeVar("T")

MAX_ENUM_LENGTH = 24
MAX_PARTIAL_SUM_LENGTH = 16


class Flag(str, enum.Enum):
    DEFINITELY = "definitely"
    MAYBE = "maybe"


@dataclass(frozen=True)
class SkcOutput(Generic[T]):
    value: T
    flag: Flag

    @property
    def definitely(self) -> bool:
        return self.flag is Flag.DEFINITELY


class _Fault:
    """The benign-fault answer ``?``; a singleton distinct from every value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "?"


FAULT = _Fault()

SkcAlgorithm = Callable[[str], SkcOutput]
BenignScheme = Callable[[str, Fraction], Any]
Density = Callable[[str], Fraction]


class EnumerationGuardError(ValueError):
    """A length exceeds the exhaustive-enumeration guard."""


class ZeroMassError(ZeroDivisionError):
    """Conditioning on an event set of total probability zero."""


def strings(n: int) -> Iterator[str]:
    """All length-``n`` bitstrings in lexicographic order."""
    for bits in itertools.product("01", repeat=n):
        yield "".join(bits)


def _guard(n: int, limit: int) -> None:
    if n > limit:
        raise EnumerationGuardError(f"length {n} exceeds enumeration guard {limit}")


def std_uniform_density(x: str) -> Fraction:
    n = len(x)
    if n == 0:
        return Fraction(0)
    return Fraction(1, n * (n + 1) * 2**n)


def length_mass(n: int) -> Fraction:
    """Total standard-uniform mass of all length-``n`` strings."""
    return Fraction(1, n * (n + 1)) if n >= 1 else Fraction(0)


def tolerance_for_length(n: int) -> Fraction:
    return Fraction(1, (n + 1) ** 3)


def wrap_benign(scheme: BenignScheme, placeholder: Any = None) -> SkcAlgorithm:
    """Run ``scheme`` at tolerance ``1/(|x|+1)^3``; a fault becomes a maybe answer."""

    def algorithm(x: str) -> SkcOutput:
        y = scheme(x, tolerance_for_length(len(x)))
        if y is FAULT:
            return SkcOutput(placeholder, Flag.MAYBE)
        return SkcOutput(y, Flag.DEFINITELY)

    return algorithm


def maybe_fraction(alg: SkcAlgorithm, n: int) -> Fraction:
    """Exact fraction of length-``n`` inputs on which ``alg`` says maybe."""
    _guard(n, MAX_ENUM_LENGTH)
    maybes = sum(1 for x in strings(n) if not alg(x).definitely)
    return Fraction(maybes, 2**n)


def _lookup(f: Union[Mapping[str, T], Callable[[str], T]]) -> Callable[[str], T]:
    if isinstance(f, Mapping):
        return f.__getitem__
    return f


def adversarial_benign_scheme(f, top: int) -> BenignScheme:
    """A scheme that spends its whole fault budget at length ``top``.

    For tolerance delta it faults on the lexicographically first ``k``
    length-``top`` strings, with ``k`` the largest count whose mass relative to
    all lengths ``<= top`` stays within delta. Every other input gets ``f(x)``.
    Longer prefixes only dilute that mass, so the scheme is benign.
    """
    if top < 1:
        raise ValueError("top must be at least 1")
    answer = _lookup(f)
    # relative mass of one length-top string: (1/(top(top+1)2^top)) / (top/(top+1))
    per_string = Fraction(1, top * top * 2**top)

    def fault_count(delta: Fraction) -> int:
        return min(2**top, math.floor(Fraction(delta) / per_string))

    def scheme(x: str, delta: Fraction):
        if len(x) == top and int(x, 2) < fault_count(delta):
            return FAULT
        return answer(x)

    scheme.fault_count = fault_count
    return scheme


def faithful_scheme(f) -> BenignScheme:
    """A scheme that never faults."""
    answer = _lookup(f)
    return lambda x, delta: answer(x)


def prob_of_event(density: Density, event: Callable[[str], bool], n: int, mode: str = "at") -> Fraction:
    """Exact probability of ``event`` at length ``n`` or over lengths ``1..n``.

    ``mode="at"`` renormalizes within the length-``n`` slice, ``mode="upto"``
    over the prefix of lengths ``1..n``.
    """
    if mode == "at":
        lengths = [n]
    elif mode == "upto":
        lengths = range(1, n + 1)
    else:
        raise ValueError(f"mode must be 'at' or 'upto', not {mode!r}")
    for k in lengths:
        _guard(k, MAX_ENUM_LENGTH)
    total = Fraction(0)
    hit = Fraction(0)
    for k in lengths:
        for x in strings(k):
            w = density(x)
            total += w
            if w and event(x):
                hit += w
    if total == 0:
        raise ZeroMassError(f"cannot condition on lengths {list(lengths)}: total mass is zero")
    return hit / total


@dataclass(frozen=True)
class PartialSum:
    value: Union[Fraction, float]
    exact: bool


def poly_on_average_partial_sum(t, density: Density, eps, maxlen: int) -> PartialSum:
    """Prefix ``sum density(x) * t(x)**eps / |x|`` over ``1 <= |x| <= maxlen``.

    Exact when ``eps`` is an integer; otherwise every term is a float and the
    result is flagged inexact. A prefix value never certifies convergence.
    """
    _guard(maxlen, MAX_PARTIAL_SUM_LENGTH)
    runtime = _lookup(t)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    exact = eps.denominator == 1
    total: Union[Fraction, float] = Fraction(0) if exact else 0.0
    for k in range(1, maxlen + 1):
        for x in strings(k):
            w = density(x)
            if not w:
                continue
            if exact:
                total += w * Fraction(runtime(x)) ** eps.numerator / k
            else:
                total += float(w) * float(runtime(x)) ** float(eps) / k
    return PartialSum(total, exact)


def parse_table(text: str, convert: Callable[[str], Any] = str) -> dict[str, Any]:
    """Read ``bitstring value`` lines (``#`` comments allowed) into a dict."""
    table = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        key = parts[0]
        if key == "-":
            key = ""
        if len(parts) != 2 or set(key) - {"0", "1"}:
            raise ValueError(f"line {lineno}: expected 'bitstring value', got {line!r}")
        table[key] = convert(parts[1].strip())
    return table


@dataclass(frozen=True)
class WrapperRow:
    n: int
    fraction: Fraction
    bound: Fraction

    @property
    def passed(self) -> bool:
        return self.fraction <= self.bound


def wrapper_bound(n: int) -> Fraction:
    """Per-length maybe-fraction ceiling ``n/(n+1)^2`` for a wrapped benign scheme."""
    return Fraction(n, (n + 1) ** 2)


def wrapper_sweep(f, lengths, scheme_factory=adversarial_benign_scheme) -> list[WrapperRow]:
    """Wrap a fresh ``scheme_factory(f, n)`` at every length and record its maybe fraction.

    Also asserts along the way that every definite answer equals ``f``.
    """
    answer = _lookup(f)
    rows = []
    for n in lengths:
        alg = wrap_benign(scheme_factory(f, n))
        _guard(n, MAX_ENUM_LENGTH)
        maybes = 0
        for x in strings(n):
            out = alg(x)
            if out.definitely:
                if out.value != answer(x):
                    raise AssertionError(f"definite answer for {x!r} disagrees with the target")
            else:
                maybes += 1
        rows.append(WrapperRow(n, Fraction(maybes, 2**n), wrapper_bound(n)))
    return rows


def format_wrapper_csv(rows: list[WrapperRow]) -> str:
    out = ["n,fraction_numerator,fraction_denominator,bound_numerator,bound_denominator,pass"]
    for r in rows:
        out.append(
            f"{r.n},{r.fraction.numerator},{r.fraction.denominator},"
            f"{r.bound.numerator},{r.bound.denominator},{str(r.passed).lower()}"
        )
    return "\n".join(out) + "\n"

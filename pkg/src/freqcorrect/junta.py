"""Per-length distribution ensembles and exact checkers for the basic junta
conditions (balance, dichotomy), almost-uniformity, and heuristic error weight.

Masses are ``Fraction`` values with power-of-two denominators. A slice is
stored sparsely: a few explicit masses plus one default mass shared by every
other string of that length. Hardness is never checked; reports carry it
as an explicit unchecked assumption.
"""
from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional

from .skc import EnumerationGuardError, strings

MAX_LENGTH = 16
REPORT_VERSION = 1

Predicate = Callable[[str], bool]
Polynomial = Callable[[int], int]


def _guard(n: int) -> None:
    if n > MAX_LENGTH:
        raise EnumerationGuardError(f"length {n} exceeds enumeration guard {MAX_LENGTH}")


@dataclass(frozen=True)
class LengthDistribution:
    n: int
    explicit: Mapping[str, Fraction] = field(default_factory=dict)
    default: Fraction = Fraction(0)

    def __post_init__(self):
        for x, w in self.explicit.items():
            if len(x) != self.n or set(x) - {"0", "1"}:
                raise ValueError(f"{x!r} is not a length-{self.n} bitstring")
            if w < 0:
                raise ValueError(f"negative mass on {x!r}")
        if self.default < 0:
            raise ValueError("negative default mass")
        if self.total() != 1:
            raise ValueError(f"slice at length {self.n} sums to {self.total()}, not 1")

    @property
    def residual_count(self) -> int:
        return 2**self.n - len(self.explicit)

    def total(self) -> Fraction:
        return sum(self.explicit.values(), Fraction(0)) + self.residual_count * self.default

    def mass(self, x: str) -> Fraction:
        return self.explicit.get(x, self.default)

    def items(self) -> Iterator[tuple[str, Fraction]]:
        _guard(self.n)
        for x in strings(self.n):
            yield x, self.mass(x)

    def nonzero_masses(self) -> set[Fraction]:
        """Distinct nonzero mass values; needs no enumeration."""
        vals = {w for w in self.explicit.values() if w}
        if self.residual_count and self.default:
            vals.add(self.default)
        return vals


@dataclass
class DistributionEnsemble:
    generator: Callable[[int], LengthDistribution]
    name: str = "ensemble"
    described_range: Optional[range] = None
    _cache: dict = field(default_factory=dict, repr=False)

    def slice(self, n: int) -> LengthDistribution:
        if n not in self._cache:
            self._cache[n] = self.generator(n)
        return self._cache[n]


@dataclass(frozen=True)
class PiercedSet:
    """A decidable language with one designated member and non-member per length ``>= threshold``."""

    member: Predicate
    pos: Callable[[int], str]
    neg: Callable[[int], str]
    threshold: int
    name: str = "pierced"

    def validate(self, lengths: Iterable[int]) -> None:
        for n in lengths:
            if n < self.threshold:
                continue
            p, q = self.pos(n), self.neg(n)
            if len(p) != n or len(q) != n or p == q:
                raise ValueError(f"designators at length {n} are malformed")
            if not self.member(p) or self.member(q):
                raise ValueError(f"designators at length {n} are misclassified")


def uniform_slice(n: int) -> LengthDistribution:
    return LengthDistribution(n, {}, Fraction(1, 2**n))


def uniform_ensemble() -> DistributionEnsemble:
    return DistributionEnsemble(uniform_slice, name="uniform")


def junta_nu(ps: PiercedSet) -> DistributionEnsemble:
    """Tiny weight ``2**-(n*n)`` everywhere, the rest split between ``pos(n)`` and ``neg(n)``.

    Lengths below the pierced threshold get the uniform slice.
    """

    def generate(n: int) -> LengthDistribution:
        if n < ps.threshold:
            return uniform_slice(n)
        low = Fraction(1, 2 ** (n * n))
        high = Fraction(1, 2) * (1 - (2**n - 2) * low)
        return LengthDistribution(n, {ps.pos(n): high, ps.neg(n): high}, low)

    return DistributionEnsemble(generate, name=f"nu({ps.name})")


def in_mass(e: DistributionEnsemble, member: Predicate, n: int) -> Fraction:
    return sum((w for x, w in e.slice(n).items() if w and member(x)), Fraction(0))


def max_ratio(d: LengthDistribution) -> Fraction:
    vals = d.nonzero_masses()
    if len(vals) < 2:
        return Fraction(1)
    return max(vals) / min(vals)


# ---------------------------------------------------------------------------
# Checkers


@dataclass(frozen=True)
class Verdict:
    check: str
    parameter: str
    passed: bool
    vacuous: bool = False
    detail: str = ""

    @property
    def label(self) -> str:
        if self.vacuous:
            return "vacuous-pass"
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class BalanceResult:
    verdict: Verdict
    in_mass: dict[int, Fraction]
    margin: dict[int, Fraction]


def check_balance(e: DistributionEnsemble, member: Predicate, c, lengths: Iterable[int], threshold: int = 0) -> BalanceResult:
    """Per length, ``1/c <= P_n <= 1 - 1/c`` where ``P_n`` is the in-set mass."""
    c = Fraction(c)
    if c <= 1:
        raise ValueError("balance constant must exceed 1")
    lengths = list(lengths)
    for n in lengths:
        _guard(n)
    lo, hi = 1 / c, 1 - 1 / c
    masses, margins = {}, {}
    failed = []
    for n in lengths:
        p = in_mass(e, member, n)
        masses[n] = p
        margins[n] = min(p - lo, hi - p)
        if n >= threshold and margins[n] < 0:
            failed.append(n)
    checked = [n for n in lengths if n >= threshold]
    v = Verdict("balance", f"c={c}", not failed, vacuous=not checked,
                detail=f"fails at {failed}" if failed else "")
    return BalanceResult(v, masses, margins)


def check_dichotomy(e: DistributionEnsemble, p: Polynomial, lengths: Iterable[int], label: str = "p") -> Verdict:
    """Every nonzero mass at length n is at least ``2**-p(n)``."""
    lengths = list(lengths)
    for n in lengths:
        _guard(n)
    failed = [n for n in lengths if min(e.slice(n).nonzero_masses()) < Fraction(1, 2 ** p(n))]
    return Verdict("dichotomy", label, not failed, vacuous=not lengths,
                   detail=f"fails at {failed}" if failed else "")


@dataclass(frozen=True)
class UniformityResult:
    verdict: Verdict
    ratios: dict[int, Fraction]
    worst_ratio: Fraction


def check_almost_uniformity(e: DistributionEnsemble, K, n0: int, lengths: Iterable[int]) -> UniformityResult:
    """Max/min nonzero mass ratio at every length ``n > n0`` is at most ``K``."""
    K = Fraction(K)
    if K <= 0:
        raise ValueError("K must be positive")
    lengths = list(lengths)
    for n in lengths:
        _guard(n)
    ratios = {n: max_ratio(e.slice(n)) for n in lengths}
    checked = [n for n in lengths if n > n0]
    failed = [n for n in checked if ratios[n] > K]
    worst = max((ratios[n] for n in checked), default=Fraction(1))
    v = Verdict("almost-uniformity", f"K={K}", not failed, vacuous=not checked,
                detail=f"fails at {failed}" if failed else "")
    return UniformityResult(v, ratios, worst)


def pierced_heuristic(ps: PiercedSet) -> Predicate:
    """Reject ``neg(|x|)``, accept everything else (including ``pos(|x|)``)."""

    def decide(x: str) -> bool:
        n = len(x)
        if n >= ps.threshold and x == ps.neg(n):
            return False
        return True

    return decide


def error_weight(alg: Predicate, e: DistributionEnsemble, member: Predicate, n: int) -> Fraction:
    """Slice mass of strings the decision algorithm misclassifies."""
    return sum((w for x, w in e.slice(n).items() if w and alg(x) != member(x)), Fraction(0))


def check_heuristic_bound(errors: Mapping[int, Fraction], q: Polynomial, N: int, label: str = "q") -> Verdict:
    """Error weight is strictly below ``1/q(n)`` at every recorded ``n >= N``."""
    checked = sorted(n for n in errors if n >= N)
    if not checked:
        warnings.warn("heuristic bound checked over an empty range", stacklevel=2)
    failed = []
    for n in checked:
        qn = q(n)
        if qn <= 0:
            raise ValueError(f"q({n}) = {qn} is not positive")
        if errors[n] >= Fraction(1) / qn:
            failed.append(n)
    return Verdict("heuristic-bound", label, not failed, vacuous=not checked,
                   detail=f"fails at {failed}" if failed else "")


def pad_set(member: Predicate) -> Predicate:
    """Membership for ``{00x} ∪ {1 x 1^(|x|^2+2) : x in A}``."""

    def padded(s: str) -> bool:
        if s.startswith("00"):
            return True
        if not s.startswith("1"):
            return False
        rest = s[1:]
        k = 0
        while k + k * k + 2 <= len(rest):
            if k + k * k + 2 == len(rest):
                x, tail = rest[:k], rest[k:]
                return tail == "1" * len(tail) and member(x)
            k += 1
        return False

    return padded


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class LengthRecord:
    n: int
    in_mass: Fraction
    balance_margin: Fraction
    min_nonzero: Fraction
    max_ratio: Fraction
    error_weight: Optional[Fraction]


@dataclass
class JuntaReport:
    ensemble: str
    language: str
    threshold: int
    records: list[LengthRecord]
    verdicts: list[Verdict]
    hardness: str = "assumed-unchecked"

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_text(self) -> str:
        out = [
            f"# junta-report v{REPORT_VERSION}",
            f"# ensemble={self.ensemble} language={self.language} threshold={self.threshold}",
        ]
        for r in self.records:
            out.append(
                f"n={r.n} in_mass={_q(r.in_mass)} balance_margin={_q(r.balance_margin)} "
                f"min_nonzero={_q(r.min_nonzero)} max_ratio={_q(r.max_ratio)} "
                f"error_weight={_q(r.error_weight)}"
            )
        for v in self.verdicts:
            out.append(f"verdict {v.check}({v.parameter}) {v.label}" + (f" {v.detail}" if v.detail else ""))
        out.append(f"hardness {self.hardness}")
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["record", "n", "in_mass", "balance_margin", "min_nonzero", "max_ratio",
                    "error_weight", "check", "parameter", "result"])
        for r in self.records:
            w.writerow(["length", r.n, _q(r.in_mass), _q(r.balance_margin), _q(r.min_nonzero),
                        _q(r.max_ratio), _q(r.error_weight), "", "", ""])
        for v in self.verdicts:
            w.writerow(["verdict", "", "", "", "", "", "", v.check, v.parameter, v.label])
        w.writerow(["assumption", "", "", "", "", "", "", "hardness", "", self.hardness])
        return buf.getvalue()

    def to_jsonl(self) -> str:
        lines = [json.dumps({"record": "header", "version": REPORT_VERSION, "ensemble": self.ensemble,
                             "language": self.language, "threshold": self.threshold})]
        for r in self.records:
            lines.append(json.dumps({
                "record": "length", "n": r.n, "in_mass": _q(r.in_mass),
                "balance_margin": _q(r.balance_margin), "min_nonzero": _q(r.min_nonzero),
                "max_ratio": _q(r.max_ratio), "error_weight": _q(r.error_weight),
            }))
        lines.append(json.dumps({
            "record": "trailer",
            "verdicts": [{"check": v.check, "parameter": v.parameter, "result": v.label} for v in self.verdicts],
            "hardness": self.hardness,
        }))
        return "\n".join(lines) + "\n"


def _q(x: Optional[Fraction]) -> str:
    if x is None:
        return ""
    return f"{x.numerator}/{x.denominator}"


def build_report(
    e: DistributionEnsemble,
    ps: PiercedSet,
    lengths: Iterable[int],
    c=3,
    p: Polynomial = lambda n: n * n,
    p_label: str = "p(n)=n^2",
    K=256,
    n0: int = 0,
    q: Polynomial = lambda n: n,
    q_label: str = "q(n)=n",
) -> JuntaReport:
    """Run every checker over ``lengths`` for ``ps.member`` under ``e``."""
    lengths = list(lengths)
    balance = check_balance(e, ps.member, c, lengths, threshold=ps.threshold)
    dichotomy = check_dichotomy(e, p, lengths, label=p_label)
    uniformity = check_almost_uniformity(e, K, n0, lengths)
    alg = pierced_heuristic(ps)
    errors = {n: error_weight(alg, e, ps.member, n) for n in lengths}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        heuristic = check_heuristic_bound(errors, q, ps.threshold, label=q_label)
    records = [
        LengthRecord(
            n=n,
            in_mass=balance.in_mass[n],
            balance_margin=balance.margin[n],
            min_nonzero=min(e.slice(n).nonzero_masses()),
            max_ratio=uniformity.ratios[n],
            error_weight=errors[n],
        )
        for n in lengths
    ]
    return JuntaReport(
        ensemble=e.name,
        language=ps.name,
        threshold=ps.threshold,
        records=records,
        verdicts=[balance.verdict, dichotomy, uniformity.verdict, heuristic],
    )

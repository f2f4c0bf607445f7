"""Command-line entry point.

Exit status: 0 when every check passes, 1 when some check fails, 2 on usage,
parse, or guard errors.
"""
from __future__ import annotations

import argparse
import importlib
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import kernels
from .elections import DodgsonTriple, ElectionError, ParseError, parse_election, parse_preflib
from .junta import PiercedSet, build_report, junta_nu, uniform_ensemble
from .mc import EVENTS, check_bound
from .skc import (
    EnumerationGuardError,
    adversarial_benign_scheme,
    faithful_scheme,
    format_wrapper_csv,
    parse_table,
    strings,
    wrapper_sweep,
)
from .solvers import SolverGuardError, dodgson_winners_exact, exact_scores, greedy_score
from .toysat import toy_pierced_sat

SEED_ENV = "FREQCORRECT_SEED"
DEFAULT_SEED = 20080616
MAX_WRAPPER_LENGTH = 12


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Optional[str] = None
    grid: tuple[tuple[int, int], ...] = ()
    seed: int = DEFAULT_SEED
    seed_source: str = "default"
    trials: int = 0
    lengths: tuple[int, ...] = ()
    out: Optional[str] = None
    format: str = "text"
    workers: int = 1
    ensemble: str = "nu"
    pierced: Optional[str] = None
    balance_c: Fraction = Fraction(3)
    uniformity_k: Fraction = Fraction(256)
    n0: int = 0
    scheme: str = "adversarial"


def fmt_float(x: float) -> str:
    return format(x, ".12g")


def fmt_q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_lengths(spec: str) -> tuple[int, ...]:
    out: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if any(n < 1 for n in out):
        raise ConfigError("lengths must be positive")
    return tuple(out)


def parse_grid(spec: str) -> tuple[tuple[int, int], ...]:
    points = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        m, sep, n = part.partition(":")
        if not sep:
            raise ConfigError(f"grid point {part!r} is not of the form m:n")
        points.append((int(m), int(n)))
    return tuple(points)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freqcorrect", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats, default_format):
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=formats, default=default_format)

    p = sub.add_parser("score", help="exact and greedy Dodgson scores for an election file")
    p.add_argument("--input", required=True, help="native election file, or PrefLib .soc")
    common(p, ["text", "csv", "json"], "text")

    p = sub.add_parser("mc", help="Monte Carlo check of the niceness probability bounds")
    p.add_argument("--grid", help="comma-separated m:n points")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    common(p, ["csv", "json", "text"], "csv")

    p = sub.add_parser("junta", help="junta construction over a pierced set, with exact checkers")
    p.add_argument("--lengths", help="e.g. 6..10 (default: threshold..10)")
    p.add_argument("--ensemble", choices=["nu", "uniform"], default="nu")
    p.add_argument("--pierced", help="module:function returning a PiercedSet (default: toy SAT)")
    p.add_argument("--c", dest="balance_c", default="3", help="balance constant")
    p.add_argument("--K", dest="uniformity_k", default="256", help="almost-uniformity constant")
    p.add_argument("--n0", type=int, default=0)
    common(p, ["text", "csv", "json"], "text")

    p = sub.add_parser("wrapper-demo", help="maybe-fraction of a wrapped benign scheme per length")
    p.add_argument("--lengths", default="1..12")
    p.add_argument("--input", help="function table: 'bitstring value' per line")
    p.add_argument("--scheme", choices=["adversarial", "faithful"], default="adversarial")
    common(p, ["csv", "json", "text"], "csv")
    return ap


def build_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = _parser().parse_args(argv)
    kw: dict = {"command": args.command, "out": args.out, "format": args.format}
    if args.command == "score":
        kw["input"] = args.input
    elif args.command == "mc":
        if args.grid:
            grid = parse_grid(args.grid)
        elif args.m is not None and args.n is not None:
            grid = ((args.m, args.n),)
        else:
            raise ConfigError("mc needs --grid or both --m and --n")
        if not grid:
            raise ConfigError("grid is empty")
        if any(m < 1 or n < 1 for m, n in grid):
            raise ConfigError("grid sizes must be at least 1")
        if args.trials < 1:
            raise ConfigError("--trials must be at least 1")
        if args.workers < 1:
            raise ConfigError("--workers must be at least 1")
        if args.seed is not None:
            seed, source = args.seed, "flag"
        elif os.environ.get(SEED_ENV):
            seed, source = int(os.environ[SEED_ENV]), "env"
        else:
            seed, source = DEFAULT_SEED, "default"
        if seed < 0:
            raise ConfigError("seed must be nonnegative")
        kw.update(grid=grid, trials=args.trials, seed=seed, seed_source=source, workers=args.workers)
    elif args.command == "junta":
        kw.update(
            lengths=parse_lengths(args.lengths) if args.lengths else (),
            ensemble=args.ensemble,
            pierced=args.pierced,
            balance_c=Fraction(args.balance_c),
            uniformity_k=Fraction(args.uniformity_k),
            n0=args.n0,
        )
        if kw["balance_c"] <= 1:
            raise ConfigError("--c must exceed 1")
        if kw["uniformity_k"] <= 0:
            raise ConfigError("--K must be positive")
    elif args.command == "wrapper-demo":
        lengths = parse_lengths(args.lengths)
        if not lengths:
            raise ConfigError("no lengths given")
        if max(lengths) > MAX_WRAPPER_LENGTH:
            raise ConfigError(f"wrapper-demo lengths are capped at {MAX_WRAPPER_LENGTH}")
        kw.update(lengths=lengths, input=args.input, scheme=args.scheme)
    return RunConfig(**kw)


# ---------------------------------------------------------------------------
# Commands: each returns (report text, all checks passed)


def cmd_score(cfg: RunConfig) -> tuple[str, bool]:
    with open(cfg.input, encoding="utf-8") as fh:
        text = fh.read()
    e = parse_preflib(text) if cfg.input.endswith((".soc", ".toc")) else parse_election(text)
    exact = exact_scores(e)
    greedy = [greedy_score(DodgsonTriple(e, c)) for c in range(e.m)]
    winners = dodgson_winners_exact(e)
    ok = all(g.value == s for g, s in zip(greedy, exact) if g.definitely)
    rows = [
        {"candidate": c, "exact_score": exact[c], "greedy_value": greedy[c].value,
         "greedy_flag": greedy[c].flag.value, "winner": c in winners}
        for c in range(e.m)
    ]
    if cfg.format == "json":
        lines = [json.dumps({"record": "header", "m": e.m, "n": e.n})]
        lines += [json.dumps({"record": "candidate", **r}) for r in rows]
        lines.append(json.dumps({"record": "winners", "winners": sorted(winners)}))
        return "\n".join(lines) + "\n", ok
    if cfg.format == "csv":
        out = ["candidate,exact_score,greedy_value,greedy_flag,winner"]
        out += [f"{r['candidate']},{r['exact_score']},{r['greedy_value']},{r['greedy_flag']},"
                f"{str(r['winner']).lower()}" for r in rows]
        return "\n".join(out) + "\n", ok
    out = [f"# m={e.m} n={e.n}", "candidate  exact  greedy"]
    for r in rows:
        name = e.names[r["candidate"]] if e.names else str(r["candidate"])
        out.append(f"{name:>9}  {r['exact_score']:>5}  ({r['greedy_value']}, {r['greedy_flag']})")
    out.append("winners: " + " ".join(str(c) for c in sorted(winners)))
    return "\n".join(out) + "\n", ok


MC_COLUMNS = ["event", "m", "n", "trials", "successes", "p_hat", "ci99_upper", "bound", "pass"]


def cmd_mc(cfg: RunConfig) -> tuple[str, bool]:
    rows = []
    for event in EVENTS:
        for m, n in cfg.grid:
            chk = check_bound(event, m, n, cfg.trials, cfg.seed, workers=cfg.workers)
            est = chk.estimate
            rows.append({
                "event": event, "m": m, "n": n, "trials": est.trials, "successes": est.successes,
                "p_hat": fmt_float(est.p_hat), "ci99_upper": fmt_float(chk.upper),
                "bound": fmt_float(chk.bound), "pass": str(chk.passed).lower(),
            })
    ok = all(r["pass"] == "true" for r in rows)
    header = f"seed={cfg.seed} seed_source={cfg.seed_source} trials={cfg.trials} backend={kernels.BACKEND}"
    if cfg.format == "json":
        lines = [json.dumps({"record": "header", "seed": cfg.seed, "seed_source": cfg.seed_source,
                             "trials": cfg.trials})]
        lines += [json.dumps({"record": "row", **r}) for r in rows]
        return "\n".join(lines) + "\n", ok
    if cfg.format == "text":
        out = [f"# {header}"]
        out += ["  ".join(f"{k}={r[k]}" for k in MC_COLUMNS) for r in rows]
        return "\n".join(out) + "\n", ok
    out = [f"# {header}", ",".join(MC_COLUMNS)]
    out += [",".join(str(r[k]) for k in MC_COLUMNS) for r in rows]
    return "\n".join(out) + "\n", ok


def _load_pierced(spec: Optional[str]) -> PiercedSet:
    if not spec:
        return toy_pierced_sat()
    mod, _, attr = spec.partition(":")
    if not attr:
        raise ConfigError("--pierced must be module:function")
    ps = getattr(importlib.import_module(mod), attr)()
    if not isinstance(ps, PiercedSet):
        raise ConfigError(f"{spec} did not return a PiercedSet")
    return ps


def cmd_junta(cfg: RunConfig) -> tuple[str, bool]:
    ps = _load_pierced(cfg.pierced)
    lengths = cfg.lengths or tuple(range(ps.threshold, 11))
    ps.validate(lengths)
    ens = junta_nu(ps) if cfg.ensemble == "nu" else uniform_ensemble()
    report = build_report(ens, ps, lengths, c=cfg.balance_c, K=cfg.uniformity_k, n0=cfg.n0)
    text = {"text": report.to_text, "csv": report.to_csv, "json": report.to_jsonl}[cfg.format]()
    return text, report.passed


def _parity(x: str) -> str:
    return str(x.count("1") % 2)


def cmd_wrapper_demo(cfg: RunConfig) -> tuple[str, bool]:
    if cfg.input:
        with open(cfg.input, encoding="utf-8") as fh:
            f = parse_table(fh.read())
        missing = [n for n in cfg.lengths if any(x not in f for x in strings(n))]
        if missing:
            raise ConfigError(f"function table does not cover lengths {missing}")
    else:
        f = _parity
    factory = adversarial_benign_scheme if cfg.scheme == "adversarial" else (lambda g, n: faithful_scheme(g))
    rows = wrapper_sweep(f, cfg.lengths, factory)
    ok = all(r.passed for r in rows)
    if cfg.format == "json":
        lines = [json.dumps({"n": r.n, "fraction": fmt_q(r.fraction), "bound": fmt_q(r.bound),
                             "pass": r.passed}) for r in rows]
        return "\n".join(lines) + "\n", ok
    if cfg.format == "text":
        lines = [f"n={r.n} fraction={fmt_q(r.fraction)} bound={fmt_q(r.bound)} "
                 f"{'pass' if r.passed else 'fail'}" for r in rows]
        return "\n".join(lines) + "\n", ok
    return format_wrapper_csv(rows), ok


COMMANDS = {
    "score": cmd_score,
    "mc": cmd_mc,
    "junta": cmd_junta,
    "wrapper-demo": cmd_wrapper_demo,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = build_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ConfigError, ValueError) as exc:
        print(f"freqcorrect: {exc}", file=sys.stderr)
        return 2
    try:
        text, ok = COMMANDS[cfg.command](cfg)
    except (ParseError, ElectionError, ConfigError, SolverGuardError, EnumerationGuardError, OSError) as exc:
        print(f"freqcorrect {cfg.command}: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

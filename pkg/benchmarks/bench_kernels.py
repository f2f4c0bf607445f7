"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 200]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from freqcorrect import _fallback
from freqcorrect.mc import sample_profile

try:
    from freqcorrect import _kernels
except ImportError:
    _kernels = None

SHAPES = [(3, 21), (3, 401), (5, 401), (8, 2001)]


def time_call(fn, profile, m, repeat):
    return min(timeit.repeat(lambda: fn(profile, m), number=repeat, repeat=3)) / repeat


def bench_kernels(repeat):
    backends = {"python": _fallback}
    if _kernels is not None:
        backends["cython"] = _kernels
    print(f"{'kernel':<11}{'m':>3}{'n':>6}" + "".join(f"{b + ' us':>13}" for b in backends) + f"{'speedup':>10}")
    for m, n in SHAPES:
        profile = np.ascontiguousarray(sample_profile(m, n, 1, 0), dtype=np.int32)
        for name in ("tally", "nice_flags"):
            t = {b: time_call(getattr(mod, name), profile, m, repeat) for b, mod in backends.items()}
            speed = f"{t['python'] / t['cython']:9.1f}x" if "cython" in t else ""
            print(f"{name:<11}{m:>3}{n:>6}" + "".join(f"{v * 1e6:13.1f}" for v in t.values()) + speed)


def bench_end_to_end(trials):
    code = (
        "import time; from freqcorrect.mc import estimate_event; from freqcorrect.kernels import BACKEND;"
        f"t=time.perf_counter(); estimate_event('not_nice', 3, 401, {trials}, 1);"
        "print(BACKEND, time.perf_counter()-t)"
    )
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("FREQCORRECT_PURE", None)
        if pure:
            env["FREQCORRECT_PURE"] = "1"
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"estimate_event not_nice (3,401) x{trials}: {backend:<7}{float(secs):8.2f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--trials", type=int, default=5000)
    args = ap.parse_args()
    bench_kernels(args.repeat)
    bench_end_to_end(args.trials)

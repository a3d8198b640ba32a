"""Compare the compiled special-function kernels with the pure-Python twin.

Two views:

* micro-benchmarks of the individual kernel routines, calling each
  backend module directly inside this process;
* one end-to-end error-rate sweep per backend, run in a subprocess so
  the import-time backend selection (``GFABER_PURE_PY``) is exercised
  exactly the way users hit it.

Run from the repository root::

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --calls 50000 --repeat 7
"""

import argparse
import os
import subprocess
import sys
import time

from gfaber import _kernels_py

try:
    from gfaber import _kernels
except ImportError:
    _kernels = None

# (label, function name, positional arguments)
MICRO_CASES = (
    ("log-gamma, signed", "lgamma_signed", (12.34,)),
    ("upper incomplete gamma", "upper_gamma", (7.5, 3.25)),
    ("log modified Bessel I", "log_bessel_i", (2.5, 8.0)),
    ("log confluent 1F1", "log_hyp1f1", (2.5, 4.0, 10.0)),
    ("Gauss 2F1", "hyp2f1", (0.3, 0.7, 1.1, 0.5)),
)

SWEEP_SNIPPET = """
import time
from gfaber import aber, fading, modulation, noise, specfun

scenario = aber.AberScenario(
    fading=fading.EtaMuParams(shape=0.5, mu=1.0),
    mimo=fading.MimoConfig(nt=2, nr=2),
    noise=noise.builtin_fit(2.0),
    modulation=modulation.parse_modulation("bpsk"),
    snr_grid=tuple(float(v) for v in range(0, 31, 2)),
)
start = time.perf_counter()
for _ in range({loops}):
    aber.sweep(scenario, aber.METHOD_ORACLE_EXACT, rel_tol=1e-8)
elapsed = time.perf_counter() - start
print(f"{{specfun.backend()}} {{elapsed / {loops}:.6f}}")
"""


def best_time(fn, args, calls, repeat):
    """Best-of-``repeat`` seconds per call for ``fn(*args)``."""
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for _ in range(calls):
            fn(*args)
        best = min(best, (time.perf_counter() - start) / calls)
    return best


def run_micro(calls, repeat):
    print(f"kernel micro-benchmarks ({calls} calls, best of {repeat})")
    header = f"{'routine':<26}{'pure (us)':>12}{'compiled (us)':>15}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, name, args in MICRO_CASES:
        pure = best_time(getattr(_kernels_py, name), args, calls, repeat)
        if _kernels is None:
            print(f"{label:<26}{pure * 1e6:>12.3f}{'n/a':>15}{'n/a':>9}")
            continue
        compiled = best_time(getattr(_kernels, name), args, calls, repeat)
        print(
            f"{label:<26}{pure * 1e6:>12.3f}{compiled * 1e6:>15.3f}"
            f"{pure / compiled:>8.1f}x"
        )


def run_sweep(loops):
    print()
    print(f"end-to-end: 16-point exact-oracle sweep, mean of {loops} runs")
    results = {}
    for pure_env in ("1", ""):
        env = dict(os.environ)
        if pure_env:
            env["GFABER_PURE_PY"] = pure_env
        else:
            env.pop("GFABER_PURE_PY", None)
        out = subprocess.run(
            [sys.executable, "-c", SWEEP_SNIPPET.format(loops=loops)],
            capture_output=True, text=True, check=True, env=env,
        ).stdout.split()
        backend, seconds = out[0], float(out[1])
        results[backend] = seconds
        print(f"  backend={backend:<10} {seconds:.4f} s/sweep")
    if "compiled" in results and "python" in results:
        print(
            f"  speedup: {results['python'] / results['compiled']:.1f}x"
        )
    elif "compiled" not in results:
        print("  compiled backend unavailable; showing pure Python only")


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="benchmark the compiled kernels against pure Python"
    )
    parser.add_argument(
        "--calls", type=int, default=20000,
        help="micro-benchmark calls per timing (default 20000)",
    )
    parser.add_argument(
        "--repeat", type=int, default=5,
        help="timing repetitions, best taken (default 5)",
    )
    parser.add_argument(
        "--sweep-loops", type=int, default=3,
        help="end-to-end sweep repetitions per backend (default 3)",
    )
    args = parser.parse_args(argv)
    if args.calls < 1 or args.repeat < 1 or args.sweep_loops < 1:
        parser.error("counts must be positive")
    run_micro(args.calls, args.repeat)
    run_sweep(args.sweep_loops)
    return 0


if __name__ == "__main__":
    sys.exit(main())

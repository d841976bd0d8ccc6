"""Benchmark the dense game kernels: numba JIT versus interpreted numpy.

Run:  python benchmarks/bench_kernels.py
The script times the compiled path, then re-runs itself in a subprocess
with SEPWITNESS_NO_NUMBA=1 to time the fallback, and prints both.
"""

import json
import os
import subprocess
import sys
import time

import numpy as np

from sepwitness.games import accelerated, seesaw_once
from sepwitness.games.kernels import jacobi_eigh, pgm_effects


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return np.ascontiguousarray((a + a.conj().T) / 2.0)


def bench(label, fn, repeats):
    fn()  # warmup (JIT compile on the accelerated path)
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    elapsed = (time.perf_counter() - start) / repeats
    return label, elapsed


def run_benchmarks():
    rng = np.random.default_rng(7)
    results = []

    for n in (4, 8, 16):
        mats = [random_hermitian(rng, n) for _ in range(200)]

        def eig_batch(mats=mats):
            for m in mats:
                jacobi_eigh(m)

        results.append(bench(f"jacobi_eigh n={n} x200", eig_batch, 5))

    states = rng.standard_normal((12, 6)) + 1j * rng.standard_normal((12, 6))
    states /= np.sqrt(np.sum(np.abs(states) ** 2, axis=1))[:, None]
    states = np.ascontiguousarray(states)
    results.append(bench("pgm_effects m=12 n=6", lambda: pgm_effects(states), 200))

    def seesaw_workload():
        for k in range(20):
            seesaw_once(3, 6, np.random.default_rng([99, k]))

    results.append(bench("seesaw (3,6) x20 restarts", seesaw_workload, 3))
    return results


def main():
    results = run_benchmarks()
    mode = "numba" if accelerated() else "numpy"

    if os.environ.get("_BENCH_CHILD"):
        print(json.dumps([(label, t) for label, t in results]))
        return

    env = dict(os.environ, SEPWITNESS_NO_NUMBA="1", _BENCH_CHILD="1")
    child = subprocess.run(
        [sys.executable, os.path.abspath(__file__)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    fallback = dict(json.loads(child.stdout.strip().splitlines()[-1]))

    print(f"{'kernel':<28} {mode + ' [s]':>12} {'numpy [s]':>12} {'speedup':>9}")
    for label, t in results:
        other = fallback[label]
        print(f"{label:<28} {t:>12.6f} {other:>12.6f} {other / t:>8.1f}x")


if __name__ == "__main__":
    main()

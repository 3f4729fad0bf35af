"""Time the compiled and pure-Python type-search kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N] [--max-k K]

Search arguments are precomputed for every generated case (kr = 9 and 10)
in both profiles, so only the depth-first search itself is timed; t_max
and result packaging are excluded.
"""
from __future__ import annotations

import argparse
import time

from ltsieve import _kernels
from ltsieve._kernels import SearchLimit
from ltsieve.enumerator import enumerate as enumerate_cases
from ltsieve.itypes import PAPER, STRICT, _search_top, _steps


def workload(max_k: int) -> list[tuple]:
    jobs = []
    for kr in (10, 9):
        for p in enumerate_cases(kr):
            if p.k > max_k:
                continue
            for profile in (STRICT, PAPER):
                top = _search_top(p)
                budget = p.d if profile.mode == "strict" else p.k
                jobs.append((p.k, p.x, top, budget, _steps(p, profile.mode, top),
                             profile.max_solutions, profile.max_nodes))
    return jobs


def run(jobs) -> tuple[int, int, int]:
    found = nodes = guarded = 0
    for job in jobs:
        try:
            sols, n = _kernels.search(*job)
        except SearchLimit:
            guarded += 1
            continue
        found += len(sols)
        nodes += n
    return found, nodes, guarded


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--max-k", type=int, default=10**9)
    args = parser.parse_args()
    jobs = workload(args.max_k)
    print(f"{len(jobs)} searches")
    results = {}
    for backend in _kernels.available_backends():
        with _kernels.use_backend(backend):
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                out = run(jobs)
                best = min(best, time.perf_counter() - start)
        results[backend] = (best, out)
        print(f"{backend:>7}: {best:8.3f} s  solutions={out[0]} nodes={out[1]} guarded={out[2]}")
    if len(results) == 2:
        (tc, oc), (tp, op) = results["cython"], results["python"]
        if oc != op:
            raise SystemExit("backends disagree")
        print(f"speedup: {tp / tc:.1f}x")
    else:
        print("compiled kernel not built; only the Python backend was timed")


if __name__ == "__main__":
    main()

"""Independent reference computations shared by the unit and acceptance tests.

Nothing here imports the package's search code; each function recomputes
its answer straight from the defining equations.
"""
from __future__ import annotations

from itertools import combinations
from math import gcd, perm


def _divisors(n):
    return sorted({q for a in range(1, int(n**0.5) + 1) if n % a == 0 for q in (a, n // a)})


def brute_force_cases(kmax):
    """Every 10-tuple with k <= kmax, found by scanning (k, x, y) directly."""
    found = set()
    for k in range(3, kmax + 1):
        K = k * (k - 1) // 2
        for x in range(1, K):
            for y in _divisors(K - x):
                c = (K - x) // y
                if c < 2 or (K - y) <= 0 or (K - y) % x:
                    continue
                d = (K - y) // x
                if d < 2:
                    continue
                v = c * d
                if (v - 1) % (k - 1):
                    continue
                r = (v - 1) // (k - 1)
                if r < k or (v * r) % k:
                    continue
                b = v * r // k
                kv, kr, bv, br = gcd(k, v), gcd(k, r), gcd(b, v), gcd(b, r)
                if bv * br != b or (c - 1) % br or (d - 1) % br:
                    continue
                found.add((d, c, x, y, (c - 1) // br, (d - 1) // br, kv, kr, bv, br))
    return found


def tmax_descending(d, b, counts):
    """Largest t in d..1 meeting the divisibility condition for every subset sum; else 0."""
    sizes = list(counts.values())
    sums = {sum(c) for n in range(1, len(sizes) + 1) for c in combinations(sizes, n)}
    for cand in range(d, 0, -1):
        if all((b * perm(s, h)) % perm(d, h) == 0
               for s in sums for h in range(1, min(cand, s) + 1)):
            return cand
    return 0

"""Pure-Python type-search kernel.

Finds every vector (d_1, ..., d_top) of nonnegative integers with
sum i*d_i = k, sum C(i,2)*d_i = x, sum d_i <= budget and steps[i] | d_i.
The compiled kernel in ``_typesearch.pyx`` mirrors this loop line for line.
"""
from __future__ import annotations

from typing import Sequence


class SearchLimit(Exception):
    """Raised when a search would exceed its solution or node budget."""

    def __init__(self, kind: str, nodes: int, found: int):
        super().__init__(f"type search exceeded its {kind} limit "
                         f"(nodes={nodes}, solutions so far={found})")
        self.kind = kind
        self.nodes = nodes
        self.found = found


def _min_pairs(rk: int, nb: int) -> int:
    # fewest inner pairs when rk points are spread over nb classes
    if nb >= rk:
        return 0
    q, rem = divmod(rk, nb)
    return rem * (q + 1) * q // 2 + (nb - rem) * q * (q - 1) // 2


def _feasible(j: int, rk: int, rx: int, nb: int, pairs: Sequence[int]) -> bool:
    if nb <= 0 or rk > j * nb:
        return False
    if (rk // j) * pairs[j] + pairs[rk % j] < rx:
        return False
    return _min_pairs(rk, nb) <= rx


def search(k: int, x: int, top: int, budget: int, steps: Sequence[int],
           max_solutions: int, max_nodes: int, first_only: bool = False):
    """Return ``(solutions, nodes)``; each solution is a tuple (d_1, ..., d_top)."""
    sols: list[tuple[int, ...]] = []
    if x == 0 or top < 2:
        if x == 0 and k <= budget and k % steps[1] == 0 and top >= 1:
            sols.append((k,) + (0,) * (top - 1))
        return sols, 1
    pairs = [i * (i - 1) // 2 for i in range(top + 1)]
    cnt = [0] * (top + 2)
    rk = [0] * (top + 2)
    rx = [0] * (top + 2)
    nb = [0] * (top + 2)
    rk[top], rx[top], nb[top] = k, x, budget
    hi = min(k // top, x // pairs[top], budget)
    cnt[top] = hi - hi % steps[top]
    nodes = 0
    i = top
    while True:
        if cnt[i] < 0:
            cnt[i] = 0
            i += 1
            if i > top:
                break
            cnt[i] -= steps[i]
            continue
        nodes += 1
        if nodes > max_nodes:
            raise SearchLimit("node", nodes, len(sols))
        e = cnt[i]
        nrk = rk[i] - i * e
        nrx = rx[i] - pairs[i] * e
        nnb = nb[i] - e
        j = i - 1
        if nrx == 0:
            if nrk % steps[1] == 0 and nrk <= nnb:
                sols.append((nrk,) + (0,) * (i - 2) + tuple(cnt[i:top + 1]))
                if first_only:
                    return sols, nodes
                if len(sols) > max_solutions:
                    raise SearchLimit("solution", nodes, len(sols))
            cnt[i] -= steps[i]
            continue
        if j == 1 or not _feasible(j, nrk, nrx, nnb, pairs):
            cnt[i] -= steps[i]
            continue
        rk[j], rx[j], nb[j] = nrk, nrx, nnb
        hi = min(nrk // j, nrx // pairs[j], nnb)
        cnt[j] = hi - hi % steps[j]
        i = j
    return sols, nodes

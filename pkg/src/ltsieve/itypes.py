"""Intersection types of a line with the class partition, and t_max."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from . import _kernels
from ._kernels import SearchLimit
from .exactmath import binom2, falling, gcd, lcm
from .model import IntersectionType, LineRecord, ParameterSet

Mode = Literal["paper", "strict"]


class TypeSearchLimit(RuntimeError):
    """The type search for one case would exceed its resource guard."""

    def __init__(self, params: ParameterSet, kind: str, nodes: int, found: int):
        super().__init__(f"case {params.key()}: {kind} limit exceeded "
                         f"after {nodes} nodes, {found} solutions")
        self.params = params
        self.kind = kind
        self.nodes = nodes
        self.found = found


@dataclass(frozen=True)
class TypeProfile:
    """Which constraints a generated type must satisfy.

    ``paper``: the two sum equations, sizes up to min(k, c), t_max >= 1.
    ``strict``: additionally sum d_i <= d and v | i*b*d_i for every size.
    """

    mode: Mode = "strict"
    max_solutions: int = 100_000
    max_nodes: int = 20_000_000

    def __post_init__(self) -> None:
        if self.mode not in ("paper", "strict"):
            raise ValueError(f"unknown profile mode {self.mode!r}")
        if self.max_solutions < 1 or self.max_nodes < 1:
            raise ValueError("resource limits must be >= 1")


STRICT = TypeProfile("strict")
PAPER = TypeProfile("paper")


def subset_sums(t: IntersectionType) -> set[int]:
    """All values d(S) over nonempty subsets S of the spectrum."""
    sums = {0}
    for _, di in t.entries:
        sums |= {s + di for s in sums}
    sums.discard(0)
    return sums


def tmax(d: int, b: int, t: IntersectionType) -> int:
    """Largest t <= d such that falling(d, h) | b * falling(d(S), h)
    for every nonempty S of the spectrum and every h <= min(t, d(S)).
    Returns 0 when h = 1 already fails."""
    if d < 2 or b < 1 or not t.entries:
        raise ValueError("tmax needs d >= 2, b >= 1 and a nonempty type")
    sums = sorted(subset_sums(t))
    top = min(d, sums[-1])
    for h in range(1, top + 1):
        fd = falling(d, h)
        for ds in sums:
            if ds >= h and (b * falling(ds, h)) % fd:
                return h - 1
    # no constraint involves h beyond the largest d(S)
    return d


def strict_violations(p: ParameterSet, t: IntersectionType) -> list[str]:
    """The two strict-profile checks, named."""
    out = []
    if t.classes_met > p.d:
        out.append(f"class budget: sum d_i = {t.classes_met} > d = {p.d}")
    bad = [i for i, di in t.entries if (i * p.b * di) % p.v]
    if bad:
        out.append(f"per-point line count: v does not divide i*b*d_i for i in {bad}")
    return out


def per_point_line_counts(p: ParameterSet, t: IntersectionType) -> list[tuple[int, Fraction]]:
    """r_i = i*b*d_i / v: lines through a point meeting its class in i points."""
    counts = [(i, Fraction(i * p.b * di, p.v)) for i, di in t.entries]
    if not t.violations(p):
        total = sum((ri for _, ri in counts), Fraction(0))
        inner = sum(((i - 1) * ri for i, ri in counts), Fraction(0))
        assert total == p.r, (total, p.r)
        assert inner == p.c - 1, (inner, p.c)
    return counts


def _search_top(p: ParameterSet) -> int:
    """Largest usable intersection size: i <= min(k, c) and C(i,2) <= x."""
    top = min(p.k, p.c)
    lo, hi = 1, top
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if binom2(mid) <= p.x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _steps(p: ParameterSet, mode: Mode, top: int) -> list[int]:
    # t_max >= 1 is exactly d | b*d(S) for all S, i.e. d | b*d_i for every i
    base = p.d // gcd(p.d, p.b)
    steps = [1] * (top + 1)
    for i in range(1, top + 1):
        steps[i] = base if mode == "paper" else lcm(base, p.v // gcd(p.v, i * p.b))
    return steps


def _run(p: ParameterSet, profile: TypeProfile, first_only: bool):
    top = _search_top(p)
    budget = p.d if profile.mode == "strict" else p.k
    try:
        vectors, _ = _kernels.search(p.k, p.x, top, budget, _steps(p, profile.mode, top),
                                     profile.max_solutions, profile.max_nodes, first_only)
    except SearchLimit as exc:
        raise TypeSearchLimit(p, exc.kind, exc.nodes, exc.found) from None
    return [IntersectionType(tuple((i + 1, di) for i, di in enumerate(vec) if di))
            for vec in vectors]


def enumerate_types(p: ParameterSet, profile: TypeProfile = STRICT) -> list[LineRecord]:
    """Every type admitted by ``profile``, with its t_max, ordered by (d_1, d_2, ...)."""
    types = sorted(_run(p, profile, first_only=False), key=IntersectionType.sort_key)
    out = []
    for t in types:
        tm = tmax(p.d, p.b, t)
        assert tm >= 1, "kernel step sizes guarantee t_max >= 1"
        out.append(LineRecord(p, t, tm, strict=not strict_violations(p, t)))
    return out


def has_feasible_type(p: ParameterSet, profile: TypeProfile = STRICT) -> bool:
    """True iff at least one type passes ``profile``. Raises TypeSearchLimit when undecided."""
    return bool(_run(p, profile, first_only=True))

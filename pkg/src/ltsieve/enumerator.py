"""Solve the parameter system for a fixed k^(r).

Writing A = kr + gamma + delta and P = gamma*delta, the identities
v - 1 = r(k - 1), c - 1 = gamma*br, d - 1 = delta*br and r = kr*br
combine into

    gamma*delta*br + gamma + delta = kr*(k - 1),

so with m = kv we get br = (kr^2*m - A) / P in closed form. Integrality of
b = v*r/k forces m | N = A*(P + kr*A), which turns the search over m into a
divisor scan. r >= k is br >= m, hence P < kr^2 and the (gamma, delta)
grid is finite.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactmath import divisors, gcd
from .itypes import STRICT, TypeProfile, TypeSearchLimit, has_feasible_type
from .model import ParameterSet, case_sort_key


@dataclass(frozen=True)
class SearchCell:
    gamma: int
    delta: int
    kr: int

    def __post_init__(self) -> None:
        if self.gamma < 1 or self.delta < 1:
            raise ValueError("gamma and delta must be >= 1")
        if self.P > self.kr * self.kr - 1:
            raise ValueError(f"gamma*delta = {self.P} exceeds kr^2 - 1")

    @property
    def A(self) -> int:
        return self.kr + self.gamma + self.delta

    @property
    def P(self) -> int:
        return self.gamma * self.delta

    @property
    def N(self) -> int:
        return self.A * (self.P + self.kr * self.A)


@dataclass(frozen=True)
class Rejection:
    """Why (kr, gamma, delta, m) does not give a parameter set."""

    constraint: str
    detail: str = ""

    def __bool__(self) -> bool:
        return False


def fundamental_equation_check(p: ParameterSet) -> bool:
    return p.gamma * p.delta * p.br + p.gamma + p.delta == p.kr * (p.k - 1)


def candidate_moduli(cell: SearchCell, kr: int | None = None) -> list[int]:
    """Every value kv can take for this cell (a superset; each is post-checked)."""
    if kr is not None and kr != cell.kr:
        raise ValueError("kr does not match the cell")
    return divisors(cell.N)


def build_parameter_set(kr: int, gamma: int, delta: int, m: int) -> ParameterSet | Rejection:
    if min(kr, gamma, delta, m) < 1:
        raise ValueError("all inputs must be >= 1")
    A = kr + gamma + delta
    P = gamma * delta
    num = kr * kr * m - A
    if num <= 0 or num % P:
        return Rejection("br integral", f"(kr^2*m - A)/P = {num}/{P}")
    br = num // P
    if br < m:
        return Rejection("r >= k", f"br = {br} < kv = {m}")
    k = m * kr
    if k < 3:
        return Rejection("k >= 3", f"k = {k}")
    c = gamma * br + 1
    d = delta * br + 1
    v = c * d
    r = kr * br
    if (m * gamma) % 2:
        return Rejection("x integral", f"kv*gamma = {m * gamma} is odd")
    if (m * delta) % 2:
        return Rejection("y integral", f"kv*delta = {m * delta} is odd")
    if (v * r) % k:
        return Rejection("b integral", f"k = {k} does not divide v*r = {v * r}")
    b = v * r // k
    if gcd(k, v) != m:
        return Rejection("kv = gcd(k,v)", f"gcd = {gcd(k, v)} != {m}")
    if gcd(k, r) != kr:
        return Rejection("kr = gcd(k,r)", f"gcd = {gcd(k, r)} != {kr}")
    bv, got_br = gcd(b, v), gcd(b, r)
    if got_br != br:
        return Rejection("br = gcd(b,r)", f"gcd = {got_br} != {br}")
    if bv * got_br != b:
        return Rejection("b = bv*br", f"{bv}*{got_br} != {b}")
    return ParameterSet(d, c, m * gamma // 2, m * delta // 2, gamma, delta,
                        m, kr, bv, br, k, v, r, b)


def solve(kr: int) -> list[ParameterSet]:
    """All solutions of the parameter system, no type requirement, sorted."""
    if kr < 2:
        raise ValueError(f"kr must be >= 2, got {kr}")
    found: dict[tuple[int, ...], ParameterSet] = {}
    limit = kr * kr - 1
    for gamma in range(1, limit + 1):
        for delta in range(1, limit // gamma + 1):
            cell = SearchCell(gamma, delta, kr)
            for m in candidate_moduli(cell):
                p = build_parameter_set(kr, gamma, delta, m)
                if p:
                    found[p.key()] = p
    return sorted(found.values(), key=case_sort_key)


@dataclass
class EnumerationResult:
    kr: int
    cases: list[ParameterSet]
    # no type passes the profile (search exhausted)
    dropped: list[ParameterSet] = field(default_factory=list)
    # kept, but the type search hit its guard before deciding
    unresolved: list[ParameterSet] = field(default_factory=list)


def enumerate_cases(kr: int, require_types: bool = True,
                    profile: TypeProfile = STRICT) -> EnumerationResult:
    result = EnumerationResult(kr, [])
    for p in solve(kr):
        if not require_types:
            result.cases.append(p)
            continue
        try:
            ok = has_feasible_type(p, profile)
        except TypeSearchLimit:
            result.unresolved.append(p)
            ok = True
        (result.cases if ok else result.dropped).append(p)
    return result


def enumerate(kr: int, require_types: bool = True,  # noqa: A001 - public name
              profile: TypeProfile = STRICT) -> list[ParameterSet]:
    """Sorted parameter sets for ``kr``; with ``require_types`` only those admitting a type."""
    return enumerate_cases(kr, require_types, profile).cases

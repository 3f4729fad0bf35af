"""Value types shared across the sieve, plus the intersection-type grammar."""
from __future__ import annotations

import operator
from dataclasses import dataclass, field, fields
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactmath import binom2, gcd

# Order of the ten tabulated parameters; this tuple is also the case identity.
CASE_FIELDS = ("d", "c", "x", "y", "gamma", "delta", "kv", "kr", "bv", "br")
ALL_FIELDS = CASE_FIELDS + ("k", "v", "r", "b")


class InvalidParameterSet(ValueError):
    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


def parameter_violations(p: Mapping[str, int]) -> list[str]:
    """Every equation of the parameter model that ``p`` breaks (empty if valid)."""
    d, c, x, y = p["d"], p["c"], p["x"], p["y"]
    gamma, delta = p["gamma"], p["delta"]
    kv, kr, bv, br = p["kv"], p["kr"], p["bv"], p["br"]
    k, v, r, b = p["k"], p["v"], p["r"], p["b"]
    out = []

    def need(ok: bool, label: str) -> None:
        if not ok:
            out.append(label)

    need(c > 1, "c > 1")
    need(d > 1, "d > 1")
    need(k >= 3, "k >= 3")
    need(v == c * d, "v = c*d")
    need(r * (k - 1) == v - 1, "r(k-1) = v-1")
    need(b * k == v * r, "b*k = v*r")
    need(c * y == binom2(max(k, 0)) - x, "c*y = C(k,2) - x")
    need(d * x == binom2(max(k, 0)) - y, "d*x = C(k,2) - y")
    need(k == kv * kr, "k = kv*kr")
    need(v == bv * kv, "v = bv*kv")
    need(r == kr * br, "r = kr*br")
    need(b == bv * br, "b = bv*br")
    need(kv == gcd(k, v), "kv = gcd(k,v)")
    need(kr == gcd(k, r), "kr = gcd(k,r)")
    need(bv == gcd(b, v), "bv = gcd(b,v)")
    need(br == gcd(b, r), "br = gcd(b,r)")
    need(gamma * br == c - 1, "gamma*br = c-1")
    need(delta * br == d - 1, "delta*br = d-1")
    need(2 * x == kv * gamma, "2x = kv*gamma")
    need(2 * y == kv * delta, "2y = kv*delta")
    need(r >= k, "r >= k")
    return out


@dataclass(frozen=True, order=False)
class ParameterSet:
    """One candidate case. All fourteen integers are stored; construction validates."""

    d: int
    c: int
    x: int
    y: int
    gamma: int
    delta: int
    kv: int
    kr: int
    bv: int
    br: int
    k: int
    v: int
    r: int
    b: int

    def __post_init__(self) -> None:
        bad = parameter_violations(self.as_dict())
        if bad:
            raise InvalidParameterSet(bad)

    @classmethod
    def from_table(cls, d, c, x, y, gamma, delta, kv, kr, bv, br) -> "ParameterSet":
        """Build from the ten tabulated numbers, deriving k, v, r, b."""
        return cls(d, c, x, y, gamma, delta, kv, kr, bv, br,
                   k=kv * kr, v=bv * kv, r=kr * br, b=bv * br)

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def key(self) -> tuple[int, ...]:
        return tuple(getattr(self, name) for name in CASE_FIELDS)

    def dual(self) -> "ParameterSet":
        """Swap the roles of classes and class size: (d,c,x,y,gamma,delta) -> (c,d,y,x,delta,gamma)."""
        return ParameterSet(self.c, self.d, self.y, self.x, self.delta, self.gamma,
                            self.kv, self.kr, self.bv, self.br, self.k, self.v, self.r, self.b)

    def label(self) -> str:
        return (f"{self.d}*{self.c} (x,y)=({self.x},{self.y}) "
                f"(gamma,delta)=({self.gamma},{self.delta}) "
                f"k={self.kv}*{self.kr} b={self.bv}*{self.br}")


def case_sort_key(p: ParameterSet) -> tuple[int, ...]:
    """(d, c, x, y) first, then the rest of the tuple as tie-break."""
    return p.key()


# -- intersection types -----------------------------------------------------


class TypeStringError(ValueError):
    def __init__(self, message: str, token: str, position: int):
        super().__init__(f"{message}: {token!r} at position {position}")
        self.token = token
        self.position = position


@dataclass(frozen=True)
class IntersectionType:
    """Multiset {i: d_i}: d_i classes meet a line in exactly i points."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        sizes = [i for i, _ in self.entries]
        if sizes != sorted(set(sizes)):
            raise ValueError(f"intersection sizes must be strictly ascending: {sizes}")
        for i, di in self.entries:
            if i < 1 or di < 1:
                raise ValueError(f"bad entry {i}^{di}")

    @classmethod
    def from_mapping(cls, counts: Mapping[int, int]) -> "IntersectionType":
        return cls(tuple(sorted((i, di) for i, di in counts.items() if di)))

    @classmethod
    def parse(cls, text: str) -> "IntersectionType":
        return cls(tuple(parse_type_string(text)))

    @property
    def spectrum(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def count(self, i: int) -> int:
        for size, di in self.entries:
            if size == i:
                return di
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    @property
    def classes_met(self) -> int:
        return sum(di for _, di in self.entries)

    @property
    def line_size(self) -> int:
        return sum(i * di for i, di in self.entries)

    @property
    def inner_pairs(self) -> int:
        return sum(binom2(i) * di for i, di in self.entries)

    def d0(self, d: int) -> int:
        return d - self.classes_met

    def violations(self, p: ParameterSet) -> list[str]:
        """Definition-level checks against an owning parameter set (class budget excluded)."""
        out = []
        if self.line_size != p.k:
            out.append(f"sum i*d_i = {self.line_size} != k = {p.k}")
        if self.inner_pairs != p.x:
            out.append(f"sum C(i,2)*d_i = {self.inner_pairs} != x = {p.x}")
        bound = min(p.k, p.c)
        too_big = [i for i in self.spectrum if i > bound]
        if too_big:
            out.append(f"sizes {too_big} exceed min(k,c) = {bound}")
        return out

    def sort_key(self) -> tuple[int, ...]:
        """(d_1, d_2, ..., d_max) so types order lexicographically on multiplicities."""
        top = self.spectrum[-1] if self.entries else 0
        counts = self.as_dict()
        return tuple(counts.get(i, 0) for i in range(1, top + 1))

    def __str__(self) -> str:
        return canonical_type_string(self)


def canonical_type_string(t: IntersectionType) -> str:
    return ",".join(str(i) if di == 1 else f"{i}^{di}" for i, di in t.entries)


def parse_type_string(s: str) -> list[tuple[int, int]]:
    """Parse ``entry ("," entry)*`` with ``entry := INT ("^" INT)?``.

    Returns entries sorted by intersection size.
    """
    pos = 0
    n = len(s)
    seen: dict[int, int] = {}

    def read_int() -> int:
        nonlocal pos
        start = pos
        while pos < n and s[pos].isdigit():
            pos += 1
        if start == pos:
            token = s[pos] if pos < n else "<end>"
            raise TypeStringError("expected integer", token, pos)
        return int(s[start:pos])

    if not s:
        raise TypeStringError("empty type string", "", 0)
    while True:
        start = pos
        size = read_int()
        mult = 1
        if pos < n and s[pos] == "^":
            pos += 1
            mult = read_int()
        if size <= 0 or mult <= 0:
            raise TypeStringError("sizes and exponents must be positive", s[start:pos], start)
        if size in seen:
            raise TypeStringError("duplicate intersection size", s[start:pos], start)
        seen[size] = mult
        if pos == n:
            break
        if s[pos] != ",":
            raise TypeStringError("expected ','", s[pos], pos)
        pos += 1
    return sorted(seen.items())


# -- records ----------------------------------------------------------------


@dataclass(frozen=True)
class LineRecord:
    params: ParameterSet
    itype: IntersectionType
    tmax: int
    strict: bool = True


@dataclass(frozen=True)
class CaseRecord:
    params: ParameterSet
    lines: tuple[LineRecord, ...]
    # False when the type search hit its resource guard
    types_complete: bool = True

    def __post_init__(self) -> None:
        if any(line.params != self.params for line in self.lines):
            raise ValueError("all lines of a case must share its parameters")


class Outcome(str, Enum):
    CONTRADICTION = "Contradiction"
    CONSISTENT = "Consistent"
    NOT_APPLICABLE = "NotApplicable"


_RELATIONS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
    "!=": operator.ne,
    "|": lambda a, b: b % a == 0,
    "!|": lambda a, b: b % a != 0,
}


@dataclass(frozen=True)
class Leg:
    """One evaluated inequality or divisibility, kept for replay."""

    label: str
    lhs: int | Fraction
    relation: str
    rhs: int | Fraction
    holds: bool

    @classmethod
    def check(cls, label: str, lhs, relation: str, rhs) -> "Leg":
        return cls(label, lhs, relation, rhs, bool(_RELATIONS[relation](lhs, rhs)))

    def replay(self) -> bool:
        return bool(_RELATIONS[self.relation](self.lhs, self.rhs))

    def as_json(self) -> dict:
        return {"label": self.label, "lhs": str(self.lhs), "relation": self.relation,
                "rhs": str(self.rhs), "holds": self.holds}


@dataclass(frozen=True)
class FilterVerdict:
    rule_name: str
    inputs: Mapping[str, int]
    outcome: Outcome
    trace: tuple[Leg, ...] = ()
    flags: Mapping[str, bool] = field(default_factory=dict)
    reason: str = ""

    def replayable(self) -> bool:
        return all(leg.replay() == leg.holds for leg in self.trace)

    def as_json(self) -> dict:
        return {
            "rule": self.rule_name,
            "inputs": {k: str(v) for k, v in self.inputs.items()},
            "outcome": self.outcome.value,
            "flags": dict(self.flags),
            "reason": self.reason,
            "trace": [leg.as_json() for leg in self.trace],
        }


def key_of(values: Iterable[int]) -> tuple[int, ...]:
    return tuple(values)

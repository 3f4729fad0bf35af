"""Concrete projective planes PG(2, q) as cyclic difference sets.

Planes are built either by a backtracking search (prime q) or from a
Singer cycle of GF(q^3). Cyclic partitions (residues mod m, m | v) are
then measured line by line and every counting identity the sieve relies
on is checked against the real incidence structure.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, TextIO

from .exactmath import binom2, factorize, gcd
from .itypes import per_point_line_counts, tmax
from .model import IntersectionType, ParameterSet, parameter_violations

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)

# monic primitive polynomials over GF(p) for GF(q^3), coefficients low to high
PRIMITIVE_POLYS: dict[int, tuple[int, int, tuple[int, ...]]] = {
    2: (2, 3, (1, 0, 1, 1)),
    3: (3, 3, (1, 0, 2, 1)),
    4: (2, 6, (1, 0, 0, 0, 0, 1, 1)),
    5: (5, 3, (2, 0, 1, 1)),
    7: (7, 3, (2, 1, 1, 1)),
    8: (2, 9, (1, 0, 0, 0, 0, 1, 0, 0, 0, 1)),
    9: (3, 6, (2, 0, 0, 0, 0, 1, 1)),
}


class OracleError(RuntimeError):
    """A construction or verification step failed; always fatal."""


class TrivialPartition(ValueError):
    """m = 1 or m = v: one of c, d would be 1."""


# -- finite field GF(p^n) as polynomials modulo a primitive polynomial --------


@dataclass(frozen=True)
class PrimeField:
    p: int
    n: int
    poly: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p ** self.n

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.n - 1)

    def gen(self) -> tuple[int, ...]:
        return (0, 1) + (0,) * (self.n - 2)

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, n, poly = self.p, self.n, self.poly
        res = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        res[i + j] = (res[i + j] + x * y) % p
        for deg in range(2 * n - 2, n - 1, -1):
            c = res[deg]
            if c:
                for j in range(n + 1):
                    res[deg - n + j] = (res[deg - n + j] - c * poly[j]) % p
        return tuple(res[:n])

    def add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def power(self, a: tuple[int, ...], e: int) -> tuple[int, ...]:
        out, base = self.one(), a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def generator_order_ok(self) -> bool:
        """True iff x has multiplicative order exactly p^n - 1."""
        n_star = self.order - 1
        g = self.gen()
        if self.power(g, n_star) != self.one():
            return False
        return all(self.power(g, n_star // ell) != self.one() for ell in factorize(n_star))


def singer_difference_set(q: int) -> tuple[int, ...]:
    """Exponents j mod q^2+q+1 with Tr_{q^3/q}(g^j) = 0."""
    if q not in PRIMITIVE_POLYS:
        raise OracleError(f"no embedded primitive polynomial for q = {q}")
    p, n, poly = PRIMITIVE_POLYS[q]
    field_ = PrimeField(p, n, poly)
    if not field_.generator_order_ok():
        raise OracleError(f"embedded polynomial for q = {q} is not primitive")
    v = q * q + q + 1
    zero = (0,) * n
    out = []
    z = field_.one()
    g = field_.gen()
    for j in range(v):
        zq = field_.power(z, q)
        zqq = field_.power(zq, q)
        if field_.add(field_.add(z, zq), zqq) == zero:
            out.append(j)
        z = field_.mul(z, g)
    return tuple(out)


def search_difference_set(q: int) -> tuple[int, ...]:
    """Backtracking search for a (q^2+q+1, q+1, 1) difference set containing 0 and 1."""
    v, k = q * q + q + 1, q + 1
    used = [False] * v
    chosen = [0, 1]
    used[1] = used[v - 1] = True

    def extend(start: int) -> bool:
        if len(chosen) == k:
            return True
        for cand in range(start, v):
            diffs = []
            ok = True
            for e in chosen:
                for dlt in ((cand - e) % v, (e - cand) % v):
                    if used[dlt] or dlt in diffs:
                        ok = False
                        break
                    diffs.append(dlt)
                if not ok:
                    break
            if not ok:
                continue
            for dlt in diffs:
                used[dlt] = True
            chosen.append(cand)
            if extend(cand + 1):
                return True
            chosen.pop()
            for dlt in diffs:
                used[dlt] = False
        return False

    if not extend(2):
        raise OracleError(f"no difference set found for q = {q}")
    return tuple(chosen)


def canonical_translate(D: Iterable[int], v: int) -> tuple[int, ...]:
    """Lexicographically least translate of D that contains 0."""
    D = list(D)
    return min(tuple(sorted((x - t) % v for x in D)) for t in D)


def equivalent(D1: Iterable[int], D2: Iterable[int], v: int) -> bool:
    """True iff D2 = u*D1 + t for some unit u and shift t mod v."""
    target = canonical_translate(D2, v)
    D1 = list(D1)
    return any(canonical_translate([(u * x) % v for x in D1], v) == target
               for u in range(1, v) if gcd(u, v) == 1)


@dataclass(frozen=True)
class PlaneModel:
    q: int
    v: int
    D: tuple[int, ...]
    method: str

    @property
    def k(self) -> int:
        return self.q + 1

    def lines(self) -> list[tuple[int, ...]]:
        return [tuple(sorted((x + t) % self.v for x in self.D)) for t in range(self.v)]


def is_perfect_difference_set(D: Iterable[int], v: int) -> bool:
    D = list(D)
    seen = Counter((a - b) % v for a in D for b in D if a != b)
    return len(seen) == v - 1 and all(c == 1 for c in seen.values())


def check_linear_space(plane: PlaneModel) -> bool:
    """Every pair of distinct points on exactly one line (exhaustive)."""
    covered = Counter()
    for line in plane.lines():
        covered.update(combinations(line, 2))
    return len(covered) == binom2(plane.v) and all(c == 1 for c in covered.values())


def build_plane(q: int, method: str | None = None) -> PlaneModel:
    """PG(2, q) for q in {2, 3, 4, 5, 7, 8, 9}.

    ``method`` is ``"search"`` (prime q only) or ``"singer"``; by default prime
    q uses the search and prime powers use the Singer construction.
    """
    if q not in SUPPORTED_Q:
        raise OracleError(f"unsupported q = {q}; supported: {SUPPORTED_Q}")
    prime = len(factorize(q)) == 1 and list(factorize(q).values()) == [1]
    method = method or ("search" if prime else "singer")
    if method == "search":
        if not prime:
            raise OracleError(f"search construction only handles prime q, got {q}")
        D = search_difference_set(q)
    elif method == "singer":
        D = singer_difference_set(q)
    else:
        raise ValueError(f"unknown method {method!r}")
    v = q * q + q + 1
    if len(D) != q + 1 or not is_perfect_difference_set(D, v):
        raise OracleError(f"{method} construction for q = {q} is not a perfect difference set")
    plane = PlaneModel(q, v, canonical_translate(D, v), method)
    if not check_linear_space(plane):
        raise OracleError(f"PG(2, {q}) fails the linear-space axiom")
    return plane


def dump_plane(plane: PlaneModel, fh: TextIO) -> None:
    """Header ``q v`` then one line per geometric line, points space separated."""
    fh.write(f"{plane.q} {plane.v}\n")
    for line in plane.lines():
        fh.write(" ".join(map(str, line)) + "\n")


# -- partitions and measurement ----------------------------------------------


@dataclass(frozen=True)
class CyclicPartition:
    modulus: int
    v: int

    def __post_init__(self) -> None:
        if self.modulus < 1 or self.v % self.modulus:
            raise ValueError(f"modulus {self.modulus} does not divide v = {self.v}")

    @property
    def d(self) -> int:
        return self.modulus

    @property
    def c(self) -> int:
        return self.v // self.modulus

    def class_of(self, point: int) -> int:
        return point % self.modulus


@dataclass
class Measurement:
    plane: PlaneModel
    partition: CyclicPartition
    params: ParameterSet
    itype: IntersectionType
    tmax: int


def _line_type(line: Iterable[int], part: CyclicPartition) -> IntersectionType:
    sizes = Counter(part.class_of(p) for p in line)
    return IntersectionType.from_mapping(Counter(sizes.values()))


def measure(plane: PlaneModel, part: CyclicPartition) -> Measurement:
    if part.v != plane.v:
        raise ValueError("partition and plane disagree on v")
    if part.modulus in (1, plane.v):
        raise TrivialPartition(f"modulus {part.modulus} gives c = {part.c}, d = {part.d}")
    types = {_line_type(line, part) for line in plane.lines()}
    if len(types) != 1:
        raise OracleError(f"intersection type varies across lines: {sorted(map(str, types))}")
    itype = types.pop()
    k, v, b = plane.k, plane.v, plane.v
    r = sum(1 for line in plane.lines() if 0 in line)
    x = itype.inner_pairs
    c, d = part.c, part.d
    y = binom2(k) - d * x
    kv, kr, bv, br = gcd(k, v), gcd(k, r), gcd(b, v), gcd(b, r)
    if (c - 1) % br or (d - 1) % br:
        raise OracleError(f"br = {br} does not divide c - 1 and d - 1")
    fields14 = dict(d=d, c=c, x=x, y=y, gamma=(c - 1) // br, delta=(d - 1) // br,
                    kv=kv, kr=kr, bv=bv, br=br, k=k, v=v, r=r, b=b)
    bad = parameter_violations(fields14)
    if bad:
        raise OracleError("measured parameters violate the model: " + "; ".join(bad))
    params = ParameterSet(**fields14)
    return Measurement(plane, part, params, itype, tmax(d, b, itype))


@dataclass
class IdentityReport:
    status: str  # "Verified" or "NotApplicable"
    checks: list[tuple[str, int, int]] = field(default_factory=list)
    measurement: Measurement | None = None
    reason: str = ""


def verify_identities(plane: PlaneModel, part: CyclicPartition) -> IdentityReport:
    """Compare every derived counting identity with direct counts; failures raise."""
    try:
        m = measure(plane, part)
    except TrivialPartition as exc:
        return IdentityReport("NotApplicable", reason=str(exc))
    p, t = m.params, m.itype
    lines = plane.lines()
    inner_total = sum(binom2(n) for line in lines
                      for n in Counter(part.class_of(x) for x in line).values())
    checks: list[tuple[str, int, int]] = [
        ("b*x = d*C(c,2) (direct count of inner pairs)", inner_total, p.d * binom2(p.c)),
        ("b*x = d*C(c,2) (formula)", p.b * p.x, p.d * binom2(p.c)),
        ("r(k-1) = v-1", p.r * (p.k - 1), p.v - 1),
        ("gamma*delta*br + gamma + delta = kr(k-1)",
         p.gamma * p.delta * p.br + p.gamma + p.delta, p.kr * (p.k - 1)),
        ("2x = kv*gamma", 2 * p.x, p.kv * p.gamma),
        ("2y = kv*delta", 2 * p.y, p.kv * p.delta),
    ]
    # r_i counted at every point against i*b*d_i/v
    predicted = dict(per_point_line_counts(p, t))
    for point in range(plane.v):
        cls = part.class_of(point)
        seen = Counter()
        for line in lines:
            if point in line:
                seen[sum(1 for x in line if part.class_of(x) == cls)] += 1
        for i, ri in predicted.items():
            if ri.denominator != 1 or seen[i] != ri:
                checks.append((f"r_{i} at point {point}", seen[i], int(ri)))
        if set(seen) - set(predicted):
            checks.append((f"unexpected sizes at point {point}", len(set(seen) - set(predicted)), 0))
    for i, ri in predicted.items():
        checks.append((f"v*r_{i} = i*b*d_i", p.v * ri.numerator // ri.denominator, i * p.b * t.count(i)))
    failed = [c for c in checks if c[1] != c[2]]
    if failed:
        raise OracleError("identity failures: " + "; ".join(f"{n}: {a} != {b}" for n, a, b in failed))
    return IdentityReport("Verified", checks, m)

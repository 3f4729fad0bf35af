"""Arithmetic legs of the elimination arguments, as traced predicates.

Filters never delete a case; they return a :class:`FilterVerdict` whose
trace can be replayed leg by leg.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .exactmath import is_prime, is_prime_power, strict_gt_sqrt
from .model import FilterVerdict, IntersectionType, Leg, Outcome, ParameterSet

Source = Literal["Top", "Bottom", "Order"]
_SOURCE_ALIASES = {"T": "Top", "B": "Bottom", "O": "Order"}


@dataclass(frozen=True)
class PrimeWitness:
    """A prime known to divide a group order: top group, bottom group, or |G| itself."""

    p: int
    source: Source = "Order"

    def __post_init__(self) -> None:
        src = _SOURCE_ALIASES.get(self.source, self.source)
        if src not in ("Top", "Bottom", "Order"):
            raise ValueError(f"unknown witness source {self.source!r}")
        object.__setattr__(self, "source", src)
        if not is_prime(self.p):
            raise ValueError(f"witness {self.p} is not prime")


@dataclass(frozen=True)
class FixedPointBudget:
    p: int
    k1: int
    bound: int

    def __post_init__(self) -> None:
        if not 0 <= self.k1 < self.p:
            raise ValueError("k1 must be a residue mod p")


def _verdict(rule: str, inputs: dict, legs: list[Leg], outcome: Outcome,
             reason: str = "", flags: dict | None = None) -> FilterVerdict:
    return FilterVerdict(rule, inputs, outcome, tuple(legs), flags or {}, reason)


def prime_order_filter(ps: ParameterSet, w: PrimeWitness) -> FilterVerdict:
    """A prime p > k dividing |G| with k^2 - k + 1 > r must divide v or v - 1."""
    legs = [
        Leg.check("p > k", w.p, ">", ps.k),
        Leg.check("k^2 - k + 1 > r", ps.k * ps.k - ps.k + 1, ">", ps.r),
        Leg.check("p does not divide v", w.p, "!|", ps.v),
        Leg.check("p does not divide v - 1", w.p, "!|", ps.v - 1),
    ]
    inputs = {"p": w.p, "k": ps.k, "r": ps.r, "v": ps.v}
    failed = [leg.label for leg in legs if not leg.holds]
    if failed:
        return _verdict("prime_order", inputs, legs, Outcome.NOT_APPLICABLE,
                        "fails: " + ", ".join(failed))
    return _verdict("prime_order", inputs, legs, Outcome.CONTRADICTION,
                    f"p = {w.p} divides neither v nor v - 1")


# interface name kept for callers that use it
lemma31_prime_filter = prime_order_filter


def fixed_point_budget(ps: ParameterSet, p: int) -> FixedPointBudget:
    return FixedPointBudget(p, ps.k % p, ps.k + ps.r - p - 1)


def sylow_fixline_filter(ps: ParameterSet, p: int, nondivides_reading: bool = True) -> FilterVerdict:
    """A Sylow p-subgroup with p not dividing b fixes a line; its fixed points form a
    subspace on at most k + r - p - 1 points with lines of size >= k mod p.

    ``nondivides_reading`` selects the reading "p does not divide v - k" of the
    off-line fixed point condition; ``False`` uses the literal "(v - k) does not divide p".
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    fb = fixed_point_budget(ps, p)
    legs = [
        Leg.check("p does not divide b", p, "!|", ps.b),
        Leg.check("k1 = k mod p >= 3", fb.k1, ">=", 3),
        (Leg.check("p does not divide v - k", p, "!|", ps.v - ps.k) if nondivides_reading
         else Leg.check("v - k does not divide p", ps.v - ps.k, "!|", p)),
    ]
    inputs = {"p": p, "k1": fb.k1, "bound": fb.bound,
              "fix_bound": max(fb.bound, ps.r), "k": ps.k, "r": ps.r, "v": ps.v, "b": ps.b}
    failed = [leg.label for leg in legs if not leg.holds]
    if failed:
        return _verdict("sylow_fixline", inputs, legs, Outcome.NOT_APPLICABLE,
                        "fails: " + ", ".join(failed))
    final = Leg.check("k1(k1 - 1) > k + r - p - 1", fb.k1 * (fb.k1 - 1), ">", fb.bound)
    legs.append(final)
    if final.holds:
        return _verdict("sylow_fixline", inputs, legs, Outcome.CONTRADICTION,
                        "fixed subspace too small for its lines")
    return _verdict("sylow_fixline", inputs, legs, Outcome.CONSISTENT,
                    "fixed subspace bound satisfied")


def semiregular_threshold(ps: ParameterSet) -> FilterVerdict:
    """Flags: kernel forced semiregular (k > 2x + 3/2 + sqrt(4x - 7/4)),
    the small-x trigger x <= 8, and whether c is an odd prime power."""
    lhs = Fraction(ps.k) - 2 * ps.x - Fraction(3, 2)
    radicand = Fraction(4 * ps.x) - Fraction(7, 4)
    legs = [
        Leg.check("k - 2x - 3/2 > 0", lhs, ">", 0),
        Leg.check("(k - 2x - 3/2)^2 > 4x - 7/4", lhs * lhs, ">", radicand),
        Leg.check("x <= 8", ps.x, "<=", 8),
        Leg.check("c is odd", ps.c % 2, "==", 1),
        Leg.check("c is a prime power", int(is_prime_power(ps.c)), "==", 1),
    ]
    flags = {
        "semiregular_forced": strict_gt_sqrt(lhs, radicand),
        "x_le_8": legs[2].holds,
        "c_odd_prime_power": legs[3].holds and legs[4].holds,
    }
    return _verdict("semiregular_threshold", {"k": ps.k, "x": ps.x, "c": ps.c}, legs,
                    Outcome.CONSISTENT, flags=flags)


def fix_bound_filter(ps: ParameterSet, t: IntersectionType) -> FilterVerdict:
    """Contradiction iff 1 + (r/k) d_1 (d_1 - 1) > d."""
    d1 = t.count(1)
    lhs = 1 + Fraction(ps.r, ps.k) * d1 * (d1 - 1)
    leg = Leg.check("1 + (r/k) d1 (d1 - 1) > d", lhs, ">", ps.d)
    outcome = Outcome.CONTRADICTION if leg.holds else Outcome.CONSISTENT
    return _verdict("fix_bound", {"d1": d1, "r": ps.r, "k": ps.k, "d": ps.d}, [leg], outcome)


def d1_bound_filter(ps: ParameterSet, t: IntersectionType) -> FilterVerdict:
    """Contradiction iff d_1 >= 1 and d_1 > 1/2 + sqrt(2k - 7/4), i.e. (2 d_1 - 1)^2 > 8k - 7."""
    d1 = t.count(1)
    legs = [Leg.check("d1 >= 1", d1, ">=", 1),
            Leg.check("(2 d1 - 1)^2 > 8k - 7", (2 * d1 - 1) ** 2, ">", 8 * ps.k - 7)]
    outcome = Outcome.CONTRADICTION if all(leg.holds for leg in legs) else Outcome.CONSISTENT
    return _verdict("d1_bound", {"d1": d1, "k": ps.k}, legs, outcome)


def fixed_class_congruence(t: IntersectionType, p: int) -> int:
    """Sum of d_i mod p: classes a line-fixing p-element must fix setwise."""
    if p < 2:
        raise ValueError("p must be >= 2")
    return sum(di % p for _, di in t.entries)


def fixed_class_filter(t: IntersectionType, p: int, capacity: int) -> FilterVerdict:
    """Contradiction iff the forced number of fixed classes exceeds ``capacity``."""
    need = fixed_class_congruence(t, p)
    leg = Leg.check("sum (d_i mod p) > capacity", need, ">", capacity)
    outcome = Outcome.CONTRADICTION if leg.holds else Outcome.CONSISTENT
    return _verdict("fixed_class_congruence", {"p": p, "capacity": capacity, "forced": need},
                    [leg], outcome)


def rank_flags(ps: ParameterSet) -> FilterVerdict:
    """2-transitivity consequences of small gamma, delta."""
    br_odd = Leg.check("br is odd", ps.br % 2, "==", 1)
    c_pp = Leg.check("c is a prime power", int(is_prime_power(ps.c)), "==", 1)
    d_pp = Leg.check("d is a prime power", int(is_prime_power(ps.d)), "==", 1)
    legs = [
        Leg.check("delta == 1", ps.delta, "==", 1),
        Leg.check("gamma == 1", ps.gamma, "==", 1),
        Leg.check("gamma == 2", ps.gamma, "==", 2),
        Leg.check("delta == 2", ps.delta, "==", 2),
        br_odd, c_pp, d_pp,
    ]
    flags = {
        "top_2transitive_forced": legs[0].holds,
        "bottom_2transitive_forced": legs[1].holds or (legs[2].holds and br_odd.holds
                                                       and not c_pp.holds),
        "top_2transitive_excluded": legs[3].holds and br_odd.holds and d_pp.holds,
    }
    return _verdict("rank_flags", {"gamma": ps.gamma, "delta": ps.delta, "br": ps.br,
                                   "c": ps.c, "d": ps.d}, legs, Outcome.CONSISTENT, flags=flags)


def tmax_vs_transitivity(ps: ParameterSet, tmaxes: list[int], t: int) -> FilterVerdict:
    """A t-transitive top group needs some type with t_max >= t."""
    best = max(tmaxes) if tmaxes else 0
    leg = Leg.check("max t_max < t", best, "<", t)
    outcome = Outcome.CONTRADICTION if leg.holds else Outcome.CONSISTENT
    return _verdict("tmax_vs_transitivity", {"t": t, "max_tmax": best, "d": ps.d}, [leg], outcome)

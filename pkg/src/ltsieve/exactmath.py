"""Exact integer and rational helpers.

Everything downstream works on Python ints (unbounded) and
:class:`fractions.Fraction`; no float ever enters a comparison.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

ExactRatio = Fraction
Rational = Union[int, Fraction]


def gcd(a: int, b: int) -> int:
    """Nonnegative gcd, with gcd(0, 0) == 0."""
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // math.gcd(a, b)


def binom2(n: int) -> int:
    """n choose 2."""
    if n < 0:
        raise ValueError(f"binom2 needs n >= 0, got {n}")
    return n * (n - 1) // 2


def falling(n: int, h: int) -> int:
    """n (n-1) ... (n-h+1); the empty product is 1."""
    out = 1
    for j in range(h):
        out *= n - j
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in ascending order (trial division)."""
    if n <= 0:
        raise ValueError(f"divisors needs n >= 1, got {n}")
    small: list[int] = []
    large: list[int] = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division. Fine up to ~10^14."""
    if n <= 0:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % p == 0:
            return False
        p += 2
    return True


def is_prime_power(n: int) -> bool:
    """True for p^e with e >= 1."""
    return n >= 2 and len(factorize(n)) == 1


def as_ratio(value: Rational) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def strict_gt_sqrt(lhs: Rational, radicand: Rational) -> bool:
    """Decide ``lhs > sqrt(radicand)`` exactly.

    A negative radicand counts as below every positive ``lhs``; a
    nonpositive ``lhs`` is never strictly greater.
    """
    lhs = as_ratio(lhs)
    radicand = as_ratio(radicand)
    if lhs <= 0:
        return False
    if radicand < 0:
        return True
    return lhs * lhs > radicand

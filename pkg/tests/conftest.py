"""Shared oracles for the test suite.

Everything here is deliberately naive: brute-force enumeration, unreduced
pair arithmetic, plain relaxation loops.  The oracles never share code
with the implementation paths they check.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
import pytest

from ratpath.rational import BigRational


class UnreducedPair:
    """Second opinion on rational arithmetic: plain (num, den) pairs that
    are never reduced; equality is by cross-multiplication."""

    def __init__(self, num: int, den: int):
        if den == 0:
            raise ZeroDivisionError
        self.num = num
        self.den = den

    def add(self, o):
        return UnreducedPair(self.num * o.den + o.num * self.den, self.den * o.den)

    def sub(self, o):
        return UnreducedPair(self.num * o.den - o.num * self.den, self.den * o.den)

    def mul(self, o):
        return UnreducedPair(self.num * o.num, self.den * o.den)

    def div(self, o):
        if o.num == 0:
            raise ZeroDivisionError
        return UnreducedPair(self.num * o.den, self.den * o.num)

    def equals(self, x: BigRational) -> bool:
        return self.num * x.den == x.num * self.den


@lru_cache(maxsize=16)
def all_fractions(bits: int, span: int) -> Tuple[Tuple[int, int], ...]:
    """Every reduced fraction with 0 < den < 2^bits and |value| <= span,
    sorted by value.  Used as the brute-force approximation universe."""
    import math

    out = []
    for q in range(1, 1 << bits):
        for p in range(-span * q, span * q + 1):
            if math.gcd(abs(p), q) == 1:
                out.append((p / q, p, q))
    out.sort()
    return tuple((p, q) for _, p, q in out)


def brute_best_approx(x: BigRational, bits: int, span: int = 70):
    """Brute-force (lo, hi) pair over the full fraction universe."""
    fracs = all_fractions(bits, span)
    lo = None
    hi = None
    for p, q in fracs:
        c = p * x.den - x.num * q  # sign of p/q - x
        if c <= 0:
            if lo is None or p * lo[1] > lo[0] * q:
                lo = (p, q)
        if c >= 0:
            if hi is None or p * hi[1] < hi[0] * q:
                hi = (p, q)
    assert lo is not None and hi is not None
    return BigRational(*lo), BigRational(*hi)


def random_rational(rng: np.random.Generator, max_num: int = 64, max_den: int = 64) -> BigRational:
    num = int(rng.integers(-max_num, max_num + 1))
    den = int(rng.integers(1, max_den + 1))
    return BigRational(num, den)


def bf_oracle_int(n: int, edges, s: int) -> Tuple[List[Optional[int]], bool]:
    """Plain |V|-round relaxation on integer weights; returns (dist, has_cycle)."""
    dist: List[Optional[int]] = [None] * n
    dist[s] = 0
    for _ in range(n - 1):
        for (u, v, w) in edges:
            if dist[u] is not None and (dist[v] is None or dist[u] + w < dist[v]):
                dist[v] = dist[u] + w
    for (u, v, w) in edges:
        if dist[u] is not None and (dist[v] is None or dist[u] + w < dist[v]):
            return dist, True
    return dist, False


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

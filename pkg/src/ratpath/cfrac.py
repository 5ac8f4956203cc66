"""Continued fractions and best b-bit rational approximations.

The best b-bit rational approximation of a value x is the pair (lo, hi) of
fractions with denominators below 2^b that bracket x as tightly as
possible: no fraction with denominator below 2^b lies strictly between
them.  Given such a pair, comparing x against any fraction with a small
denominator reduces to two exact comparisons against lo and hi, no matter
how many bits x itself needs.

Pairs are canonicalized: when x itself has a denominator below 2^b the
pair collapses to (x, x), which makes `compare_via_approx` total and
deterministic.
"""

from __future__ import annotations

import enum
from typing import Iterator, Sequence, Tuple

from .rational import BigRational

__all__ = [
    "Ordering",
    "ContinuedFraction",
    "ApproxPair",
    "continued_fraction",
    "convergent",
    "best_approx",
    "best_approx_shift",
    "compare_via_approx",
]


class Ordering(enum.Enum):
    """Three-way comparison outcome."""

    LESS = -1
    EQUAL = 0
    GREATER = 1

    @staticmethod
    def of(c: int) -> "Ordering":
        return Ordering.LESS if c < 0 else (Ordering.GREATER if c > 0 else Ordering.EQUAL)


class ContinuedFraction:
    """Canonical quotient sequence [a0; a1, ..., aN] of a rational.

    a0 may be any integer, the remaining quotients are positive, and the
    last quotient is at least 2 unless the sequence has length one.
    """

    __slots__ = ("quotients",)

    def __init__(self, quotients: Sequence[int]):
        qs = tuple(int(a) for a in quotients)
        if not qs:
            raise ValueError("empty quotient sequence")
        if any(a < 1 for a in qs[1:]):
            raise ValueError("interior quotients must be positive")
        if len(qs) > 1 and qs[-1] < 2:
            raise ValueError("canonical form requires a final quotient >= 2")
        object.__setattr__(self, "quotients", qs)

    def __setattr__(self, name, value):
        raise AttributeError("ContinuedFraction is immutable")

    def __len__(self):
        return len(self.quotients)

    def __iter__(self) -> Iterator[int]:
        return iter(self.quotients)

    def __eq__(self, other):
        return isinstance(other, ContinuedFraction) and other.quotients == self.quotients

    def __hash__(self):
        return hash(self.quotients)

    def __repr__(self):
        return f"ContinuedFraction({list(self.quotients)!r})"

    def evaluate(self) -> BigRational:
        """Evaluate back to the source rational (exact)."""
        p, q = _prefix_product(self.quotients, len(self.quotients) - 1)[:2]
        return BigRational(p, q)


def continued_fraction(x: BigRational) -> ContinuedFraction:
    """Quotient sequence produced by the Euclidean algorithm on num/den."""
    n, d = x.num, x.den
    qs = []
    while d:
        a, r = divmod(n, d)
        qs.append(a)
        n, d = d, r
    return ContinuedFraction(qs)


def _prefix_product(qs: Sequence[int], i: int) -> Tuple[int, int, int, int]:
    """(p_i, q_i, p_{i-1}, q_{i-1}) via a balanced 2x2 matrix product.

    Pairing adjacent partial products keeps the cost near-linear in the
    total quotient bit length instead of quadratic.
    """
    mats = [(a, 1, 1, 0) for a in qs[: i + 1]]
    while len(mats) > 1:
        nxt = []
        for j in range(0, len(mats) - 1, 2):
            a, b, c, d = mats[j]
            e, f, g, h = mats[j + 1]
            nxt.append((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))
        if len(mats) % 2:
            nxt.append(mats[-1])
        mats = nxt
    p_i, p_prev, q_i, q_prev = mats[0]
    return p_i, q_i, p_prev, q_prev


def convergent(cf: ContinuedFraction, i: int) -> Tuple[int, int]:
    """The i-th convergent (p_i, q_i), already in reduced form."""
    if not 0 <= i < len(cf.quotients):
        raise IndexError(f"convergent index {i} out of range")
    p, q, _, _ = _prefix_product(cf.quotients, i)
    return p, q


class ApproxPair:
    """Best b-bit rational approximation: lo <= x <= hi, nothing between."""

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo: BigRational, hi: BigRational, bits: int):
        if bits < 1:
            raise ValueError("bit budget must be positive")
        if lo > hi:
            raise ValueError("lo must not exceed hi")
        bound = 1 << bits
        if lo.den >= bound or hi.den >= bound:
            raise ValueError("approximation denominators exceed the bit budget")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("ApproxPair is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, ApproxPair)
            and other.lo == self.lo
            and other.hi == self.hi
            and other.bits == self.bits
        )

    def __hash__(self):
        return hash((self.lo, self.hi, self.bits))

    def __repr__(self):
        return f"ApproxPair({self.lo}, {self.hi}, bits={self.bits})"

    def negated(self) -> "ApproxPair":
        return ApproxPair(-self.hi, -self.lo, self.bits)


def best_approx(x: BigRational, b: int) -> ApproxPair:
    """Best b-bit rational approximation of x.

    Found by binary-searching the largest convergent index with denominator
    below 2^b and forming the extreme semiconvergent that still fits; the
    convergent and the semiconvergent bracket x from opposite sides.
    """
    if b < 1:
        raise ValueError("bit budget must be positive")
    bound = 1 << b
    if x.den < bound:
        return ApproxPair(x, x, b)

    qs = continued_fraction(x).quotients
    last = len(qs) - 1
    # Largest index l with q_l < 2^b; q_last = x.den >= bound, q_0 = 1 < bound.
    lo_i, hi_i = 0, last - 1
    while lo_i < hi_i:
        mid = (lo_i + hi_i + 1) // 2
        _, q_mid, _, _ = _prefix_product(qs, mid)
        if q_mid < bound:
            lo_i = mid
        else:
            hi_i = mid - 1
    p_l, q_l, p_prev, q_prev = _prefix_product(qs, lo_i)
    t = (bound - 1 - q_prev) // q_l
    semi_p = t * p_l + p_prev
    semi_q = t * q_l + q_prev
    conv = BigRational(p_l, q_l)
    semi = BigRational(semi_p, semi_q)
    if conv <= semi:
        return ApproxPair(conv, semi, b)
    return ApproxPair(semi, conv, b)


def best_approx_shift(ap: ApproxPair, offset: BigRational, reduce_bits: int) -> ApproxPair:
    """Approximation of x + offset at (bits - reduce_bits) bits.

    Requires the offset denominator at most 2^reduce_bits (a fraction y/z
    at the reduced budget then satisfies z * offset.den < 2^bits, which is
    all the correctness argument needs) and reduce_bits < ap.bits.  The
    result equals best_approx(x + offset, bits - reduce_bits) for every x
    consistent with ap: take the largest fraction at the reduced budget
    not above lo + offset and the smallest not below hi + offset.
    """
    if reduce_bits < 1 or reduce_bits >= ap.bits:
        raise ValueError("reduce_bits must satisfy 1 <= reduce_bits < ap.bits")
    if offset.den > (1 << reduce_bits):
        raise ValueError("offset denominator exceeds 2^reduce_bits")
    out_bits = ap.bits - reduce_bits
    lo = best_approx(ap.lo + offset, out_bits).lo
    hi = best_approx(ap.hi + offset, out_bits).hi
    return ApproxPair(lo, hi, out_bits)


def compare_via_approx(ap: ApproxPair, beta: BigRational) -> Ordering:
    """Order the approximated value against beta (denominator below 2^bits).

    Correct for canonicalized pairs: when lo < hi the approximated value is
    strictly inside the bracket, so beta hitting an endpoint resolves the
    comparison.
    """
    if beta.den >= (1 << ap.bits):
        raise ValueError("comparison denominator exceeds the approximation budget")
    if beta < ap.lo:
        return Ordering.GREATER
    if beta > ap.hi:
        return Ordering.LESS
    if ap.lo == ap.hi:
        return Ordering.EQUAL
    if beta == ap.lo:
        return Ordering.GREATER
    if beta == ap.hi:
        return Ordering.LESS
    raise AssertionError("a fraction below the budget lies strictly inside the bracket")

"""Exact arbitrary-precision rational arithmetic.

Values are kept in canonical reduced form at all times: positive
denominator, gcd(|numerator|, denominator) == 1, and zero stored as 0/1.
Everything here is immutable, so values can be shared freely between
threads.

The module also provides the word-budget bookkeeping used throughout the
package: a rational is *k-short* under a budget of B bits per word when
both |numerator| and denominator fit strictly below 2^(k*B - 1).  Adding,
subtracting, multiplying or dividing a j-short and a k-short value always
yields a (j+k)-short value, which is what lets the solvers budget the bit
growth of intermediate results.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

try:
    import gmpy2 as _gmpy2
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _gmpy2 = None

__all__ = [
    "BigRational",
    "WordBudget",
    "arith",
    "is_k_short",
    "sum_balanced",
    "truncate_binary",
]

# Above this operand size (bits) gcd is delegated to GMP, whose
# subquadratic algorithm keeps canonical reduction near-linear.
SUBQUADRATIC_GCD_BITS = 1 << 14

_PARSE_RE = re.compile(r"\A([+-]?\d+)(?:/(\d+))?\Z")


def _gcd(a: int, b: int) -> int:
    if _gmpy2 is not None and (
        a.bit_length() > SUBQUADRATIC_GCD_BITS or b.bit_length() > SUBQUADRATIC_GCD_BITS
    ):
        return int(_gmpy2.gcd(a, b))
    return math.gcd(a, b)


class BigRational:
    """A signed rational with arbitrary-precision numerator and denominator.

    ``BigRational(n)`` is n/1; ``BigRational(n, d)`` reduces n/d.  The
    denominator is always positive after construction.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("rational with zero denominator")
        if den < 0:
            num, den = -num, -den
        if num == 0:
            den = 1
        else:
            g = _gcd(num if num >= 0 else -num, den)
            if g > 1:
                num //= g
                den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("BigRational is immutable")

    @classmethod
    def _raw(cls, num: int, den: int) -> "BigRational":
        # Internal fast path: caller guarantees canonical form.
        x = object.__new__(cls)
        object.__setattr__(x, "num", num)
        object.__setattr__(x, "den", den)
        return x

    @classmethod
    def parse(cls, text: str) -> "BigRational":
        """Parse "num/den" or "num"; unreduced input is canonicalized."""
        m = _PARSE_RE.match(text.strip())
        if not m:
            raise ValueError(f"malformed rational: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        return cls(num, den)

    # -- arithmetic -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return BigRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return BigRational(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return BigRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num == 0:
            raise ZeroDivisionError("rational division by zero")
        return BigRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return BigRational._raw(-self.num, self.den)

    def __abs__(self):
        return self if self.num >= 0 else BigRational._raw(-self.num, self.den)

    # -- comparisons ------------------------------------------------

    def _cmp(self, other: "BigRational") -> int:
        lhs = self.num * other.den
        rhs = other.num * self.den
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return self.num != 0

    # -- misc -------------------------------------------------------

    @property
    def sign(self) -> int:
        return (self.num > 0) - (self.num < 0)

    def is_integer(self) -> bool:
        return self.den == 1

    def floor(self) -> int:
        return self.num // self.den

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"BigRational({self.num}, {self.den})"

    def to_decimal(self, digits: int) -> str:
        """Exact truncated decimal expansion with `digits` fractional digits."""
        neg = self.num < 0
        n = -self.num if neg else self.num
        whole, rem = divmod(n, self.den)
        frac = (rem * 10**digits) // self.den
        body = f"{whole}.{frac:0{digits}d}" if digits > 0 else str(whole)
        return "-" + body if neg else body


ZERO = BigRational._raw(0, 1)
ONE = BigRational._raw(1, 1)


def _coerce(x):
    if isinstance(x, BigRational):
        return x
    if isinstance(x, int):
        return BigRational._raw(x, 1)
    return NotImplemented


class WordBudget:
    """Bit width of one machine word for shortness accounting.

    This is a configuration value (default 64), not a hardware property;
    shortness classes are measured against it.
    """

    __slots__ = ("B",)

    def __init__(self, B: int = 64):
        if B < 2:
            raise ValueError("word budget must be at least 2 bits")
        object.__setattr__(self, "B", B)

    def __setattr__(self, name, value):
        raise AttributeError("WordBudget is immutable")

    def __eq__(self, other):
        return isinstance(other, WordBudget) and other.B == self.B

    def __hash__(self):
        return hash(("WordBudget", self.B))

    def __repr__(self):
        return f"WordBudget({self.B})"


DEFAULT_BUDGET = WordBudget(64)

_OPS = {
    "add": BigRational.__add__,
    "sub": BigRational.__sub__,
    "mul": BigRational.__mul__,
    "div": BigRational.__truediv__,
}


def arith(a: BigRational, b: BigRational, op: str) -> BigRational:
    """Apply one of {add, sub, mul, div} exactly.

    The result of combining a j-short and a k-short operand is (j+k)-short
    under the same budget.  Division by zero raises ZeroDivisionError.
    """
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(a, b)


def is_k_short(x: BigRational, k: int, budget: WordBudget = DEFAULT_BUDGET) -> bool:
    """True iff |numerator| and denominator both fit below 2^(k*B - 1)."""
    if k < 1:
        raise ValueError("shortness class must be positive")
    bound = 1 << (k * budget.B - 1)
    n = x.num if x.num >= 0 else -x.num
    return n < bound and x.den < bound


def sum_balanced(xs: Iterable[BigRational]) -> BigRational:
    """Exact sum, pairing adjacent partial sums in a balanced binary tree.

    Balanced pairing keeps intermediate bit lengths near-linear in the total
    input bit length; a left-to-right fold can hit quadratic blowup.
    """
    layer: Sequence[BigRational] = list(xs)
    if not layer:
        return ZERO
    while len(layer) > 1:
        nxt = []
        it = iter(range(0, len(layer) - 1, 2))
        for i in it:
            nxt.append(layer[i] + layer[i + 1])
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def truncate_binary(q: BigRational, j: int) -> BigRational:
    """Zero out the fractional bits of q beyond position j (toward zero).

    The result r has denominator dividing 2^j and satisfies
    q - 2^-j <= r <= q for q >= 0, and q <= r <= q + 2^-j for q < 0.
    """
    if j < 0:
        raise ValueError("bit position must be non-negative")
    neg = q.num < 0
    n = -q.num if neg else q.num
    scaled = (n << j) // q.den
    r = BigRational(scaled, 1 << j)
    return -r if neg else r

"""Directed-rounding real intervals on top of gmpy2/MPFR.

Every quantity that feeds a soundness-critical comparison is carried as a
closed interval [lo, hi] whose endpoints are computed with MPFR round-down /
round-up at 200-bit precision.  MPFR guarantees correct rounding for the
transcendental functions used here, so the true real value always lies inside
the interval.  Only non-negative quantities occur in the bound computations,
which keeps the multiplication and division rules simple; the assertions
enforce that.
"""

from __future__ import annotations

import gmpy2
from gmpy2 import mpfr

PRECISION = 200

_DN = gmpy2.context(precision=PRECISION, round=gmpy2.RoundDown)
_UP = gmpy2.context(precision=PRECISION, round=gmpy2.RoundUp)


class Iv:
    """Closed real interval; arithmetic widens outward, never inward."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        self.lo = lo
        self.hi = hi

    def __add__(self, other: "Iv") -> "Iv":
        return Iv(_DN.add(self.lo, other.lo), _UP.add(self.hi, other.hi))

    def __sub__(self, other: "Iv") -> "Iv":
        return Iv(_DN.sub(self.lo, other.hi), _UP.sub(self.hi, other.lo))

    def mul_pos(self, other: "Iv") -> "Iv":
        """Product assuming both intervals are non-negative."""
        assert self.lo >= 0 and other.lo >= 0
        return Iv(_DN.mul(self.lo, other.lo), _UP.mul(self.hi, other.hi))

    def div_pos(self, other: "Iv") -> "Iv":
        """Quotient assuming self >= 0 and other > 0."""
        assert self.lo >= 0 and other.lo > 0
        return Iv(_DN.div(self.lo, other.hi), _UP.div(self.hi, other.lo))

    def sqrt(self) -> "Iv":
        assert self.lo >= 0
        return Iv(_DN.sqrt(self.lo), _UP.sqrt(self.hi))

    def log2(self) -> "Iv":
        assert self.lo > 0
        return Iv(_DN.log2(self.lo), _UP.log2(self.hi))

    def exp2(self) -> "Iv":
        return Iv(_DN.exp2(self.lo), _UP.exp2(self.hi))

    def __repr__(self) -> str:
        return f"Iv({self.lo!r}, {self.hi!r})"


def iv_int(n: int) -> Iv:
    with _DN:
        lo = mpfr(n)
    with _UP:
        hi = mpfr(n)
    return Iv(lo, hi)


def iv_ratio(num: int, den: int) -> Iv:
    """Interval for num/den with num >= 0, den > 0."""
    assert num >= 0 and den > 0
    return iv_int(num).div_pos(iv_int(den))


def ceil_hi(x: Iv) -> int:
    """Smallest integer >= the interval's upper bound (conservative ceil)."""
    return int(_UP.ceil(x.hi))

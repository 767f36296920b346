"""Dyadic interval arithmetic.

Endpoints are integers scaled by a shared power of two, so ring operations on
endpoints are exact and rounding happens only when mantissas are trimmed back
to the working precision (outward, of course). Operations never depend on the
host FPU.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

import gmpy2


class DyadicInterval:
    """[lo, hi] * 2^exp with integer lo <= hi."""

    __slots__ = ("lo", "hi", "exp")

    def __init__(self, lo: int, hi: int, exp: int):
        if lo > hi:
            raise ValueError("empty interval")
        self.lo = lo
        self.hi = hi
        self.exp = exp

    # -- construction -----------------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> "DyadicInterval":
        return cls(n, n, 0)

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int) -> "DyadicInterval":
        num, den = q.numerator, q.denominator
        if den == 1:
            return cls(num, num, 0)
        shift = max(prec + den.bit_length(), 8)
        scaled = num << shift
        lo = scaled // den
        hi = -((-scaled) // den)
        return cls(lo, hi, -shift)

    @classmethod
    def from_mpfr_pair(cls, lo, hi) -> "DyadicInterval":
        nlo, dlo = lo.as_integer_ratio()
        nhi, dhi = hi.as_integer_ratio()
        elo = -(dlo.bit_length() - 1)
        ehi = -(dhi.bit_length() - 1)
        e = min(elo, ehi)
        return cls(nlo << (elo - e), nhi << (ehi - e), e)

    # -- queries -----------------------------------------------------------
    def lo_fraction(self) -> Fraction:
        return Fraction(self.lo, 1) * Fraction(2) ** self.exp

    def hi_fraction(self) -> Fraction:
        return Fraction(self.hi, 1) * Fraction(2) ** self.exp

    def width_fraction(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1) * Fraction(2) ** self.exp

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int | None:
        """Certified sign, or None if the interval straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def mag_upper(self) -> Fraction:
        return max(abs(self.lo_fraction()), abs(self.hi_fraction()))

    def midpoint_float(self) -> float:
        mid = (self.lo + self.hi) // 2
        try:
            return float(gmpy2.mpfr(mid) * gmpy2.mpfr(2) ** self.exp)
        except OverflowError:  # pragma: no cover
            return float("inf") if mid > 0 else float("-inf")

    def __repr__(self):
        return f"DI({self.lo}*2^{self.exp}, {self.hi}*2^{self.exp})"

    # -- rounding ----------------------------------------------------------
    def round_to(self, prec: int) -> "DyadicInterval":
        bl = max(abs(self.lo).bit_length(), abs(self.hi).bit_length())
        if bl <= prec:
            return self
        s = bl - prec
        return DyadicInterval(self.lo >> s, -((-self.hi) >> s), self.exp + s)

    # -- arithmetic ----------------------------------------------------------
    def _aligned(self, other: "DyadicInterval"):
        e = min(self.exp, other.exp)
        a = (self.lo << (self.exp - e), self.hi << (self.exp - e))
        b = (other.lo << (other.exp - e), other.hi << (other.exp - e))
        return a, b, e

    def add(self, other: "DyadicInterval", prec: int) -> "DyadicInterval":
        (alo, ahi), (blo, bhi), e = self._aligned(other)
        return DyadicInterval(alo + blo, ahi + bhi, e).round_to(prec)

    def neg(self) -> "DyadicInterval":
        return DyadicInterval(-self.hi, -self.lo, self.exp)

    def sub(self, other: "DyadicInterval", prec: int) -> "DyadicInterval":
        return self.add(other.neg(), prec)

    def mul(self, other: "DyadicInterval", prec: int) -> "DyadicInterval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return DyadicInterval(
            min(products), max(products), self.exp + other.exp
        ).round_to(prec)

    def inverse(self, prec: int) -> "DyadicInterval":
        """1/x; requires 0 outside the interval."""
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        shift = 2 * prec + max(abs(self.lo).bit_length(), abs(self.hi).bit_length()) + 8
        # 1/x is decreasing on either sign domain: 1/x in [1/hi, 1/lo];
        # 1/(m*2^e) = (2^shift/m) * 2^(-shift-e) with directed rounding.
        scaled = 1 << shift
        lo = scaled // self.hi
        hi = -((-scaled) // self.lo)
        return DyadicInterval(lo, hi, -shift - self.exp).round_to(prec)

    def div(self, other: "DyadicInterval", prec: int) -> "DyadicInterval":
        return self.mul(other.inverse(prec + 8), prec)

    def sqrt(self, prec: int) -> "DyadicInterval":
        lo, hi, e = self.lo, self.hi, self.exp
        if hi < 0:
            raise ValueError("sqrt of negative interval")
        lo = max(lo, 0)
        if e % 2:
            lo <<= 1
            hi <<= 1
            e -= 1
        shift = 2 * prec + 8
        if shift % 2:
            shift += 1
        rlo = isqrt(lo << shift)
        rhi_base = isqrt(hi << shift)
        rhi = rhi_base if rhi_base * rhi_base == (hi << shift) else rhi_base + 1
        return DyadicInterval(rlo, rhi, (e - shift) // 2).round_to(prec)

    def intersect(self, other: "DyadicInterval") -> "DyadicInterval":
        (alo, ahi), (blo, bhi), e = self._aligned(other)
        lo, hi = max(alo, blo), min(ahi, bhi)
        if lo > hi:
            raise ValueError("disjoint intervals (inconsistent refinement)")
        return DyadicInterval(lo, hi, e)

    def contains(self, other: "DyadicInterval") -> bool:
        (alo, ahi), (blo, bhi), _ = self._aligned(other)
        return alo <= blo and bhi <= ahi


def cos_turn_interval(num: int, den: int, prec: int) -> DyadicInterval:
    """Enclosure of cos(2*pi*num/den)."""
    return _trig_interval(num, den, prec, gmpy2.cos)


def sin_turn_interval(num: int, den: int, prec: int) -> DyadicInterval:
    return _trig_interval(num, den, prec, gmpy2.sin)


_trig_cache: dict = {}


def _trig_interval(num: int, den: int, prec: int, fn) -> DyadicInterval:
    key = (fn is gmpy2.cos, num, den, prec)
    hit = _trig_cache.get(key)
    if hit is not None:
        return hit
    work = prec + 16
    with gmpy2.context(precision=work, round=gmpy2.RoundDown):
        pi_lo = gmpy2.const_pi()
        theta_lo = 2 * pi_lo * num / den
    with gmpy2.context(precision=work, round=gmpy2.RoundUp):
        pi_hi = gmpy2.const_pi()
        theta_hi = 2 * pi_hi * num / den
    # |f(x) - f(theta_lo)| <= |x - theta_lo| <= width for x in [lo, hi]
    with gmpy2.context(precision=work, round=gmpy2.RoundUp):
        slack = theta_hi - theta_lo
    with gmpy2.context(precision=work, round=gmpy2.RoundDown):
        v_lo = fn(theta_lo) - slack
    with gmpy2.context(precision=work, round=gmpy2.RoundUp):
        v_hi = fn(theta_lo) + slack
    res = DyadicInterval.from_mpfr_pair(v_lo, v_hi).round_to(work)
    _trig_cache[key] = res
    return res

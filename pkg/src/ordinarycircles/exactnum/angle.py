"""Angles as exact fractions of a full turn."""
from __future__ import annotations

from fractions import Fraction
from math import gcd


class Angle:
    """The angle 2*pi*(num/den), stored reduced with 0 <= num < den."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("angle denominator")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        self.num = num // g
        self.den = den // g

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Angle":
        return cls(q.numerator, q.denominator)

    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: "Angle") -> "Angle":
        return Angle(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Angle":
        return Angle(-self.num, self.den)

    def __sub__(self, other: "Angle") -> "Angle":
        return self + (-other)

    def times(self, k: int) -> "Angle":
        return Angle(self.num * k, self.den)

    def __eq__(self, other) -> bool:
        return isinstance(other, Angle) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"Angle({self.num}/{self.den})"

    def is_zero(self) -> bool:
        return self.num == 0


ZERO_ANGLE = Angle(0, 1)

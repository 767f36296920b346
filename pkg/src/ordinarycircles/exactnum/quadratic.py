"""Exact arithmetic in real quadratic fields Q(sqrt(d)).

Used for expressions containing a single square-root kernel: signs are decided
purely algebraically, no intervals involved.
"""
from __future__ import annotations

from fractions import Fraction


def squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * d with d squarefree; returns (s, d). n >= 0."""
    s, d = 1, 1
    k = 2
    while k * k <= n:
        e = 0
        while n % k == 0:
            n //= k
            e += 1
        if e:
            s *= k ** (e // 2)
            if e % 2:
                d *= k
        k += 1
    return s, d * n


class QuadraticElement:
    """a + b*sqrt(d) with rational a, b and squarefree integer d > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Fraction, b: Fraction, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @classmethod
    def sqrt_of_fraction(cls, q: Fraction) -> "QuadraticElement | Fraction":
        """sqrt(q) for q >= 0: a Fraction if q is a perfect square."""
        if q < 0:
            raise ValueError("negative radicand")
        sn, dn = squarefree_split(q.numerator)
        sd, dd = squarefree_split(q.denominator)
        # sqrt(q) = (sn/sd) * sqrt(dn/dd) = (sn/(sd*dd)) * sqrt(dn*dd)
        d = dn * dd
        coeff = Fraction(sn, sd * dd)
        if d == 1:
            return coeff
        return cls(Fraction(0), coeff, d)

    def _same(self, other: "QuadraticElement"):
        if self.d != other.d:
            raise ValueError("mixed radicands")

    def __add__(self, other: "QuadraticElement") -> "QuadraticElement":
        self._same(other)
        return QuadraticElement(self.a + other.a, self.b + other.b, self.d)

    def __neg__(self) -> "QuadraticElement":
        return QuadraticElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "QuadraticElement") -> "QuadraticElement":
        self._same(other)
        return QuadraticElement(
            self.a * other.a + self.b * other.b * self.d,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def scale(self, q: Fraction) -> "QuadraticElement":
        return QuadraticElement(self.a * q, self.b * q, self.d)

    def inverse(self) -> "QuadraticElement":
        n = self.a * self.a - self.b * self.b * self.d
        if n == 0:
            raise ZeroDivisionError("quadratic zero")
        return QuadraticElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def as_fraction(self) -> Fraction | None:
        return self.a if self.b == 0 else None

    def sign(self) -> int:
        """Exact sign for d > 0 (real embedding with sqrt(d) > 0)."""
        a, b = self.a, self.b
        if b == 0:
            return -1 if a < 0 else (1 if a > 0 else 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with d b^2
        lhs, rhs = a * a, self.d * b * b
        if a > 0:  # b < 0: sign = sign(a - |b| sqrt d) = sign(a^2 - d b^2)
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuadraticElement)
            and self.d == other.d
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"({self.a}+{self.b}*sqrt({self.d}))"

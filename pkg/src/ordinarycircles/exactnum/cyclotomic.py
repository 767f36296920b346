"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are integer coordinate vectors over the power basis of
Q[x]/Phi_M(x), together with a positive integer denominator. This is the
workhorse behind symbolic zero decisions for trigonometric expressions: an
expression whose angles share the denominator N lives in Q(zeta_M) with
M = lcm(N, 4), where both cos/sin values and the imaginary unit exist.

Real elements (the only ones produced from real expression trees) get
certified signs from dyadic interval evaluation of sum(c_i * zeta^i), whose
real part is sum(c_i * cos(2*pi*i/M)).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .dyadic import DyadicInterval, cos_turn_interval
from ..kernels import poly_mul_reduce


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_divmod_exact(num, den):
    """Exact division of integer polynomials (num by monic-up-to-sign den)."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        assert c % lead == 0
        f = c // lead
        q[i - dn] = f
        for j, dj in enumerate(den):
            num[i - dn + j] -= f * dj
    while num and num[-1] == 0:
        num.pop()
    return q, num


_cyclo_cache: dict[int, list[int]] = {}


def cyclotomic_polynomial(m: int) -> list[int]:
    """Integer coefficient list (ascending) of Phi_m."""
    if m in _cyclo_cache:
        return _cyclo_cache[m]
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_exact(poly, cyclotomic_polynomial(d))
            assert not rem
    _cyclo_cache[m] = poly
    return poly


class CycloField:
    """Shared structure for Q(zeta_M)."""

    _instances: dict[int, "CycloField"] = {}

    def __new__(cls, m: int):
        inst = cls._instances.get(m)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(m)
            cls._instances[m] = inst
        return inst

    def _init(self, m: int):
        self.m = m
        self.phi_poly = cyclotomic_polynomial(m)
        self.degree = len(self.phi_poly) - 1
        d = self.degree
        # reduction rows: x^k mod Phi_m for k = d .. 2d-2
        rows = []
        cur = [-c for c in self.phi_poly[:-1]]  # x^d = -(lower part), Phi monic
        rows.append(list(cur))
        for _ in range(d - 2):
            cur = [0] + cur
            if len(cur) > d:
                top = cur.pop()
                if top:
                    cur = [c + top * r for c, r in zip(cur, rows[0])]
            rows.append(list(cur))
        self.reduction_rows = rows
        # zeta^k in basis for k in [0, 2m)
        self.zeta_pows: list[tuple[int, ...]] = []
        vec = [0] * d
        vec[0] = 1
        for k in range(2 * m):
            self.zeta_pows.append(tuple(vec))
            # multiply by zeta
            vec = [0] + vec
            if len(vec) > d:
                top = vec.pop()
                if top:
                    vec = [c + top * r for c, r in zip(vec, rows[0])]

    def zero(self) -> "CycloElement":
        return CycloElement(self, (0,) * self.degree, 1)

    def one(self) -> "CycloElement":
        v = [0] * self.degree
        v[0] = 1
        return CycloElement(self, tuple(v), 1)

    def from_fraction(self, q: Fraction) -> "CycloElement":
        v = [0] * self.degree
        v[0] = q.numerator
        return CycloElement(self, tuple(v), q.denominator)

    def zeta_power(self, k: int) -> "CycloElement":
        return CycloElement(self, self.zeta_pows[k % self.m], 1)

    def cos_turn(self, num: int, den: int) -> "CycloElement":
        """cos(2*pi*num/den); requires den | m."""
        assert self.m % den == 0
        c = (num * (self.m // den)) % self.m
        v1 = self.zeta_pows[c]
        v2 = self.zeta_pows[(self.m - c) % self.m]
        return CycloElement(self, tuple(a + b for a, b in zip(v1, v2)), 2)

    def sin_turn(self, num: int, den: int) -> "CycloElement":
        """sin(2*pi*num/den) = (zeta^c - zeta^-c) * zeta^(3m/4) / 2; needs 4 | m."""
        assert self.m % den == 0 and self.m % 4 == 0
        c = (num * (self.m // den)) % self.m
        v1 = self.zeta_pows[c]
        v2 = self.zeta_pows[(self.m - c) % self.m]
        diff = CycloElement(self, tuple(a - b for a, b in zip(v1, v2)), 2)
        return diff * self.zeta_power(3 * self.m // 4)


class CycloElement:
    """num_vec / den over the power basis of Q(zeta_M)."""

    __slots__ = ("field", "vec", "den")

    def __init__(self, field: CycloField, vec, den: int):
        if den < 0:
            den = -den
            vec = tuple(-v for v in vec)
        g = den
        for v in vec:
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            vec = tuple(v // g for v in vec)
            den //= g
        self.field = field
        self.vec = tuple(vec)
        self.den = den

    # -- ring ops ----------------------------------------------------------
    def __add__(self, other: "CycloElement") -> "CycloElement":
        f = self.field
        d1, d2 = self.den, other.den
        return CycloElement(
            f, tuple(a * d2 + b * d1 for a, b in zip(self.vec, other.vec)), d1 * d2
        )

    def __neg__(self) -> "CycloElement":
        return CycloElement(self.field, tuple(-v for v in self.vec), self.den)

    def __sub__(self, other: "CycloElement") -> "CycloElement":
        return self + (-other)

    def __mul__(self, other: "CycloElement") -> "CycloElement":
        f = self.field
        vec = poly_mul_reduce(self.vec, other.vec, f.reduction_rows, f.degree)
        return CycloElement(f, vec, self.den * other.den)

    def scale(self, q: Fraction) -> "CycloElement":
        return CycloElement(
            self.field, tuple(v * q.numerator for v in self.vec), self.den * q.denominator
        )

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.vec)

    def as_fraction(self) -> Fraction | None:
        """Exact rational value if the element is rational, else None."""
        if any(self.vec[1:]):
            return None
        return Fraction(self.vec[0], self.den)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycloElement)
            and self.field is other.field
            and self.vec == other.vec
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.field.m, self.vec, self.den))

    def __repr__(self):
        return f"Cyclo(m={self.field.m}, {self.vec}/{self.den})"

    # -- field ops -----------------------------------------------------------
    def inverse(self) -> "CycloElement":
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero")
        # extended euclid over Q[x] between vec and Phi_m
        f = self.field
        a = [Fraction(v, self.den) for v in self.vec]
        b = [Fraction(c) for c in f.phi_poly]
        s0, s1 = [Fraction(1)], [Fraction(0)]

        def deg(p):
            d = len(p) - 1
            while d >= 0 and p[d] == 0:
                d -= 1
            return d

        r0, r1 = a, b
        while True:
            d1 = deg(r1)
            if d1 < 0:
                break
            d0 = deg(r0)
            if d0 < d1:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            # one reduction step of r0 by r1
            c = r0[d0] / r1[d1]
            shift = d0 - d1
            new = list(r0)
            for i, v in enumerate(r1):
                if v:
                    new[i + shift] -= c * v
            snew = list(s0) + [Fraction(0)] * max(0, len(s1) + shift - len(s0))
            for i, v in enumerate(s1):
                if v:
                    snew[i + shift] -= c * v
            r0 = new
            s0 = snew
            if deg(r0) < d1:
                r0, r1, s0, s1 = r1, r0, s1, s0
        d0 = deg(r0)
        assert d0 == 0, "gcd with Phi_m not constant"
        c = r0[0]
        inv = [v / c for v in s0]
        # reduce inv mod Phi and convert to int vec / den
        while deg(inv) >= f.degree:
            d = deg(inv)
            lead = inv[d]
            inv[d] = Fraction(0)
            for i, rv in enumerate(f.reduction_rows[d - f.degree]):
                if rv:
                    inv[i] += lead * rv
        inv = inv[: f.degree] + [Fraction(0)] * (f.degree - len(inv))
        den = 1
        for v in inv:
            den = den * v.denominator // gcd(den, v.denominator)
        vec = tuple(int(v * den) for v in inv)
        return CycloElement(f, vec, den)

    def __truediv__(self, other: "CycloElement") -> "CycloElement":
        return self * other.inverse()

    # -- numeric -------------------------------------------------------------
    def interval(self, prec: int) -> DyadicInterval:
        """Enclosure of the real part sum(c_i cos(2 pi i / m)) / den.

        For elements arising from real expressions this is the value itself.
        """
        f = self.field
        acc = DyadicInterval.from_int(0)
        for i, c in enumerate(self.vec):
            if c == 0:
                continue
            term = cos_turn_interval(i, f.m, prec).mul(
                DyadicInterval.from_int(c), prec + 8
            )
            acc = acc.add(term, prec + 8)
        if self.den != 1:
            acc = acc.mul(
                DyadicInterval.from_fraction(Fraction(1, self.den), prec + 8), prec + 8
            )
        return acc

    def sign(self) -> int:
        """Exact sign of a real element."""
        if self.is_zero():
            return 0
        q = self.as_fraction()
        if q is not None:
            return -1 if q < 0 else (1 if q > 0 else 0)
        prec = 64
        while True:
            s = self.interval(prec).sign()
            if s is not None:
                return s
            prec *= 2

    def promote(self, target: CycloField) -> "CycloElement":
        """Embed into Q(zeta_M') with m | M'."""
        if target is self.field:
            return self
        assert target.m % self.field.m == 0
        k = target.m // self.field.m
        out = target.zero()
        for i, c in enumerate(self.vec):
            if c:
                out = out + CycloElement(
                    target, tuple(c * v for v in target.zeta_pows[i * k]), 1
                )
        return CycloElement(target, out.vec, out.den * self.den)

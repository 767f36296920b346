"""Lazily-refinable exact real expressions.

An expression tree over rationals, cos/sin of rational angles, field
operations and square roots. Every expression can be evaluated to a dyadic
interval at any precision, and signs are certified by an escalation ladder:
interval refinement at 64/128/256/1024 bits, then a symbolic route that
reduces the tree inside a cyclotomic (or quadratic) field where zero is
decided exactly.
"""
from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

from ..errors import DivisionNearZero, NegativeSqrt, PrecisionExhausted
from .angle import Angle
from .cyclotomic import CycloElement, CycloField
from .dyadic import DyadicInterval, cos_turn_interval, sin_turn_interval
from .quadratic import QuadraticElement

RAT, COS, SIN, NEG, SUM, PROD, QUOT, SQRT = (
    "rat", "cos", "sin", "neg", "sum", "prod", "quot", "sqrt",
)

DEFAULT_PRECISION_CAP = 1024
_FIELD_ORDER_CAP = 512  # largest cyclotomic conductor the symbolic route builds
_HARD_PRECISION_LIMIT = 1 << 22

Sign = int  # -1, 0, 1

EXACT_RATIONAL = "ExactRational"
SYMBOLIC_ZERO = "SymbolicZero"
INTERVAL_AT = "IntervalAtPrecision"


class SignCertificate:
    __slots__ = ("sign", "method", "precision_used")

    def __init__(self, sign: Sign, method: str, precision_used: int = 0):
        self.sign = sign
        self.method = method
        self.precision_used = precision_used

    def __repr__(self):
        return f"SignCertificate({self.sign}, {self.method}, {self.precision_used})"


def precision_cap() -> int:
    raw = os.environ.get("ORDINARY_PRECISION_CAP")
    if raw:
        try:
            return max(64, int(raw))
        except ValueError:
            pass
    return DEFAULT_PRECISION_CAP


class RealExpr:
    __slots__ = ("kind", "rat", "angle", "args", "_best_iv", "_scalar", "_has_scalar", "_hash")

    def __init__(self, kind, rat=None, angle=None, args=()):
        self.kind = kind
        self.rat = rat
        self.angle = angle
        self.args = args
        self._best_iv = None
        self._scalar = None
        self._has_scalar = False
        self._hash = None

    # ---------------- constructors ----------------
    @staticmethod
    def rational(p, q=1) -> "RealExpr":
        return RealExpr(RAT, rat=Fraction(p, q))

    @staticmethod
    def from_fraction(q: Fraction) -> "RealExpr":
        return RealExpr(RAT, rat=Fraction(q))

    @staticmethod
    def cos(angle: Angle) -> "RealExpr":
        return RealExpr(COS, angle=angle)

    @staticmethod
    def sin(angle: Angle) -> "RealExpr":
        return RealExpr(SIN, angle=angle)

    # operators with light rational folding
    def __add__(self, other: "RealExpr") -> "RealExpr":
        if self.kind == RAT and other.kind == RAT:
            return RealExpr.from_fraction(self.rat + other.rat)
        if self.kind == RAT and self.rat == 0:
            return other
        if other.kind == RAT and other.rat == 0:
            return self
        return RealExpr(SUM, args=(self, other))

    def __neg__(self) -> "RealExpr":
        if self.kind == RAT:
            return RealExpr.from_fraction(-self.rat)
        if self.kind == NEG:
            return self.args[0]
        return RealExpr(NEG, args=(self,))

    def __sub__(self, other: "RealExpr") -> "RealExpr":
        return self + (-other)

    def __mul__(self, other: "RealExpr") -> "RealExpr":
        if self.kind == RAT and other.kind == RAT:
            return RealExpr.from_fraction(self.rat * other.rat)
        if self.kind == RAT and self.rat == 1:
            return other
        if other.kind == RAT and other.rat == 1:
            return self
        return RealExpr(PROD, args=(self, other))

    def __truediv__(self, other: "RealExpr") -> "RealExpr":
        if other.kind == RAT:
            if other.rat == 0:
                raise DivisionNearZero("denominator is exactly zero")
            return self * RealExpr.from_fraction(1 / other.rat)
        cert = certified_sign(other)
        if cert.sign == 0:
            raise DivisionNearZero("denominator is exactly zero")
        return RealExpr(QUOT, args=(self, other))

    def sqrt(self) -> "RealExpr":
        cert = certified_sign(self)
        if cert.sign < 0:
            raise NegativeSqrt("square root of a certified-negative expression")
        if self.kind == RAT:
            root = QuadraticElement.sqrt_of_fraction(self.rat)
            if isinstance(root, Fraction):
                return RealExpr.from_fraction(root)
        return RealExpr(SQRT, args=(self,))

    # ---------------- structure ----------------
    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RealExpr) or self.kind != other.kind:
            return False
        return (
            self.rat == other.rat
            and self.angle == other.angle
            and self.args == other.args
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, self.rat, self.angle, self.args))
        return self._hash

    def __repr__(self):
        if self.kind == RAT:
            return f"Rat({self.rat})"
        if self.kind in (COS, SIN):
            return f"{self.kind}({self.angle.num}/{self.angle.den})"
        return f"{self.kind}{self.args}"

    def float_approx(self) -> float:
        return eval_interval(self, 53).midpoint_float()


# ---------------- interval evaluation ----------------


def _raw_eval(e: RealExpr, work: int) -> DyadicInterval:
    if e.kind == RAT:
        return DyadicInterval.from_fraction(e.rat, work)
    if e.kind == COS:
        return cos_turn_interval(e.angle.num, e.angle.den, work)
    if e.kind == SIN:
        return sin_turn_interval(e.angle.num, e.angle.den, work)
    if e.kind == NEG:
        return _raw_eval(e.args[0], work).neg()
    if e.kind == SUM:
        return _raw_eval(e.args[0], work).add(_raw_eval(e.args[1], work), work)
    if e.kind == PROD:
        return _raw_eval(e.args[0], work).mul(_raw_eval(e.args[1], work), work)
    if e.kind == QUOT:
        num = _raw_eval(e.args[0], work)
        den = _raw_eval(e.args[1], work)
        if den.contains_zero():
            raise _NeedMorePrecision()
        return num.div(den, work)
    if e.kind == SQRT:
        arg = _raw_eval(e.args[0], work)
        if arg.hi < 0:
            raise NegativeSqrt("square root of a negative enclosure")
        return arg.sqrt(work)
    raise AssertionError(e.kind)


class _NeedMorePrecision(Exception):
    pass


def _width_ok(iv: DyadicInterval, prec: int) -> bool:
    w = iv.hi - iv.lo
    if w == 0:
        return True
    # threshold 2^(1-prec) * max(1, |value|); |value| >= mag_lower
    if iv.lo > 0:
        mag_m, mag_e = iv.lo, iv.exp
    elif iv.hi < 0:
        mag_m, mag_e = -iv.hi, iv.exp
    else:
        mag_m, mag_e = 0, 0
    # condition A: w * 2^exp <= 2^(1-prec)
    sh = 1 - prec - iv.exp
    if sh >= 0 and w <= (1 << sh):
        return True
    # condition B: w * 2^exp <= 2^(1-prec) * mag_m * 2^mag_e
    if mag_m:
        sh2 = 1 - prec + mag_e - iv.exp
        if sh2 >= 0:
            return w <= (mag_m << sh2)
        return (w << (-sh2)) <= mag_m
    return False


def eval_interval(e: RealExpr, precision: int) -> DyadicInterval:
    """Enclosure with width <= 2^(1-precision) * max(1, |value|).

    Refinement is monotone: later enclosures are contained in earlier ones.
    """
    if precision < 8:
        raise ValueError("precision must be at least 8 bits")
    best = e._best_iv
    if best is not None and _width_ok(best, precision):
        return best
    work = precision + 16
    cap = max(4 * precision + 64, precision_cap() * 4)
    while True:
        try:
            iv = _raw_eval(e, work)
        except _NeedMorePrecision:
            work *= 2
            if work > cap:
                raise DivisionNearZero(
                    "a quotient denominator could not be separated from zero"
                )
            continue
        if best is not None:
            iv = iv.intersect(best)
            best = iv
        else:
            best = iv
        e._best_iv = best
        if _width_ok(iv, precision):
            return iv
        work *= 2
        if work > _HARD_PRECISION_LIMIT:  # pragma: no cover
            raise PrecisionExhausted("interval refinement stalled")


# ---------------- symbolic scalar extraction ----------------


def _trig_denominators(e: RealExpr, acc: set[int]) -> bool:
    """Collect angle denominators; False if a sqrt leaf blocks pure-cyclo."""
    if e.kind in (COS, SIN):
        acc.add(e.angle.den)
        return True
    if e.kind == RAT:
        return True
    ok = True
    for a in e.args:
        ok = _trig_denominators(a, acc) and ok
    if e.kind == SQRT:
        return False
    return ok


def exactify(e: RealExpr):
    """Best exact representation: Fraction | CycloElement | QuadraticElement | None.

    Rational-only trees give Fractions; trees whose trig nodes share a
    conductor reduce in Q(zeta_M); a single surviving sqrt kernel gives a
    quadratic element. Mixtures return None.
    """
    if e._has_scalar:
        return e._scalar
    val = _exactify_impl(e)
    e._scalar = val
    e._has_scalar = True
    return val


def _promote_pair(x, y):
    """Bring two scalars into one arithmetic domain, or return None."""
    if isinstance(x, Fraction):
        if isinstance(y, Fraction):
            return x, y
        if isinstance(y, CycloElement):
            return y.field.from_fraction(x), y
        if isinstance(y, QuadraticElement):
            return QuadraticElement(x, Fraction(0), y.d), y
        return None
    if isinstance(y, Fraction):
        p = _promote_pair(y, x)
        return None if p is None else (p[1], p[0])
    if isinstance(x, CycloElement) and isinstance(y, CycloElement):
        m = lcm(x.field.m, y.field.m)
        if m > _FIELD_ORDER_CAP:
            return None
        f = CycloField(m)
        return x.promote(f), y.promote(f)
    if isinstance(x, QuadraticElement) and isinstance(y, QuadraticElement):
        if x.d != y.d:
            return None
        return x, y
    return None


def scalar_add(x, y):
    p = _promote_pair(x, y)
    if p is None:
        return None
    return p[0] + p[1]


def scalar_mul(x, y):
    p = _promote_pair(x, y)
    if p is None:
        return None
    return p[0] * p[1]


def scalar_div(x, y):
    p = _promote_pair(x, y)
    if p is None:
        return None
    a, b = p
    if isinstance(b, Fraction):
        if b == 0:
            raise ZeroDivisionError
        return a / b
    if b.is_zero():
        raise ZeroDivisionError
    return a / b


def scalar_neg(x):
    return -x


def scalar_is_zero(x) -> bool:
    if isinstance(x, Fraction):
        return x == 0
    return x.is_zero()


def scalar_sign(x) -> int:
    if isinstance(x, Fraction):
        return -1 if x < 0 else (1 if x > 0 else 0)
    return x.sign()


def scalar_as_fraction(x):
    if isinstance(x, Fraction):
        return x
    return x.as_fraction()


def _exactify_impl(e: RealExpr):
    if e.kind == RAT:
        return e.rat
    if e.kind in (COS, SIN):
        m = lcm(4, e.angle.den)
        if m > _FIELD_ORDER_CAP:
            return None
        f = CycloField(m)
        v = (
            f.cos_turn(e.angle.num, e.angle.den)
            if e.kind == COS
            else f.sin_turn(e.angle.num, e.angle.den)
        )
        q = v.as_fraction()
        return q if q is not None else v
    if e.kind == NEG:
        v = exactify(e.args[0])
        return None if v is None else -v
    if e.kind in (SUM, PROD, QUOT):
        a = exactify(e.args[0])
        b = exactify(e.args[1])
        if a is None or b is None:
            return None
        if e.kind == SUM:
            out = scalar_add(a, b)
        elif e.kind == PROD:
            out = scalar_mul(a, b)
        else:
            out = scalar_div(a, b)
        if out is None:
            return None
        q = scalar_as_fraction(out)
        return q if q is not None else out
    if e.kind == SQRT:
        v = exactify(e.args[0])
        if isinstance(v, Fraction) and v >= 0:
            return QuadraticElement.sqrt_of_fraction(v)
        return None
    raise AssertionError(e.kind)


def is_rational_tree(e: RealExpr) -> bool:
    if e.kind == RAT:
        return True
    if e.kind in (COS, SIN, SQRT):
        return False
    return all(is_rational_tree(a) for a in e.args)


# ---------------- certified sign ----------------


def certified_sign(e: RealExpr, cap: int | None = None) -> SignCertificate:
    """Exact sign with a certificate; never guesses.

    Ladder: exact rational fast path, 64/128/256/cap-bit intervals, symbolic
    reduction, then unbounded refinement once the symbolic route certifies the
    value nonzero.
    """
    if cap is None:
        cap = precision_cap()
    if e.kind == RAT:
        return SignCertificate(scalar_sign(e.rat), EXACT_RATIONAL)
    if is_rational_tree(e):
        v = exactify(e)
        if isinstance(v, Fraction):
            return SignCertificate(scalar_sign(v), EXACT_RATIONAL)
    ladder = [p for p in (64, 128, 256, cap) if p <= cap]
    if not ladder or ladder[-1] != cap:
        ladder.append(cap)
    seen = set()
    for p in ladder:
        if p in seen:
            continue
        seen.add(p)
        s = eval_interval(e, p).sign()
        if s is not None:
            return SignCertificate(s, INTERVAL_AT, p)
    v = exactify(e)
    if v is not None:
        if scalar_is_zero(v):
            return SignCertificate(0, SYMBOLIC_ZERO)
        q = scalar_as_fraction(v)
        if q is not None:
            return SignCertificate(scalar_sign(q), EXACT_RATIONAL)
        if isinstance(v, QuadraticElement):
            return SignCertificate(v.sign(), SYMBOLIC_ZERO)
        # nonzero field element: refinement must terminate
        p = cap
        while p <= _HARD_PRECISION_LIMIT:
            p *= 2
            s = eval_interval(e, p).sign()
            if s is not None:
                return SignCertificate(s, INTERVAL_AT, p)
    raise PrecisionExhausted(
        f"sign undecided at {cap} bits and no symbolic rule applies"
    )


def exact_rational_value(e: RealExpr) -> Fraction | None:
    """The exact rational value when the expression collapses to one."""
    v = exactify(e)
    if v is None:
        return None
    return scalar_as_fraction(v)


# ---------------- serialization ----------------


def expr_to_json(e: RealExpr):
    if e.kind == RAT:
        return {"rat": str(e.rat)}
    if e.kind == COS:
        return {"cos": f"{e.angle.num}/{e.angle.den}"}
    if e.kind == SIN:
        return {"sin": f"{e.angle.num}/{e.angle.den}"}
    if e.kind == NEG:
        return {"neg": expr_to_json(e.args[0])}
    if e.kind == SUM:
        return {"sum": [expr_to_json(a) for a in e.args]}
    if e.kind == PROD:
        return {"prod": [expr_to_json(a) for a in e.args]}
    if e.kind == QUOT:
        return {"quot": [expr_to_json(a) for a in e.args]}
    if e.kind == SQRT:
        return {"sqrt": expr_to_json(e.args[0])}
    raise AssertionError(e.kind)


def _parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def expr_from_json(obj) -> RealExpr:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"malformed expression node: {obj!r}")
    (key, val), = obj.items()
    if key == "rat":
        return RealExpr.from_fraction(_parse_fraction(val))
    if key in ("cos", "sin"):
        q = _parse_fraction(val)
        ang = Angle(q.numerator, q.denominator)
        return RealExpr.cos(ang) if key == "cos" else RealExpr.sin(ang)
    if key == "neg":
        return -expr_from_json(val)
    if key in ("sum", "prod", "quot"):
        a, b = (expr_from_json(v) for v in val)
        if key == "sum":
            return a + b
        if key == "prod":
            return a * b
        return a / b
    if key == "sqrt":
        return expr_from_json(val).sqrt()
    raise ValueError(f"unknown expression node kind: {key!r}")

"""Points, generalised circles, circle inversion, and certified incidence
predicates.

Coordinates are exact real expressions. Predicates run on an exact fast path
whenever the coordinates of all participants reduce into one arithmetic
domain (rationals, a cyclotomic field, or a quadratic field); otherwise they
fall back to certified interval signs on the determinant expression.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import (
    CenterInversion,
    DegenerateTriple,
    DivisionNearZero,
    PredicateUndecided,
    PrecisionExhausted,
)
from .exactnum import (
    CycloElement,
    CycloField,
    QuadraticElement,
    RealExpr,
    certified_sign,
    exactify,
    expr_from_json,
    expr_to_json,
    scalar_as_fraction,
    scalar_div,
    scalar_is_zero,
    scalar_sign,
)
from .kernels import circle3_minors, det3_sign, det4_sign


# ---------------- scalar domain promotion ----------------


def promote_scalars(values):
    """Promote exact scalars into a single domain; None if impossible."""
    if any(v is None for v in values):
        return None
    fields = [v.field.m for v in values if isinstance(v, CycloElement)]
    quads = {v.d for v in values if isinstance(v, QuadraticElement)}
    if fields and quads:
        return None
    if quads:
        if len(quads) > 1:
            return None
        d = quads.pop()
        return [
            v if isinstance(v, QuadraticElement) else QuadraticElement(v, Fraction(0), d)
            for v in values
        ]
    if fields:
        m = 1
        for fm in fields:
            m = lcm(m, fm)
        if m > 512:
            return None
        f = CycloField(m)
        out = []
        for v in values:
            if isinstance(v, CycloElement):
                out.append(v.promote(f))
            else:
                out.append(f.from_fraction(v))
        return out
    return list(values)


def point_scalars(points):
    """Common-domain coordinate scalars for a sequence of points, or None."""
    vals = []
    for p in points:
        vals.append(exactify(p.x))
        vals.append(exactify(p.y))
    return promote_scalars(vals)


# ---------------- core types ----------------


class Point:
    """An affine point with exact expression coordinates."""

    __slots__ = ("x", "y", "tag")

    def __init__(self, x: RealExpr, y: RealExpr, tag: str | None = None):
        self.x = x
        self.y = y
        self.tag = tag

    @classmethod
    def rational(cls, x, y, tag=None) -> "Point":
        return cls(RealExpr.from_fraction(Fraction(x)), RealExpr.from_fraction(Fraction(y)), tag)

    def __repr__(self):
        return f"Point({self.x!r}, {self.y!r})"

    def approx(self) -> tuple[float, float]:
        return (self.x.float_approx(), self.y.float_approx())

    def to_json(self):
        obj = {"x": expr_to_json(self.x), "y": expr_to_json(self.y)}
        if self.tag is not None:
            obj["tag"] = self.tag
        return obj

    @classmethod
    def from_json(cls, obj) -> "Point":
        return cls(expr_from_json(obj["x"]), expr_from_json(obj["y"]), obj.get("tag"))


def points_equal(p: Point, q: Point) -> bool:
    sc = point_scalars([p, q])
    if sc is not None:
        px, py, qx, qy = sc
        return scalar_is_zero(_sub(px, qx)) and scalar_is_zero(_sub(py, qy))
    try:
        return (
            certified_sign(p.x - q.x).sign == 0
            and certified_sign(p.y - q.y).sign == 0
        )
    except PrecisionExhausted as exc:
        raise PredicateUndecided(str(exc)) from exc


def _sub(a, b):
    return a - b


def _mul(a, b):
    return a * b


class GeneralisedCircle:
    """Zero set of t(x^2+y^2) + l1 x + l2 y + l0.

    Rational instances normalise to coprime integer coefficients with the
    first nonzero coefficient positive; exact-expression instances normalise
    by dividing through the first certified-nonzero coefficient.
    """

    __slots__ = ("t", "l1", "l2", "l0", "key")

    def __init__(self, t, l1, l2, l0, _skip_checks=False):
        coeffs = [t, l1, l2, l0]
        if all(isinstance(c, Fraction) for c in coeffs):
            coeffs = _normalize_rational(coeffs)
        else:
            coeffs = _normalize_field(coeffs)
        self.t, self.l1, self.l2, self.l0 = coeffs
        self.key = ("circ",) + tuple(coeffs)
        if not _skip_checks:
            self._validate()

    def _validate(self):
        if scalar_is_zero(self.t) and scalar_is_zero(self.l1) and scalar_is_zero(self.l2):
            raise ValueError("degenerate generalised circle (t = l1 = l2 = 0)")
        if not scalar_is_zero(self.t):
            t, l1, l2, l0, four = promote_scalars(
                [self.t, self.l1, self.l2, self.l0, Fraction(4)]
            )
            disc = _sub(_add(_mul(l1, l1), _mul(l2, l2)), _mul(_mul(four, t), l0))
            if scalar_sign(disc) <= 0:
                raise ValueError("circle is not real (nonpositive squared radius)")

    def is_line(self) -> bool:
        return scalar_is_zero(self.t)

    def __eq__(self, other):
        return isinstance(other, GeneralisedCircle) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GeneralisedCircle(t={self.t}, l1={self.l1}, l2={self.l2}, l0={self.l0})"

    def evaluate_scalar(self, x, y):
        """Value at a point given in the same scalar domain."""
        vals = promote_scalars([self.t, self.l1, self.l2, self.l0, x, y])
        t, l1, l2, l0, x, y = vals
        return _add(
            _add(_mul(t, _add(_mul(x, x), _mul(y, y))), _mul(l1, x)),
            _add(_mul(l2, y), l0),
        )

    def contains(self, p: Point) -> bool:
        sc = point_scalars([p])
        if sc is not None:
            vals = promote_scalars([self.t, self.l1, self.l2, self.l0] + sc)
            if vals is not None:
                t, l1, l2, l0, x, y = vals
                v = _add(
                    _add(_mul(t, _add(_mul(x, x), _mul(y, y))), _mul(l1, x)),
                    _add(_mul(l2, y), l0),
                )
                return scalar_is_zero(v)
        expr = self.as_expr(p.x, p.y)
        try:
            return certified_sign(expr).sign == 0
        except PrecisionExhausted as exc:
            raise PredicateUndecided(str(exc)) from exc

    def approx_coeffs(self):
        """64-bit float approximations (display only)."""
        return tuple(scalar_float(c) for c in (self.t, self.l1, self.l2, self.l0))

    def as_expr(self, x: RealExpr, y: RealExpr) -> RealExpr:
        def lift(c):
            if isinstance(c, Fraction):
                return RealExpr.from_fraction(c)
            if isinstance(c, RealExpr):
                return c
            raise TypeError("cannot lift field coefficient to expression")

        return (
            lift(self.t) * (x * x + y * y)
            + lift(self.l1) * x
            + lift(self.l2) * y
            + lift(self.l0)
        )

    def to_json(self):
        if all(isinstance(c, Fraction) for c in (self.t, self.l1, self.l2, self.l0)):
            return {
                "t": str(self.t),
                "l1": str(self.l1),
                "l2": str(self.l2),
                "l0": str(self.l0),
            }
        raise TypeError("only rational circles serialize to the circle JSON form")

    @classmethod
    def from_json(cls, obj) -> "GeneralisedCircle":
        return cls(
            Fraction(obj["t"]),
            Fraction(obj["l1"]),
            Fraction(obj["l2"]),
            Fraction(obj["l0"]),
        )


def _add(a, b):
    return a + b


def scalar_float(v) -> float:
    """Float approximation of an exact scalar (display/diagnostics only)."""
    if isinstance(v, Fraction):
        return float(v)
    if isinstance(v, CycloElement):
        return v.interval(53).midpoint_float()
    if isinstance(v, QuadraticElement):
        return float(v.a) + float(v.b) * float(v.d) ** 0.5
    raise TypeError(type(v))


def _normalize_rational(coeffs):
    from math import gcd

    dens = [c.denominator for c in coeffs]
    mult = 1
    for d in dens:
        mult = lcm(mult, d)
    ints = [int(c * mult) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return [Fraction(v) for v in ints]


def _normalize_field(coeffs):
    for c in coeffs:
        if not scalar_is_zero(c):
            out = []
            for d in coeffs:
                pair = promote_scalars([d, c])
                out.append(scalar_div(pair[0], pair[1]))
            fracs = [scalar_as_fraction(v) for v in out]
            if all(f is not None for f in fracs):
                return _normalize_rational(fracs)
            return out
    raise ValueError("zero circle")


class InversionSpec:
    """Circle inversion data: centre point and squared radius."""

    __slots__ = ("center", "radius_squared")

    def __init__(self, center: Point, radius_squared: RealExpr):
        if certified_sign(radius_squared).sign <= 0:
            raise ValueError("squared radius must be certified positive")
        self.center = center
        self.radius_squared = radius_squared

    @classmethod
    def rational(cls, cx, cy, r_squared=1) -> "InversionSpec":
        return cls(
            Point.rational(cx, cy),
            RealExpr.from_fraction(Fraction(r_squared)),
        )

    def is_rational(self) -> bool:
        return (
            exactify(self.center.x) is not None
            and isinstance(exactify(self.center.x), Fraction)
            and isinstance(exactify(self.center.y), Fraction)
            and isinstance(exactify(self.radius_squared), Fraction)
        )


# ---------------- predicates ----------------


def _int_rows(scalars, with_lift):
    """Integer-lift rows of (x, y) scalar pairs; each row scaled positively.

    with_lift: also produce the w = x^2+y^2 entry (for concyclicity rows).
    """
    rows = []
    for i in range(0, len(scalars), 2):
        x, y = scalars[i], scalars[i + 1]
        q = lcm(x.denominator, y.denominator)
        a, b = int(x * q), int(y * q)
        if with_lift:
            rows.append((a * a + b * b, a * q, b * q, q * q))
        else:
            rows.append((a, b, q))
    return rows


def collinear(a: Point, b: Point, c: Point) -> bool:
    sc = point_scalars([a, b, c])
    if sc is not None:
        return _collinear_scalars(sc) == 0
    expr = _orient_expr(a, b, c)
    try:
        return certified_sign(expr).sign == 0
    except PrecisionExhausted as exc:
        raise PredicateUndecided(str(exc)) from exc


def domain_one(sc):
    """Multiplicative unit in the (already promoted) domain of ``sc``."""
    probe = sc[0]
    if isinstance(probe, CycloElement):
        return probe.field.one()
    if isinstance(probe, QuadraticElement):
        return QuadraticElement(Fraction(1), Fraction(0), probe.d)
    return Fraction(1)


def _collinear_scalars(sc) -> int:
    if all(isinstance(v, Fraction) for v in sc):
        rows = _int_rows(sc, with_lift=False)
        return det3_sign(*rows[0], *rows[1], *rows[2])
    (ax, ay, bx, by, cx, cy) = sc
    d = _sub(
        _mul(_sub(bx, ax), _sub(cy, ay)),
        _mul(_sub(by, ay), _sub(cx, ax)),
    )
    return scalar_sign(d)


def _orient_expr(a: Point, b: Point, c: Point) -> RealExpr:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def concyclic(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the four (pairwise distinct) points lie on one generalised circle."""
    sc = point_scalars([a, b, c, d])
    if sc is not None:
        return _concyclic_scalars(sc) == 0
    rows = []
    for p in (a, b, c, d):
        rows.append((p.x * p.x + p.y * p.y, p.x, p.y, RealExpr.rational(1)))
    expr = _det4_expr(rows)
    try:
        return certified_sign(expr).sign == 0
    except PrecisionExhausted as exc:
        raise PredicateUndecided(str(exc)) from exc


def _concyclic_scalars(sc) -> int:
    if all(isinstance(v, Fraction) for v in sc):
        rows = _int_rows(sc, with_lift=True)
        flat = [v for row in rows for v in row]
        return det4_sign(flat)
    one = domain_one(sc)
    rows = []
    for i in range(0, 8, 2):
        x, y = sc[i], sc[i + 1]
        rows.append([_add(_mul(x, x), _mul(y, y)), x, y, one])
    return scalar_sign(_det4_scalar(rows))


def _det3_scalar(r):
    (a, b, c), (d, e, f), (g, h, i) = r
    return _sub(
        _add(_mul(a, _sub(_mul(e, i), _mul(f, h))), _mul(c, _sub(_mul(d, h), _mul(e, g)))),
        _mul(b, _sub(_mul(d, i), _mul(f, g))),
    )


def _det4_scalar(rows):
    total = None
    for j in range(4):
        minor = [
            [rows[i][k] for k in range(4) if k != j]
            for i in range(1, 4)
        ]
        term = _mul(rows[0][j], _det3_scalar(minor))
        if j % 2:
            term = -term
        total = term if total is None else _add(total, term)
    return total


def _det4_expr(rows) -> RealExpr:
    def det3e(r):
        (a, b, c), (d, e, f), (g, h, i) = r
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    total = RealExpr.rational(0)
    for j in range(4):
        minor = [[rows[i][k] for k in range(4) if k != j] for i in range(1, 4)]
        term = rows[0][j] * det3e(minor)
        if j % 2:
            term = -term
        total = total + term
    return total


def circle_through(a: Point, b: Point, c: Point) -> GeneralisedCircle:
    """The unique generalised circle through three pairwise distinct points."""
    for p, q in ((a, b), (a, c), (b, c)):
        if points_equal(p, q):
            raise DegenerateTriple("coincident points in circle_through")
    sc = point_scalars([a, b, c])
    if sc is not None:
        if all(isinstance(v, Fraction) for v in sc):
            rows = _int_rows(sc, with_lift=True)
            t, l1, l2, l0 = circle3_minors(*rows[0], *rows[1], *rows[2])
            return GeneralisedCircle(Fraction(t), Fraction(l1), Fraction(l2), Fraction(l0))
        one = domain_one(sc)
        rows = []
        for i in range(0, 6, 2):
            x, y = sc[i], sc[i + 1]
            rows.append([_add(_mul(x, x), _mul(y, y)), x, y, one])
        t = _det3_scalar([r[1:] for r in rows])
        l1 = -_det3_scalar([[r[0], r[2], r[3]] for r in rows])
        l2 = _det3_scalar([[r[0], r[1], r[3]] for r in rows])
        l0 = -_det3_scalar([[r[0], r[1], r[2]] for r in rows])
        return GeneralisedCircle(t, l1, l2, l0)
    raise PredicateUndecided(
        "circle coefficients need exactly representable coordinates"
    )


# ---------------- inversion ----------------


def invert_point(spec: InversionSpec, q: Point) -> Point:
    """Image of q under inversion in the circle (centre, r^2)."""
    p = spec.center
    if points_equal(p, q):
        raise CenterInversion("cannot invert the centre of inversion")
    dx = q.x - p.x
    dy = q.y - p.y
    rho = dx * dx + dy * dy
    try:
        scale = spec.radius_squared / rho
    except DivisionNearZero as exc:  # pragma: no cover - equality check above
        raise CenterInversion(str(exc)) from exc
    return Point(p.x + scale * dx, p.y + scale * dy, q.tag)


def invert_generalised_circle(
    spec: InversionSpec, g: GeneralisedCircle
) -> GeneralisedCircle:
    """Image circle, in closed form.

    Translating the centre to the origin sends t rho + l1 x + l2 y + l0 to
    coefficients (t', l1', l2', l0') = (l0, r^2 l1, r^2 l2, r^4 t), then the
    translation is undone.
    """
    cx = exactify(spec.center.x)
    cy = exactify(spec.center.y)
    r2 = exactify(spec.radius_squared)
    vals = promote_scalars([cx, cy, r2, g.t, g.l1, g.l2, g.l0])
    if vals is None:
        raise PredicateUndecided("inversion of circles needs exact coefficients")
    cx, cy, r2, t, l1, l2, l0 = vals
    # translate centre to origin: x -> x + cx, y -> y + cy
    c2 = _add(_mul(cx, cx), _mul(cy, cy))
    l1s = _add(l1, _mul(_mul(Fraction(2), t), cx))
    l2s = _add(l2, _mul(_mul(Fraction(2), t), cy))
    l0s = _add(_add(l0, _mul(t, c2)), _add(_mul(l1, cx), _mul(l2, cy)))
    # invert at origin
    t2, l12, l22, l02 = l0s, _mul(r2, l1s), _mul(r2, l2s), _mul(_mul(r2, r2), t)
    # translate back: x -> x - cx, y -> y - cy
    l1b = _sub(l12, _mul(_mul(Fraction(2), t2), cx))
    l2b = _sub(l22, _mul(_mul(Fraction(2), t2), cy))
    l0b = _add(
        _sub(_sub(l02, _mul(l12, cx)), _mul(l22, cy)),
        _mul(t2, c2),
    )
    return GeneralisedCircle(t2, l1b, l2b, l0b)


# ---------------- point-set JSON ----------------


def point_set_to_json(points, meta=None):
    return {
        "points": [p.to_json() for p in points],
        "meta": dict(meta or {}),
    }


def point_set_from_json(obj):
    pts = [Point.from_json(p) for p in obj["points"]]
    return pts, obj.get("meta", {})

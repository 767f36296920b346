"""The three concyclicity groups: circular-cubic chord-tangent group, ellipse
eccentric-angle group, and the concentric-circles group, with their four-point
criteria cross-validated against the geometric predicates, plus coset
synthesis on cubic hosts.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from .curves import CurvePoly, invert_curve, singular_points_cubic
from .errors import (
    GroupGeometryMismatch,
    HostUnsupported,
    LineInCurve,
    PrecisionExhausted,
    PredicateUndecided,
    SingularHit,
    ToleranceExceeded,
)
from .exactnum import (
    Angle,
    CycloElement,
    QuadraticElement,
    RealExpr,
    certified_sign,
    scalar_div,
    scalar_is_zero,
)
from .geometry import (
    InversionSpec,
    Point,
    _det4_expr,
    collinear,
    concyclic,
    domain_one,
    invert_point,
    point_scalars,
    promote_scalars,
)
from .hosts import TwoComponentHost, two_component_host
from .parametrize import CubicParametrization


def scalar_to_expr(s) -> RealExpr:
    """Rebuild an exact real expression from a scalar value."""
    if isinstance(s, Fraction):
        return RealExpr.from_fraction(s)
    if isinstance(s, QuadraticElement):
        if s.d < 0:
            raise ValueError("complex scalar has no real expression")
        root = RealExpr.rational(s.d).sqrt()
        return RealExpr.from_fraction(s.a) + RealExpr.from_fraction(s.b) * root
    if isinstance(s, CycloElement):
        # real elements equal their real part sum(c_i cos(2 pi i / m)) / den
        m = s.field.m
        acc = RealExpr.rational(0)
        for i, c in enumerate(s.vec):
            if c:
                acc = acc + RealExpr.rational(c) * RealExpr.cos(Angle(i, m))
        return acc * RealExpr.rational(1, s.den)
    raise TypeError(type(s))


# ---------------- circular cubic hosts and chord-tangent law ----------------


class CubicHost:
    """An irreducible circular cubic in the (ux+vy)(x^2+y^2) + q z form."""

    def __init__(self, curve: CurvePoly, registry: TwoComponentHost | None = None,
                 singular: tuple | None = None, two_component: bool | None = None):
        if curve.degree != 3:
            raise ValueError("cubic expected")
        c = curve.coeffs
        u = c.get((3, 0, 0), Fraction(0))
        v = c.get((2, 1, 0), Fraction(0))
        if c.get((1, 2, 0), Fraction(0)) != u or c.get((0, 3, 0), Fraction(0)) != v:
            raise ValueError("leading form is not (ux+vy)(x^2+y^2): not a circular cubic")
        if u == 0 and v == 0:
            raise ValueError("degenerate circular cubic (reducible with the line at infinity)")
        self.curve = curve
        self.u, self.v = u, v
        self.registry = registry
        self._singular = singular
        self._two_component = two_component
        self._param = None
        self.o = CubicPoint(self, (v, -u, Fraction(0)))
        self._omega = None

    @property
    def omega(self) -> "CubicPoint":
        if self._omega is None:
            self._omega = cubic_star(self.o, self.o)
        return self._omega

    def singular_point(self):
        """The rational singular point, or None for smooth hosts."""
        if self._singular is False:
            return None
        if self._singular is None:
            sings = singular_points_cubic(self.curve)
            self._singular = sings[0][0] if sings else False
            return self.singular_point()
        return self._singular

    def parametrization(self, tolerance=None) -> CubicParametrization:
        if self._param is None:
            self._param = CubicParametrization(self, tolerance)
        return self._param

    def contains_scalars(self, triple) -> bool:
        vals = promote_scalars(list(triple))
        return scalar_is_zero(self.curve.evaluate_scalars(*vals))


class CubicPoint:
    """A regular point of the host, in projective exact-scalar coordinates."""

    __slots__ = ("host", "xyz")

    def __init__(self, host: CubicHost, xyz, check: bool = True):
        vals = promote_scalars(list(xyz))
        if vals is None:
            raise TypeError("coordinates must be exact scalars")
        self.host = host
        self.xyz = tuple(_normalize_triple(vals))
        if check:
            if all(scalar_is_zero(c) for c in self.xyz):
                raise ValueError("zero projective triple")
            if not host.contains_scalars(self.xyz):
                raise ValueError("point is not on the host cubic")

    @classmethod
    def rational(cls, host, x, y) -> "CubicPoint":
        return cls(host, (Fraction(x), Fraction(y), Fraction(1)))

    @classmethod
    def from_point(cls, host, p: Point) -> "CubicPoint":
        sc = point_scalars([p])
        if sc is None:
            raise TypeError("point coordinates must exactify")
        one = domain_one(sc)
        return cls(host, (sc[0], sc[1], one))

    @property
    def is_identity(self) -> bool:
        return self == self.host.o

    def is_infinite(self) -> bool:
        return scalar_is_zero(self.xyz[2])

    def affine_point(self, tag=None) -> Point:
        x, y, z = self.xyz
        if scalar_is_zero(z):
            raise ValueError("infinite point has no affine coordinates")
        ax = scalar_div(x, z)
        ay = scalar_div(y, z)
        return Point(scalar_to_expr(ax), scalar_to_expr(ay), tag)

    def approx(self):
        p = self.affine_point()
        return p.approx()

    def __eq__(self, other):
        if not isinstance(other, CubicPoint) or other.host is not self.host:
            return False
        x1, y1, z1 = self.xyz
        x2, y2, z2 = other.xyz
        pairs = promote_scalars([x1, y1, z1, x2, y2, z2])
        x1, y1, z1, x2, y2, z2 = pairs
        return (
            scalar_is_zero(x1 * y2 - x2 * y1)
            and scalar_is_zero(x1 * z2 - x2 * z1)
            and scalar_is_zero(y1 * z2 - y2 * z1)
        )

    def __repr__(self):
        return f"CubicPoint({self.xyz})"


def _normalize_triple(vals):
    """Scale a projective triple to keep coordinate sizes bounded."""
    if all(isinstance(v, Fraction) for v in vals):
        from math import gcd, lcm

        mult = 1
        for v in vals:
            mult = lcm(mult, v.denominator)
        ints = [int(v * mult) for v in vals]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        return [Fraction(v) for v in ints]
    for v in reversed(vals):
        if not scalar_is_zero(v):
            return [scalar_div(w, v) for w in vals]
    return vals


def _poly_eval(coeffs, x, y, z, one):
    tot = None
    for (i, j, k), c in coeffs.items():
        term = one
        for _ in range(i):
            term = term * x
        for _ in range(j):
            term = term * y
        for _ in range(k):
            term = term * z
        term = term * c if isinstance(term, Fraction) else term.scale(c)
        tot = term if tot is None else tot + term
    return tot


def _poly_grad(coeffs, x, y, z, one):
    out = []
    for var in range(3):
        d: dict = {}
        for m, c in coeffs.items():
            if m[var]:
                mm = list(m)
                mm[var] -= 1
                d[tuple(mm)] = d.get(tuple(mm), Fraction(0)) + c * m[var]
        out.append(_poly_eval(d, x, y, z, one) if d else (one - one))
    return tuple(out)


def cubic_star(a: CubicPoint, b: CubicPoint) -> CubicPoint:
    """Third intersection of the host with the line ab (tangent when a = b)."""
    host = a.host
    if b.host is not host:
        raise ValueError("points live on different hosts")
    vals = promote_scalars(list(a.xyz) + list(b.xyz))
    P = tuple(vals[:3])
    Q = tuple(vals[3:])
    one = domain_one(vals)
    coeffs = host.curve.coeffs
    same = (
        scalar_is_zero(P[0] * Q[1] - P[1] * Q[0])
        and scalar_is_zero(P[0] * Q[2] - P[2] * Q[0])
        and scalar_is_zero(P[1] * Q[2] - P[2] * Q[1])
    )
    if same:
        L = _poly_grad(coeffs, P[0], P[1], P[2], one)
        zero = one - one
        aux = None
        for e in range(3):
            if e == 0:
                cand = [zero, L[2], -L[1]]
            elif e == 1:
                cand = [-L[2], zero, L[0]]
            else:
                cand = [L[1], -L[0], zero]
            if all(scalar_is_zero(cv) for cv in cand):
                continue
            # skip if proportional to P
            if (
                scalar_is_zero(cand[0] * P[1] - cand[1] * P[0])
                and scalar_is_zero(cand[0] * P[2] - cand[2] * P[0])
                and scalar_is_zero(cand[1] * P[2] - cand[2] * P[1])
            ):
                continue
            aux = tuple(cand)
            break
        if aux is None:
            raise LineInCurve("tangent line undetermined")
        c12 = _dot(_poly_grad(coeffs, aux[0], aux[1], aux[2], one), P)
        c03 = _poly_eval(coeffs, aux[0], aux[1], aux[2], one)
        if scalar_is_zero(c12) and scalar_is_zero(c03):
            raise LineInCurve("tangent line lies in the cubic")
        third = tuple(c03 * p - c12 * q for p, q in zip(P, aux))
    else:
        grad_p = _poly_grad(coeffs, P[0], P[1], P[2], one)
        grad_q = _poly_grad(coeffs, Q[0], Q[1], Q[2], one)
        c21 = _dot(grad_p, Q)
        c12 = _dot(grad_q, P)
        if scalar_is_zero(c21) and scalar_is_zero(c12):
            raise LineInCurve("chord lies in the cubic")
        third = tuple(c12 * p - c21 * q for p, q in zip(P, Q))
    result = CubicPoint(host, third, check=False)
    sing = host.singular_point()
    if sing is not None:
        sp = CubicPoint(host, tuple(Fraction(c) for c in sing), check=False)
        if result == sp:
            raise SingularHit("chord-tangent step landed on the singular point")
    return result


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cubic_add(a: CubicPoint, b: CubicPoint) -> CubicPoint:
    """Group operation with the real point at infinity as identity."""
    return cubic_star(cubic_star(a, b), a.host.o)


def cubic_neg(a: CubicPoint) -> CubicPoint:
    return cubic_star(a, a.host.omega)


def cubic_mul(k: int, a: CubicPoint) -> CubicPoint:
    host = a.host
    if k < 0:
        return cubic_mul(-k, cubic_neg(a))
    acc = host.o
    add = a
    while k:
        if k & 1:
            acc = cubic_add(acc, add)
        add = cubic_add(add, add)
        k >>= 1
    return acc


def cubic_concyclicity_check(a, b, c, d, cross_validate: bool = True) -> bool:
    """Four regular points lie on a generalised circle iff they sum to omega.

    Cross-validated against the geometric predicate: concyclicity of the
    embedded affine points, or collinearity of the other three when one of
    the four is the infinite identity point.
    """
    host = a.host
    total = cubic_add(cubic_add(a, b), cubic_add(c, d))
    group_says = total == host.omega
    if cross_validate:
        pts = [p for p in (a, b, c, d)]
        infinite = [p for p in pts if p.is_infinite()]
        finite = [p for p in pts if not p.is_infinite()]
        if len(infinite) == 0:
            geo = concyclic(*[p.affine_point() for p in pts])
        elif len(infinite) == 1 and infinite[0] == host.o:
            geo = collinear(*[p.affine_point() for p in finite])
        else:
            geo = None
        if geo is not None and geo != group_says:
            raise GroupGeometryMismatch(
                f"group criterion {group_says} but geometry says {geo}"
            )
    return group_says


# ---------------- ellipse group ----------------


class EllipseGroup:
    """x^2 + (y/s)^2 = 1 with the eccentric-angle group, identity at (1, 0)."""

    def __init__(self, s=Fraction(2)):
        s = Fraction(s)
        if s in (0, 1):
            raise ValueError("semi-axis ratio must differ from 0 and 1")
        self.s = s

    def embed(self, theta: Angle, tag=None) -> Point:
        return Point(
            RealExpr.cos(theta),
            RealExpr.from_fraction(self.s) * RealExpr.sin(theta),
            tag,
        )

    def conic(self) -> CurvePoly:
        # s^2 x^2 + y^2 - s^2 z^2
        s2 = self.s * self.s
        return CurvePoly({(2, 0, 0): s2, (0, 2, 0): Fraction(1), (0, 0, 2): -s2})

    @staticmethod
    def add(a: Angle, b: Angle) -> Angle:
        return a + b

    def concyclic(self, a: Angle, b: Angle, c: Angle, d: Angle,
                  cross_validate: bool = True) -> bool:
        """Angle-sum criterion, checked against the embedded predicate.

        With exactly one repeated angle the criterion asserts tangency of the
        circle through the three distinct points at the repeated one; this is
        certified via the vanishing derivative of the circle equation along
        the eccentric parametrization.
        """
        total = a + b + c + d
        group_says = total.is_zero()
        if cross_validate:
            angles = [a, b, c, d]
            distinct = []
            for t in angles:
                if t not in distinct:
                    distinct.append(t)
            if len(distinct) == 4:
                geo = concyclic(*[self.embed(t) for t in angles])
                if geo != group_says:
                    raise GroupGeometryMismatch("ellipse criterion mismatch")
            elif len(distinct) == 3:
                repeated = next(t for t in angles if angles.count(t) == 2)
                others = [t for t in distinct if t != repeated]
                if self._tangent_at(repeated, others) != group_says:
                    raise GroupGeometryMismatch(
                        "tangency at the repeated point disagrees with the criterion"
                    )
        return group_says

    def _row(self, theta: Angle):
        p = self.embed(theta)
        return (p.x * p.x + p.y * p.y, p.x, p.y, RealExpr.rational(1))

    def _derivative_row(self, theta: Angle):
        sin_t, cos_t = RealExpr.sin(theta), RealExpr.cos(theta)
        s = RealExpr.from_fraction(self.s)
        s2m1 = RealExpr.from_fraction(self.s * self.s - 1)
        return (
            RealExpr.rational(2) * s2m1 * sin_t * cos_t,
            -sin_t,
            s * cos_t,
            RealExpr.rational(0),
        )

    def _tangent_at(self, repeated: Angle, others) -> bool:
        """The circle through the three distinct points is tangent to the
        ellipse at the repeated point: the intersection has a double root
        there, i.e. the lifted rows plus the eccentric-derivative row are
        linearly dependent."""
        rows = [
            self._row(repeated),
            self._derivative_row(repeated),
            self._row(others[0]),
            self._row(others[1]),
        ]
        det = _det4_expr(rows)
        try:
            return certified_sign(det).sign == 0
        except PrecisionExhausted as exc:
            raise PredicateUndecided(str(exc)) from exc


# ---------------- concentric circles group ----------------


class ConcentricGroup:
    """sigma_1 = unit circle, sigma_2 = radius-r circle traversed backwards;
    elements are (eps, t) with embedding r^eps e^(+-2 pi i t)."""

    def __init__(self, r=Fraction(3)):
        self.r_expr = (
            RealExpr.from_fraction(Fraction(r)) if isinstance(r, (int, Fraction)) else r
        )
        if certified_sign(self.r_expr - RealExpr.rational(1)).sign <= 0:
            raise ValueError("outer radius must exceed 1")

    def embed(self, eps: int, t: Angle, tag=None) -> Point:
        if eps == 0:
            return Point(RealExpr.cos(t), RealExpr.sin(t), tag)
        return Point(
            self.r_expr * RealExpr.cos(t),
            -(self.r_expr * RealExpr.sin(t)),
            tag,
        )

    @staticmethod
    def add(a: tuple[int, Angle], b: tuple[int, Angle]) -> tuple[int, Angle]:
        return ((a[0] + b[0]) % 2, a[1] + b[1])

    def concyclic(self, a: Angle, b: Angle, c: Angle, d: Angle,
                  cross_validate: bool = True) -> bool:
        """Two points on each circle: criterion t-sum = 0 (parities cancel)."""
        total = a + b + c + d
        group_says = total.is_zero()
        if cross_validate:
            pts = [self.embed(0, a), self.embed(0, b), self.embed(1, c), self.embed(1, d)]
            if a != b and c != d:
                geo = concyclic(*pts)
                if geo != group_says:
                    raise GroupGeometryMismatch("concentric criterion mismatch")
            elif (a == b) != (c == d):
                if a == b:
                    others = [pts[2], pts[3]]
                    rep_eps, rep_t = 0, a
                else:
                    others = [pts[0], pts[1]]
                    rep_eps, rep_t = 1, c
                if self._tangent_at(rep_eps, rep_t, others) != group_says:
                    raise GroupGeometryMismatch(
                        "tangency at the repeated point disagrees with the criterion"
                    )
        return group_says

    def _tangent_at(self, eps: int, t: Angle, others) -> bool:
        """Double-root condition at the repeated point: the lifted rows of the
        three distinct points plus the tangent-derivative row are dependent."""
        p = self.embed(eps, t)
        sin_t, cos_t = RealExpr.sin(t), RealExpr.cos(t)
        if eps == 0:
            drow = (RealExpr.rational(0), -sin_t, cos_t, RealExpr.rational(0))
        else:
            drow = (
                RealExpr.rational(0),
                -(self.r_expr * sin_t),
                -(self.r_expr * cos_t),
                RealExpr.rational(0),
            )
        rows = [
            (p.x * p.x + p.y * p.y, p.x, p.y, RealExpr.rational(1)),
            drow,
        ]
        for q in others:
            rows.append((q.x * q.x + q.y * q.y, q.x, q.y, RealExpr.rational(1)))
        det = _det4_expr(rows)
        try:
            return certified_sign(det).sign == 0
        except PrecisionExhausted as exc:
            raise PredicateUndecided(str(exc)) from exc


# ---------------- parametrization facade and coset synthesis ----------------


def cubic_real_parametrization(host: CubicHost, tolerance=None) -> CubicParametrization:
    return host.parametrization(tolerance)


def acnodal_battery_host() -> CubicHost:
    """The inverse of the standard ellipse in the rational point (3/5, 8/5)."""
    ell = EllipseGroup()
    spec = InversionSpec.rational(Fraction(3, 5), Fraction(8, 5), 1)
    curve = invert_curve(spec, ell.conic())
    host = CubicHost(curve, singular=(Fraction(3, 5), Fraction(8, 5), Fraction(1)),
                     two_component=False)
    host._ellipse = ell
    host._inv_spec = spec
    return host


def two_component_battery_host(n: int, variant: str = "Z_half_times_Z2") -> CubicHost:
    reg = two_component_host(n, variant)
    return CubicHost(reg.curve, registry=reg, singular=False, two_component=True)


def synthesize_coset(host: CubicHost, n: int, variant: str = "cyclic",
                     h_index: int = 0, verify: bool = True):
    """Order-n coset H + x with 4x = omega - h, as exact affine points.

    Exact synthesis routes: the acnodal battery host (any n >= 3, cyclic, any
    h) and the two-component registry hosts (n = 8 cyclic / Z4xZ2, n = 12
    Z6xZ2, h = identity). The numeric parametrization assigns and checks the
    (k, component) provenance of every synthesized point.
    """
    if variant not in ("cyclic", "Z_half_times_Z2"):
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "Z_half_times_Z2":
        if host._two_component is False:
            raise HostUnsupported("Z_(n/2) x Z_2 cosets need a two-component host")
        if n % 4:
            raise HostUnsupported("Z_(n/2) x Z_2 cosets need n = 0 mod 4")
    if getattr(host, "_ellipse", None) is not None and variant == "cyclic":
        pts = _synthesize_acnodal(host, n, h_index)
    elif host.registry is not None:
        if h_index % n:
            raise HostUnsupported("registry hosts carry the identity-shift coset only")
        raw = host.registry.coset_points(n, variant)
        pts = [
            Point.rational(x, y, tag=f"cubic:{i}")
            for i, (x, y) in enumerate(raw)
        ]
    else:
        pts = _synthesize_numeric(host, n, variant, h_index)
    if verify:
        _verify_coset(host, pts, n, variant)
    return pts


def _synthesize_acnodal(host: CubicHost, n: int, h_index: int):
    """Images of the shifted ellipse subgroup under the battery inversion."""
    ell = host._ellipse
    spec = host._inv_spec
    pts = []
    for k in range(n):
        theta = Angle(4 * k - h_index, 4 * n)
        p = ell.embed(theta)
        img = invert_point(spec, p)
        img.tag = f"cubic:k={k}"
        if not host.curve.contains_point(img):
            raise AssertionError("synthesized point missed the host")
        pts.append(img)
    return pts


def _synthesize_numeric(host: CubicHost, n: int, variant: str, h_index: int):
    """Parametrization-driven synthesis with Newton refinement; points are
    returned as exact dyadic rationals with residual below 2^-200 after
    refinement, rationally reconstructed onto the host when possible."""
    param = host.parametrization()
    with mp.workprec(280):
        # locate omega: the finite crossing of the asymptote
        rc = param.rc
        w_x = rc.pole
        w_y = -rc.C(rc.pole) / rc.B(rc.pole)
        u_omega, comp_omega = param.u_of(*rc.from_rotated(w_x, w_y))
        if comp_omega != 0:
            raise ToleranceExceeded("omega left the identity component")
        if h_index % n:
            raise HostUnsupported("numeric synthesis supports the identity shift only")
        ux = mp.mpf(u_omega) / 4
        out = []
        if variant == "cyclic":
            targets = [((ux + mp.mpf(k) / n) % 1, 0) for k in range(n)]
        else:
            half = n // 2
            targets = []
            for k in range(half):
                for epsb in (0, 1):
                    targets.append(((ux + mp.mpf(k) / half) % 1, epsb))
        for i, (u, compb) in enumerate(targets):
            x, y = param.point_at(u, compb)
            x, y = _newton_refine(host, x, y)
            out.append(
                Point.rational(_mpf_to_fraction(x), _mpf_to_fraction(y), tag=f"cubic:k={i}")
            )
    return out


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _bc = mp.mpf(x)._mpf_
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def _newton_refine(host: CubicHost, x, y, steps=6):
    aff = {m[:2]: c for m, c in host.curve.coeffs.items()}

    def f(xx, yy):
        tot = mp.mpf(0)
        for (i, j, _k), c in host.curve.coeffs.items():
            tot += mp.mpf(c.numerator) / mp.mpf(c.denominator) * xx**i * yy**j
        return tot

    def fy(xx, yy):
        tot = mp.mpf(0)
        for (i, j, _k), c in host.curve.coeffs.items():
            if j:
                tot += mp.mpf(c.numerator) / mp.mpf(c.denominator) * j * xx**i * yy ** (j - 1)
        return tot

    for _ in range(steps):
        y = y - f(x, y) / fy(x, y)
    return x, y


def _verify_coset(host: CubicHost, pts, n: int, variant: str):
    """Parametrization pass: u-values must form the coset pattern within the
    stated tolerance, and component bits must match the variant."""
    param = host.parametrization()
    tol = float(param.tolerance)
    us = []
    for p in pts:
        x, y = p.approx()
        us.append(param.u_group(x, y))
    ident_us = sorted(u for (u, c) in us if c == 0)
    oval_us = sorted(u for (u, c) in us if c == 1)
    if variant == "Z_half_times_Z2":
        if len(oval_us) != n // 2 or len(ident_us) != n // 2:
            raise ToleranceExceeded("component split does not match the variant")
        groups = [(ident_us, n // 2), (oval_us, n // 2)]
    elif ident_us and oval_us:
        # a cyclic coset may wind through both components, alternating
        if len(oval_us) != n // 2 or len(ident_us) != n // 2:
            raise ToleranceExceeded("winding cyclic coset is unbalanced")
        groups = [(ident_us, n // 2), (oval_us, n // 2)]
    else:
        # wholly inside one component (either one: a coset need not meet the
        # identity component)
        arr = ident_us or oval_us
        groups = [(arr, n)]
    for arr, order in groups:
        for i in range(len(arr)):
            gap = float((arr[(i + 1) % len(arr)] - arr[i]) % 1)
            if abs(gap - 1.0 / order) > 10 * tol:
                raise ToleranceExceeded(
                    f"coset spacing {gap} differs from 1/{order}"
                )

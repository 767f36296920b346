"""Exact algebra of plane algebraic curves.

Homogeneous rational polynomials, multiplicities at the circular points
[+-i : 1 : 0], curve inversion in closed form, the inversion case table for
low circular degree, singular-point classification for cubics, and the robust
bicircular-quartic fitter.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm

import sympy

from .errors import (
    CaseMismatch,
    IrrationalSingularity,
    PredicateUndecided,
    UnsupportedDegree,
)
from .exactnum import QuadraticElement, exactify, scalar_as_fraction, scalar_is_zero
from .geometry import InversionSpec, Point, domain_one, point_scalars, promote_scalars

# ---------------- polynomial helpers (dict-of-monomials, Fraction coeffs) ----


def _padd(a, b):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, Fraction(0)) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a, b):
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, Fraction(0)) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _pscale(a, c):
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def _affine_degree(p):
    return max((m[0] + m[1] for m in p), default=-1)


def _translate2(p, dx, dy):
    """p(x + dx, y + dy) for a 2-variable dict polynomial."""
    from math import comb

    out: dict = {}
    for (i, j), c in p.items():
        for a in range(i + 1):
            for b in range(j + 1):
                m = (a, b)
                v = (
                    c
                    * comb(i, a)
                    * comb(j, b)
                    * dx ** (i - a)
                    * dy ** (j - b)
                )
                if v:
                    out[m] = out.get(m, Fraction(0)) + v
    return {m: c for m, c in out.items() if c}


def _divide_exact2(num, den):
    """Exact division of 2-var dict polynomials; returns quotient or None."""
    num = dict(num)
    q: dict = {}
    den_items = sorted(den.items(), key=lambda mc: (mc[0][0] + mc[0][1], mc[0]), reverse=True)
    dlead_m, dlead_c = den_items[0]
    while num:
        m, c = max(num.items(), key=lambda mc: (mc[0][0] + mc[0][1], mc[0]))
        qm = (m[0] - dlead_m[0], m[1] - dlead_m[1])
        if qm[0] < 0 or qm[1] < 0:
            return None
        qc = c / dlead_c
        q[qm] = q.get(qm, Fraction(0)) + qc
        for dm, dc in den.items():
            mm = (qm[0] + dm[0], qm[1] + dm[1])
            v = num.get(mm, Fraction(0)) - qc * dc
            if v:
                num[mm] = v
            else:
                num.pop(mm, None)
    return q


class CurvePoly:
    """Homogeneous trivariate polynomial with rational coefficients.

    Canonical form: integer coprime coefficients with the leading
    graded-lexicographic coefficient positive.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, coeffs: dict):
        coeffs = {m: Fraction(c) for m, c in coeffs.items() if c}
        if not coeffs:
            raise ValueError("zero polynomial")
        degs = {sum(m) for m in coeffs}
        if len(degs) != 1:
            raise ValueError("not homogeneous")
        self.degree = degs.pop()
        mult = 1
        for c in coeffs.values():
            mult = lcm(mult, c.denominator)
        ints = {m: int(c * mult) for m, c in coeffs.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, abs(v))
        ints = {m: v // g for m, v in ints.items()}
        lead = max(ints.keys())  # graded-lex on equal-degree tuples = lex
        if ints[lead] < 0:
            ints = {m: -v for m, v in ints.items()}
        self.coeffs = {m: Fraction(v) for m, v in sorted(ints.items(), reverse=True)}

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_affine(cls, affine: dict, degree: int | None = None) -> "CurvePoly":
        """Homogenize a 2-variable dict polynomial with z."""
        d = _affine_degree(affine)
        if degree is None:
            degree = d
        if degree < d:
            raise ValueError("degree too small to homogenize")
        return cls({(i, j, degree - i - j): c for (i, j), c in affine.items()})

    def affine(self) -> dict:
        """Dehomogenize at z = 1 (drops pure line-at-infinity components)."""
        out: dict = {}
        for (i, j, _k), c in self.coeffs.items():
            out[(i, j)] = out.get((i, j), Fraction(0)) + c
        return {m: c for m, c in out.items() if c}

    # -- evaluation ----------------------------------------------------------
    def evaluate_fractions(self, x: Fraction, y: Fraction, z: Fraction) -> Fraction:
        tot = Fraction(0)
        for (i, j, k), c in self.coeffs.items():
            tot += c * x**i * y**j * z**k
        return tot

    def evaluate_scalars(self, x, y, z):
        """Evaluate at a point given by exact scalars in one domain."""
        vals = promote_scalars([x, y, z])
        x, y, z = vals
        one = domain_one(vals)
        tot = None
        for (i, j, k), c in self.coeffs.items():
            term = one
            for _ in range(i):
                term = term * x
            for _ in range(j):
                term = term * y
            for _ in range(k):
                term = term * z
            term = term.scale(c) if not isinstance(term, Fraction) else term * c
            tot = term if tot is None else tot + term
        return tot

    def contains_point(self, p: Point) -> bool:
        sc = point_scalars([p])
        if sc is None:
            raise PredicateUndecided("curve membership needs exact coordinates")
        one = domain_one(sc)
        return scalar_is_zero(self.evaluate_scalars(sc[0], sc[1], one))

    def partial(self, var: int) -> "CurvePoly | None":
        out = {}
        for m, c in self.coeffs.items():
            if m[var]:
                mm = list(m)
                mm[var] -= 1
                out[tuple(mm)] = c * m[var]
        return CurvePoly(out) if out else None

    # -- structure -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, CurvePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __repr__(self):
        terms = []
        for (i, j, k), c in self.coeffs.items():
            mono = "".join(
                f"{v}^{e}" if e > 1 else (v if e == 1 else "")
                for v, e in (("x", i), ("y", j), ("z", k))
            )
            terms.append(f"{c}*{mono}" if mono else f"{c}")
        return "CurvePoly(" + " + ".join(terms) + ")"

    def to_json(self):
        return {
            "degree": self.degree,
            "coeffs": [
                {"i": i, "j": j, "k": k, "c": str(c)}
                for (i, j, k), c in self.coeffs.items()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "CurvePoly":
        coeffs = {
            (t["i"], t["j"], t["k"]): Fraction(t["c"]) for t in obj["coeffs"]
        }
        p = cls(coeffs)
        if p.degree != obj["degree"]:
            raise ValueError("degree field disagrees with the monomials")
        return p

    def sympy_expr(self, xs=None):
        x, y, z = xs or sympy.symbols("x y z")
        return sympy.Add(
            *[
                sympy.Rational(c) * x**i * y**j * z**k
                for (i, j, k), c in self.coeffs.items()
            ]
        )


def curve_from_circle(g) -> CurvePoly:
    """The conic t(x^2+y^2) + l1 xz + l2 yz + l0 z^2, or the line for t = 0."""
    t, l1, l2, l0 = g.t, g.l1, g.l2, g.l0
    if not all(isinstance(c, Fraction) for c in (t, l1, l2, l0)):
        raise TypeError("rational circles only")
    if t == 0:
        return CurvePoly({(1, 0, 0): l1, (0, 1, 0): l2, (0, 0, 1): l0})
    return CurvePoly(
        {(2, 0, 0): t, (0, 2, 0): t, (1, 0, 1): l1, (0, 1, 1): l2, (0, 0, 2): l0}
    )


# ---------------- circular multiplicities and classes ----------------


def _gauss(re=0, im=0) -> QuadraticElement:
    return QuadraticElement(Fraction(re), Fraction(im), -1)


def _partial_at_alpha(f: CurvePoly, a: int, b: int, c: int) -> QuadraticElement:
    """d^(a+b+c) f / dx^a dy^b dz^c evaluated at [i : 1 : 0]."""
    from math import perm

    tot = _gauss()
    for (i, j, k), coeff in f.coeffs.items():
        if k != c or i < a or j < b:
            continue
        mag = coeff * perm(i, a) * perm(j, b) * perm(k, c)
        e = (i - a) % 4  # i^(i-a)
        unit = [(1, 0), (0, 1), (-1, 0), (0, -1)][e]
        tot = tot + _gauss(mag * unit[0], mag * unit[1])
    return tot


def multiplicity_at_circular_points(f: CurvePoly) -> tuple[int, int]:
    """Smallest total order of a nonvanishing partial derivative at alpha and
    beta; equal for real polynomials (the points are conjugate)."""
    for order in range(0, f.degree + 1):
        for a in range(order + 1):
            for b in range(order - a + 1):
                c = order - a - b
                if not _partial_at_alpha(f, a, b, c).is_zero():
                    return order, order
    return f.degree + 1, f.degree + 1  # identically divisible; unreachable for f != 0


class CircularClass:
    GENERALISED_CIRCLE = "GeneralisedCircleClass"
    NON_CIRCULAR_CONIC = "NonCircularConic"
    CIRCULAR_CUBIC = "CircularCubic"
    BICIRCULAR_QUARTIC = "BicircularQuartic"
    OTHER = "Other"

    __slots__ = ("kind", "degree", "mult_alpha", "mult_beta")

    def __init__(self, kind, degree, mult_alpha, mult_beta):
        self.kind = kind
        self.degree = degree
        self.mult_alpha = mult_alpha
        self.mult_beta = mult_beta

    def __eq__(self, other):
        return (
            isinstance(other, CircularClass)
            and self.kind == other.kind
            and (self.kind != self.OTHER or (self.degree, self.mult_alpha) == (other.degree, other.mult_alpha))
        )

    def __repr__(self):
        if self.kind == self.OTHER:
            return f"Other(degree={self.degree}, mult={self.mult_alpha},{self.mult_beta})"
        return self.kind


def circular_class(f: CurvePoly) -> CircularClass:
    """Match against the normal forms of low circular degree."""
    if f.degree > 4:
        raise UnsupportedDegree(f"degree {f.degree} > 4")
    ma, mb = multiplicity_at_circular_points(f)
    d = f.degree
    if d == 1:
        return CircularClass(CircularClass.GENERALISED_CIRCLE, d, ma, mb)
    if d == 2:
        if ma >= 1:
            return CircularClass(CircularClass.GENERALISED_CIRCLE, d, ma, mb)
        return CircularClass(CircularClass.NON_CIRCULAR_CONIC, d, ma, mb)
    if d == 3:
        if ma >= 1:
            return CircularClass(CircularClass.CIRCULAR_CUBIC, d, ma, mb)
        return CircularClass(CircularClass.OTHER, d, ma, mb)
    if ma >= 2:
        return CircularClass(CircularClass.BICIRCULAR_QUARTIC, d, ma, mb)
    return CircularClass(CircularClass.OTHER, d, ma, mb)


def circular_degree(f: CurvePoly) -> int:
    """Circular degree for curves of plain degree <= 4."""
    cls = circular_class(f)
    if cls.kind in (CircularClass.GENERALISED_CIRCLE,):
        return 1
    if cls.kind in (
        CircularClass.NON_CIRCULAR_CONIC,
        CircularClass.CIRCULAR_CUBIC,
        CircularClass.BICIRCULAR_QUARTIC,
    ):
        return 2
    d, m = cls.degree, cls.mult_alpha
    # smallest k with (curve + (k - m) infinity lines...) : d - m <= k
    return d - m


# ---------------- curve inversion ----------------


def invert_curve(spec: InversionSpec, f: CurvePoly) -> CurvePoly:
    """Inverse curve, exactly: translate the centre to the origin, substitute
    x -> r^2 x / (x^2+y^2), y -> r^2 y / (x^2+y^2), clear denominators, strip
    every factor of (x^2+y^2) introduced by the clearing, translate back and
    canonicalize. Double inversion recovers the curve up to scaling."""
    cx = exactify(spec.center.x)
    cy = exactify(spec.center.y)
    r2 = exactify(spec.radius_squared)
    if not all(isinstance(v, Fraction) for v in (cx, cy, r2)):
        raise TypeError("invert_curve needs a rational inversion spec")
    aff = f.affine()
    if not aff:
        raise ValueError("curve has no affine part")
    aff = _translate2(aff, cx, cy)
    d = _affine_degree(aff)
    rho = {(2, 0): Fraction(1), (0, 2): Fraction(1)}
    out: dict = {}
    for (i, j), c in aff.items():
        term = {(i, j): c * r2 ** (i + j)}
        rho_pow = {(0, 0): Fraction(1)}
        for _ in range(d - i - j):
            rho_pow = _pmul(rho_pow, rho)
        out = _padd(out, _pmul(term, rho_pow))
    while True:
        q = _divide_exact2(out, rho)
        if q is None or not q:
            break
        out = q
    if _affine_degree(out) < 1:
        raise ValueError("inverse curve degenerates to a constant")
    out = _translate2(out, -cx, -cy)
    return CurvePoly.from_affine(out)


# ---------------- the inversion case table ----------------


def _centre_multiplicity(f: CurvePoly, cx: Fraction, cy: Fraction) -> int:
    """Multiplicity of the affine point (cx, cy) on f (0 if off the curve)."""
    aff = _translate2(f.affine(), cx, cy)
    if not aff:
        return 0
    return min(i + j for (i, j) in aff)


def verify_inversion_case_table(f: CurvePoly, spec: InversionSpec) -> str:
    """Predict the class of the inverse from the case table of circular
    degrees and assert the computed inverse matches. Returns the label."""
    cx = exactify(spec.center.x)
    cy = exactify(spec.center.y)
    k = circular_degree(f)
    if k > 3:
        raise UnsupportedDegree("case table covers circular degree <= 3")
    mult = _centre_multiplicity(f, cx, cy)
    if k == 1:
        predicted = ("line", 1, 0) if mult >= 1 else ("circle", 2, 1)
    elif k == 2:
        if mult >= 2:
            predicted = ("non-circular conic", 2, 0)
        elif mult == 1:
            predicted = ("circular cubic", 3, 1)
        else:
            predicted = ("bicircular quartic", 4, 2)
    else:
        if mult >= 3:
            predicted = ("non-circular cubic", 3, 0)
        elif mult == 2:
            predicted = ("circular quartic", 4, 1)
        elif mult == 1:
            predicted = ("2-circular quintic", 5, 2)
        else:
            predicted = ("3-circular sextic", 6, 3)
    label, want_degree, want_mult = predicted
    g = invert_curve(spec, f)
    ma, _ = multiplicity_at_circular_points(g)
    got = (g.degree, ma)
    if got != (want_degree, want_mult):
        raise CaseMismatch(
            f"predicted {label} (degree {want_degree}, circular mult {want_mult}) "
            f"but inverse has degree {got[0]}, circular mult {got[1]}"
        )
    if g.degree <= 4:
        cls = circular_class(g)
        expected_kind = {
            "line": CircularClass.GENERALISED_CIRCLE,
            "circle": CircularClass.GENERALISED_CIRCLE,
            "non-circular conic": CircularClass.NON_CIRCULAR_CONIC,
            "circular cubic": CircularClass.CIRCULAR_CUBIC,
            "bicircular quartic": CircularClass.BICIRCULAR_QUARTIC,
            "non-circular cubic": CircularClass.OTHER,
            "circular quartic": CircularClass.OTHER,
        }[label]
        if cls.kind != expected_kind:
            raise CaseMismatch(f"inverse classified {cls!r}, expected {label}")
    return label


# ---------------- bicircular quartic fitting ----------------


class FitReport:
    __slots__ = ("quartic", "inliers", "outliers", "residual_certified")

    def __init__(self, quartic, inliers, outliers, residual_certified):
        self.quartic = quartic
        self.inliers = inliers
        self.outliers = outliers
        self.residual_certified = residual_certified

    def to_json(self):
        return {
            "quartic": self.quartic.to_json() if self.quartic else None,
            "inliers": list(self.inliers),
            "outliers": list(self.outliers),
            "residual_certified": self.residual_certified,
        }


def _family_row(x, y, one):
    """Affine evaluation row of the 9-parameter family
    t rho^2 + (ux+vy) rho + q(x, y, 1): [rho^2, x rho, y rho, x^2, xy, y^2, x, y, 1]."""
    rho = x * x + y * y
    return [
        rho * rho,
        x * rho,
        y * rho,
        x * x,
        x * y,
        y * y,
        x * one,
        y * one,
        one,
    ]


def _quartic_from_vector(vec) -> CurvePoly:
    t, u, v, qxx, qxy, qyy, qx, qy, qz = vec
    coeffs = {
        (4, 0, 0): t,
        (2, 2, 0): 2 * t,
        (0, 4, 0): t,
        (3, 0, 1): u,
        (1, 2, 1): u,
        (2, 1, 1): v,
        (0, 3, 1): v,
        (2, 0, 2): qxx,
        (1, 1, 2): qxy,
        (0, 2, 2): qyy,
        (1, 0, 3): qx,
        (0, 1, 3): qy,
        (0, 0, 4): qz,
    }
    return CurvePoly(coeffs)


def _nullspace_rref(rows, one):
    """Reduced-basis nullspace of a 9-column system over an exact field."""
    m = [list(r) for r in rows]
    ncols = 9
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if not scalar_is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = _inv_scalar(m[r][c], one)
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not scalar_is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [None] * ncols
        for c in range(ncols):
            vec[c] = one if c == fc else (one - one)
        for ri, pc in enumerate(pivots):
            vec[pc] = -(m[ri][fc])
        basis.append(vec)
    return basis


def _inv_scalar(v, one):
    if isinstance(v, Fraction):
        return 1 / v
    return v.inverse()


def fit_bicircular_quartic(points, max_outliers: int) -> FitReport:
    """Deterministic RANSAC over the 9-dimensional quartic family.

    200 nine-point subsets drawn with seed 0; the first family member that
    exactly contains at least n - max_outliers points is returned together
    with its certified inlier set.
    """
    n = len(points)
    if n < 10:
        raise ValueError("need at least 10 points")
    sc = point_scalars(points)
    if sc is None:
        raise PredicateUndecided("fitting needs exactly representable coordinates")
    one = domain_one(sc)
    coords = [(sc[2 * i], sc[2 * i + 1]) for i in range(n)]
    rows = [_family_row(x, y, one) for (x, y) in coords]
    rng = random.Random(0)
    threshold = n - max_outliers
    for _ in range(200):
        sample = rng.sample(range(n), 9)
        basis = _nullspace_rref([rows[i] for i in sample], one)
        for vec in basis:
            fracs = [scalar_as_fraction(v) for v in vec]
            if any(f is None for f in fracs):
                continue
            if all(f == 0 for f in fracs):
                continue
            quartic = _quartic_from_vector(fracs)
            inliers = []
            for i, row in enumerate(rows):
                val = None
                for f, entry in zip(fracs, row):
                    if f:
                        term = entry.scale(f) if not isinstance(entry, Fraction) else entry * f
                        val = term if val is None else val + term
                if val is None or scalar_is_zero(val):
                    inliers.append(i)
            if len(inliers) >= threshold:
                outliers = [i for i in range(n) if i not in inliers]
                return FitReport(quartic, inliers, outliers, True)
    return FitReport(None, [], list(range(n)), False)


def inversion_case_battery():
    """Twelve (name, curve, centre) pairs covering every clause of the
    low-circular-degree inversion case table, including the ellipse/acnodal
    pair in both directions."""
    F = Fraction
    unit_circle = CurvePoly({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1})
    line = CurvePoly({(1, 0, 0): 1, (0, 0, 1): -1})  # x = 1
    ellipse = CurvePoly({(2, 0, 0): 1, (0, 2, 0): 2, (1, 0, 1): -2})  # (x-1)^2+2y^2=1
    acnodal = CurvePoly(
        {(3, 0, 0): 2, (1, 2, 0): 2, (2, 0, 1): -1, (0, 2, 1): -2}
    )  # (2x-z)(x^2+y^2) - y^2 z
    bicirc = CurvePoly({(4, 0, 0): 1, (2, 2, 0): 2, (0, 4, 0): 1, (0, 0, 4): -1})
    three_lines = CurvePoly({(2, 1, 0): 1, (1, 2, 0): -1})  # x y (x - y)
    nodal = CurvePoly({(0, 2, 1): 1, (3, 0, 0): -1, (2, 0, 1): -1})  # y^2 z = x^3 + x^2 z
    return [
        ("circle in a point on it", unit_circle, (F(1), F(0))),
        ("circle in a point off it", unit_circle, (F(3), F(0))),
        ("line in a point on it", line, (F(1), F(7))),
        ("ellipse in a point on it", ellipse, (F(0), F(0))),
        ("acnodal cubic in its singularity", acnodal, (F(0), F(0))),
        ("ellipse in a point off it", ellipse, (F(5), F(7))),
        ("circular cubic in a regular point on it", acnodal, (F(1, 2), F(0))),
        ("bicircular quartic in a point off it", bicirc, (F(3), F(3))),
        ("concurrent lines in the triple point", three_lines, (F(0), F(0))),
        ("nodal cubic in its node", nodal, (F(0), F(0))),
        ("non-circular cubic in a regular point", nodal, (F(-1), F(0))),
        ("non-circular cubic in a point off it", nodal, (F(2), F(7))),
    ]


# ---------------- cubic singularities ----------------


def singular_points_cubic(f: CurvePoly):
    """Rational singular points of an irreducible cubic with classification.

    Returns a list of ((x, y, z) projective rational tuple, label) with label
    in {"acnode", "crunode", "cusp"}. Raises IrrationalSingularity when the
    curve is singular but the singular point has no rational representative.
    """
    if f.degree != 3:
        raise UnsupportedDegree("cubic expected")
    x, y, z = sympy.symbols("x y z")
    expr = f.sympy_expr((x, y, z))
    factors = sympy.factor_list(expr)[1]
    nontrivial = [(p, e) for p, e in factors if p.free_symbols]
    if len(nontrivial) != 1 or nontrivial[0][1] != 1:
        raise ValueError("cubic is reducible over the rationals")
    fx, fy, fz = (sympy.diff(expr, v) for v in (x, y, z))
    sols = set()
    # affine chart z = 1
    for sol in sympy.solve(
        [fx.subs(z, 1), fy.subs(z, 1), expr.subs(z, 1)], [x, y], dict=True
    ):
        vx, vy = sol.get(x), sol.get(y)
        if vx is None or vy is None:
            continue
        if vx.is_rational and vy.is_rational:
            sols.add((Fraction(str(vx)), Fraction(str(vy)), Fraction(1)))
        elif vx.is_real and vy.is_real:
            raise IrrationalSingularity(f"singular point at irrational ({vx}, {vy})")
    # chart at infinity z = 0: common zeros of the partials on the line
    inf_system = [p.subs(z, 0) for p in (fx, fy, fz)]
    for vx, vy in ((1, sympy.Symbol("s")), (sympy.Symbol("s"), 1)):
        s = sympy.Symbol("s")
        eqs = [p.subs({x: vx, y: vy}) for p in inf_system]
        eqs = [e for e in eqs if e != 0]
        if not eqs:
            continue
        common = sympy.solve(eqs, [s], dict=True)
        for sol in common:
            v = sol.get(s)
            if v is None:
                continue
            if v.is_rational:
                px = Fraction(1) if vx == 1 else Fraction(str(v))
                py = Fraction(str(v)) if vx == 1 else Fraction(1)
                # verify it is a genuine singular point of the projective curve
                if all(
                    _eval_rational(p, px, py, Fraction(0)) == 0
                    for p in (fx, fy, fz)
                ):
                    sols.add((px, py, Fraction(0)))
    out = []
    for (px, py, pz) in sorted(sols):
        out.append(((px, py, pz), _classify_double_point(f, px, py, pz)))
    return out


def _eval_rational(expr, px, py, pz):
    subs = expr.subs({sympy.Symbol("x"): sympy.Rational(px), sympy.Symbol("y"): sympy.Rational(py), sympy.Symbol("z"): sympy.Rational(pz)})
    return Fraction(str(subs))


def _classify_double_point(f: CurvePoly, px, py, pz) -> str:
    """Local quadratic form discriminant at a double point."""
    if pz != 0:
        aff = _translate2(f.affine(), px / pz, py / pz)
        quad = {m: c for m, c in aff.items() if sum(m) == 2}
        A = quad.get((2, 0), Fraction(0))
        B = quad.get((1, 1), Fraction(0))
        C = quad.get((0, 2), Fraction(0))
    else:
        # move the infinite point into an affine chart (swap z with the
        # nonzero coordinate) and classify there
        if px != 0:
            swapped = {(k, j, i): c for (i, j, k), c in f.coeffs.items()}
        else:
            swapped = {(i, k, j): c for (i, j, k), c in f.coeffs.items()}
        g = CurvePoly(swapped)
        if px != 0:
            return _classify_double_point(g, pz, py, px)
        return _classify_double_point(g, px, pz, py)
    disc = B * B - 4 * A * C
    if disc < 0:
        return "acnode"
    if disc > 0:
        return "crunode"
    return "cusp"

"""Generators for the extremal configurations and the closed-form count
oracle, including the piecewise minimum/maximum value tables.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import InvalidParameters, NoWitnessKnown
from .exactnum import Angle, RealExpr, certified_sign
from .geometry import InversionSpec, Point, invert_point
from .groups import (
    EllipseGroup,
    acnodal_battery_host,
    synthesize_coset,
    two_component_battery_host,
)

ELLIPSE_SUBGROUP = "ellipse-subgroup"
CUBIC_COSET = "cubic-coset"
ALIGNED = "aligned"
OFFSET = "offset"
PUNCTURED = "punctured"
INVERTED = "inverted"
INVERTED_ELLIPSE = "inverted-ellipse"
INVERTED_CUBIC = "inverted-cubic"

_KINDS = {
    ELLIPSE_SUBGROUP,
    CUBIC_COSET,
    ALIGNED,
    OFFSET,
    PUNCTURED,
    INVERTED,
    INVERTED_ELLIPSE,
    INVERTED_CUBIC,
}


class ConstructionSpec:
    """A configuration family member: kind plus parameters."""

    def __init__(self, kind: str, **params):
        if kind not in _KINDS:
            raise InvalidParameters(f"unknown construction kind {kind!r}")
        self.kind = kind
        self.params = params
        self._validate()

    def _validate(self):
        p = self.params
        k = self.kind
        if k == ELLIPSE_SUBGROUP:
            n = p.get("n")
            if not isinstance(n, int) or n < 3:
                raise InvalidParameters("ellipse subgroup needs integer n >= 3")
            s = Fraction(p.get("s", 2))
            if s in (0, 1):
                raise InvalidParameters("semi-axis ratio must avoid 0 and 1")
            p["s"] = s
        elif k == CUBIC_COSET:
            n = p.get("n")
            variant = p.get("variant", "cyclic")
            if not isinstance(n, int) or n < 3:
                raise InvalidParameters("cubic coset needs integer n >= 3")
            if variant not in ("cyclic", "Z_half_times_Z2"):
                raise InvalidParameters(f"unknown coset variant {variant!r}")
            if variant == "Z_half_times_Z2" and n % 4:
                raise InvalidParameters("the Z_(n/2) x Z_2 variant needs n = 0 mod 4")
            p.setdefault("host", "acnodal" if variant == "cyclic" else "two-component")
            p.setdefault("h", 0)
        elif k in (ALIGNED, OFFSET):
            m = p.get("m")
            if not isinstance(m, int) or m < 3:
                raise InvalidParameters("double polygons need integer m >= 3")
            self._radius(p, m)
        elif k in (PUNCTURED, INVERTED):
            m = p.get("m")
            if not isinstance(m, int) or m < 4:
                raise InvalidParameters("punctured double polygons need m >= 4")
            self._radius(p, m)
            removed = p.setdefault("removed", 0)
            if not (0 <= removed < m):
                raise InvalidParameters("removed index out of range")
        elif k in (INVERTED_ELLIPSE, INVERTED_CUBIC):
            n = p.get("n")
            if not isinstance(n, int) or n < 3:
                raise InvalidParameters("inverted coset needs integer n >= 3")
            p.setdefault("s", Fraction(2))

    @staticmethod
    def _radius(p, m):
        k = p.get("special_k")
        if k is not None:
            if not isinstance(k, int) or k < 1 or 4 * k >= m:
                raise InvalidParameters(
                    "special radius needs integer k with 0 < k < m/4"
                )
            p.pop("r", None)
            return
        r = Fraction(p.get("r", 3))
        if r <= 1:
            raise InvalidParameters("outer radius must exceed 1")
        # genericity: r must avoid the tangent radii 1/cos(2 pi j / m)
        for j in range(1, m):
            if 4 * j >= m and 4 * (m - j) >= m:
                continue
            val = RealExpr.from_fraction(r) * RealExpr.cos(Angle(j, m)) - RealExpr.rational(1)
            if certified_sign(val).sign == 0:
                raise InvalidParameters(
                    f"radius {r} is a tangent radius (j={j}); pass special_k instead"
                )
        p["r"] = r

    def radius_expr(self) -> RealExpr:
        k = self.params.get("special_k")
        m = self.params["m"]
        if k is not None:
            return RealExpr.rational(1) / RealExpr.cos(Angle(k, m))
        return RealExpr.from_fraction(self.params["r"])

    def to_json(self):
        params = {}
        for key, val in self.params.items():
            params[key] = str(val) if isinstance(val, Fraction) else val
        return {"kind": self.kind, "params": params}

    @classmethod
    def from_json(cls, obj) -> "ConstructionSpec":
        params = dict(obj.get("params", {}))
        for key in ("r", "s"):
            if key in params and isinstance(params[key], str):
                params[key] = Fraction(params[key])
        return cls(obj["kind"], **params)

    def __repr__(self):
        return f"ConstructionSpec({self.kind}, {self.params})"


class ExpectedCounts:
    """Closed-form counts; None marks values the source gives only
    asymptotically."""

    def __init__(self, ordinary_circles, ordinary_generalised, four_point):
        self.ordinary_circles = ordinary_circles
        self.ordinary_generalised = ordinary_generalised
        self.four_point = four_point
        if (
            ordinary_circles is not None
            and ordinary_generalised is not None
            and ordinary_circles > ordinary_generalised
        ):
            raise AssertionError("ordinary circles exceed ordinary generalised")

    def __repr__(self):
        return (
            f"ExpectedCounts(oc={self.ordinary_circles}, "
            f"og={self.ordinary_generalised}, four={self.four_point})"
        )


# ---------------- generation ----------------


def generate(spec: ConstructionSpec):
    """Exact point set of the construction, with provenance tags."""
    k = spec.kind
    p = spec.params
    if k == ELLIPSE_SUBGROUP:
        group = EllipseGroup(p["s"])
        return [
            group.embed(Angle(j, p["n"]), tag=f"ellipse:k={j}") for j in range(p["n"])
        ]
    if k == CUBIC_COSET:
        host = (
            acnodal_battery_host()
            if p["host"] == "acnodal"
            else two_component_battery_host(p["n"], p.get("variant", "cyclic"))
        )
        return synthesize_coset(host, p["n"], p.get("variant", "cyclic"), p.get("h", 0))
    if k in (ALIGNED, OFFSET, PUNCTURED, INVERTED):
        return _double_polygon(spec)
    if k in (INVERTED_ELLIPSE, INVERTED_CUBIC):
        host = acnodal_battery_host()
        pts = synthesize_coset(host, p["n"], "cyclic", 0, verify=False)
        if k == INVERTED_ELLIPSE:
            return pts
        # invert the acnodal coset in a rational point off the host
        center = _off_curve_center(host)
        spec_inv = InversionSpec.rational(center[0], center[1], 1)
        return [invert_point(spec_inv, q) for q in pts]
    raise AssertionError(k)


def _off_curve_center(host):
    for cand in ((Fraction(0), Fraction(3)), (Fraction(1), Fraction(4)), (Fraction(2), Fraction(5))):
        if host.curve.evaluate_fractions(cand[0], cand[1], Fraction(1)) != 0:
            return cand
    raise AssertionError("no off-curve centre found")


def _double_polygon(spec: ConstructionSpec):
    p = spec.params
    m = p["m"]
    r = spec.radius_expr()
    inner = [
        Point(RealExpr.cos(Angle(j, m)), RealExpr.sin(Angle(j, m)), tag=f"inner:k={j}")
        for j in range(m)
    ]
    if spec.kind == OFFSET:
        outer = [
            Point(
                r * RealExpr.cos(Angle(2 * j + 1, 2 * m)),
                r * RealExpr.sin(Angle(2 * j + 1, 2 * m)),
                tag=f"outer:k={j}",
            )
            for j in range(m)
        ]
    else:
        outer = [
            Point(
                r * RealExpr.cos(Angle(j, m)),
                r * RealExpr.sin(Angle(j, m)),
                tag=f"outer:k={j}",
            )
            for j in range(m)
        ]
    if spec.kind in (ALIGNED, OFFSET):
        return inner + outer
    removed = p["removed"]
    centre = inner[removed]
    rest = [q for i, q in enumerate(inner) if i != removed] + outer
    if spec.kind == PUNCTURED:
        return rest
    inv = InversionSpec(centre, RealExpr.rational(1))
    return [invert_point(inv, q) for q in rest]


# ---------------- closed-form counts ----------------


def _count_distinct_triples(group_elems, add, neg, target):
    """|{(a,b,c) distinct in the group: 2a + b + c = target}| by brute force."""
    n = len(group_elems)
    index = {g: i for i, g in enumerate(group_elems)}
    count = 0
    for a in group_elems:
        for b in group_elems:
            if b == a:
                continue
            c = add(target, neg(add(add(a, a), b)))
            if c == a or c == b:
                continue
            count += 1
    return count


def _cyclic_counts(n: int, h: int):
    """(ordinary, four-point) counts for the order-n cyclic coset with shift
    residue h."""
    ordinary = 0
    for a in range(n):
        for b in range(n):
            if b == a:
                continue
            c = (h - 2 * a - b) % n
            if c != a and c != b:
                ordinary += 1
    ordinary //= 2
    delta = sum(1 for k in range(n) if (2 * k) % n == h % n)
    eps = sum(1 for k in range(n) if (4 * k) % n == h % n)
    four = (n**3 - 6 * n**2 + (8 + 3 * delta) * n - 6 * eps) // 24
    return ordinary, four


def _z2_counts(n: int):
    """(ordinary, four-point) for the Z_(n/2) x Z_2 coset with identity shift."""
    half = n // 2
    elems = [(a, e) for a in range(half) for e in range(2)]
    ordinary = 0
    for a in elems:
        for b in elems:
            if b == a:
                continue
            c = ((-2 * a[0] - b[0]) % half, (-2 * a[1] - b[1]) % 2)
            if c != a and c != b:
                ordinary += 1
    ordinary //= 2
    delta = sum(1 for k in elems if ((2 * k[0]) % half, 0) == (0, 0))
    eps = sum(1 for k in elems if ((4 * k[0]) % half, 0) == (0, 0))
    four = (n**3 - 6 * n**2 + (8 + 3 * delta) * n - 6 * eps) // 24
    return ordinary, four


def _pair_quadruple_count(m: int, residue: int) -> int:
    """|{(k1..k4) in Z_m^4: sum = residue, k1 != k2, k3 != k4}| / 4."""
    total = 0
    for k1, k2, k3 in product(range(m), repeat=3):
        if k1 == k2:
            continue
        k4 = (residue - k1 - k2 - k3) % m
        if k4 == k3:
            continue
        total += 1
    assert total % 4 == 0
    return total // 4


def _double_polygon_ordinary(m: int, offset: bool) -> int:
    if offset:
        return m * m if m % 2 == 0 else m * (m - 1)
    return m * (m - 2) if m % 2 == 0 else m * (m - 1)


def expected_counts(spec: ConstructionSpec) -> ExpectedCounts:
    """Exact counts from the closed forms; None where only asymptotics exist."""
    k, p = spec.kind, spec.params
    if k == ELLIPSE_SUBGROUP:
        oc, four = _cyclic_counts(p["n"], 0)
        return ExpectedCounts(oc, oc, four)
    if k in (CUBIC_COSET, INVERTED_ELLIPSE, INVERTED_CUBIC):
        n = p["n"]
        variant = p.get("variant", "cyclic")
        h = p.get("h", 0)
        if variant == "cyclic" or k in (INVERTED_ELLIPSE, INVERTED_CUBIC):
            oc, four = _cyclic_counts(n, h)
        else:
            oc, four = _z2_counts(n)
        if k == CUBIC_COSET:
            return ExpectedCounts(oc, oc, four)
        # inversion preserves generalised counts; plain circles shift around
        return ExpectedCounts(None, oc, four)
    if k in (ALIGNED, OFFSET):
        m = p["m"]
        og = _double_polygon_ordinary(m, k == OFFSET)
        special = p.get("special_k") is not None
        oc = og - m if special else og
        four = _pair_quadruple_count(m, 1 if k == OFFSET else 0)
        # the two host circles themselves enter the spectrum at small m
        if m == 3:
            oc += 2
            og += 2
        elif m == 4:
            four += 2
        return ExpectedCounts(oc, og, four)
    if k == PUNCTURED:
        m = p["m"]
        if m % 2:
            og = Fraction(3, 2) * m * m - Fraction(7, 2) * m + 2
        else:
            og = Fraction(3, 2) * m * m - Fraction(9, 2) * m + 4
        return ExpectedCounts(None, int(og), None)
    if k == INVERTED:
        m = p["m"]
        if m % 2:
            oc = (m - 1) * (2 * m - 3) // 2
            og = int(Fraction(3, 2) * m * m - Fraction(7, 2) * m + 2)
        else:
            oc = (m - 2) * (2 * m - 3) // 2
            og = int(Fraction(3, 2) * m * m - Fraction(9, 2) * m + 4)
        return ExpectedCounts(oc, og, None)
    raise AssertionError(k)


# ---------------- theorem value tables ----------------


def theorem_value(which: str, n: int) -> int:
    """The piecewise extremal value; the large-n caveat of the statements is
    documented, not enforced."""
    if n < 4:
        raise InvalidParameters("tables start at n = 4")
    f = Fraction(n)
    if which == "1.1":
        vals = {
            0: f * f / 4 - 3 * f / 2,
            1: f * f / 4 - 3 * f / 4 + Fraction(1, 2),
            2: f * f / 4 - f,
            3: f * f / 4 - 5 * f / 4 + Fraction(3, 2),
        }
        v = vals[n % 4]
    elif which == "1.2":
        vals = {
            0: f * f / 4 - f,
            1: 3 * f * f / 8 - f + Fraction(5, 8),
            2: f * f / 4 - f / 2,
            3: 3 * f * f / 8 - 3 * f / 2 + Fraction(17, 8),
        }
        v = vals[n % 4]
    elif which == "1.3":
        cube = f**3 / 24 - f * f / 4
        if n % 8 == 0:
            v = cube + 5 * f / 6 - 2
        elif n % 8 == 4:
            v = cube + 5 * f / 6 - 1
        elif n % 8 in (2, 6):
            v = cube + 7 * f / 12 - Fraction(1, 2)
        else:
            v = cube + 11 * f / 24 - Fraction(1, 4)
    else:
        raise InvalidParameters(f"unknown theorem {which!r}")
    assert v.denominator == 1, "table value is not an integer"
    return int(v)


def extremal_witness(which: str, n: int) -> ConstructionSpec:
    """A construction whose measured spectrum attains theorem_value(which, n)."""
    if which == "1.2":
        if n % 2 == 0:
            m = n // 2
            if m < 4:
                raise NoWitnessKnown("the double-polygon count needs n >= 8")
            return ConstructionSpec(ALIGNED, m=m, r=Fraction(3))
        m = (n + 1) // 2
        if m < 5:
            raise NoWitnessKnown("the punctured count needs n >= 9")
        return ConstructionSpec(PUNCTURED, m=m, r=Fraction(3))
    if which == "1.1":
        if n % 2 == 0:
            m = n // 2
            if m < 5:
                raise NoWitnessKnown("no tangent radius below m = 5")
            return ConstructionSpec(ALIGNED, m=m, special_k=1)
        m = (n + 1) // 2
        if m < 4:
            raise NoWitnessKnown("need n >= 7")
        return ConstructionSpec(INVERTED, m=m, r=Fraction(3))
    if which == "1.3":
        if n % 4 == 0:
            if n in (8, 12):
                return ConstructionSpec(
                    CUBIC_COSET, n=n, variant="Z_half_times_Z2", host="two-component"
                )
            raise NoWitnessKnown(
                "no exact two-component host for this order in the battery"
            )
        if n < 5:
            raise NoWitnessKnown("subgroups start at n = 5")
        return ConstructionSpec(ELLIPSE_SUBGROUP, n=n)
    raise InvalidParameters(f"unknown theorem {which!r}")

"""Incidence predicates, circle construction, and inversion."""
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordinarycircles.errors import CenterInversion, DegenerateTriple
from ordinarycircles.exactnum import Angle, RealExpr
from ordinarycircles.geometry import (
    GeneralisedCircle,
    InversionSpec,
    Point,
    circle_through,
    collinear,
    concyclic,
    invert_generalised_circle,
    invert_point,
    points_equal,
)

fracs = st.fractions(
    min_value=-8, max_value=8, max_denominator=6
)


def rp(x, y):
    return Point.rational(F(x), F(y))


def trig_point(k, den, radius=None):
    x = RealExpr.cos(Angle(k, den))
    y = RealExpr.sin(Angle(k, den))
    if radius is not None:
        r = RealExpr.from_fraction(F(radius))
        return Point(r * x, r * y)
    return Point(x, y)


# ---- circle_through


def test_circle_through_origin_unit_points():
    g = circle_through(rp(0, 0), rp(1, 0), rp(0, 1))
    assert (g.t, g.l1, g.l2, g.l0) == (F(1), F(-1), F(-1), F(0))


def test_collinear_triple_gives_line():
    g = circle_through(rp(0, 0), rp(1, 0), rp(2, 0))
    assert g.is_line()
    assert (g.t, g.l1, g.l2, g.l0) == (F(0), F(0), F(1), F(0))


def test_hexagon_gives_unit_circle():
    pts = [trig_point(k, 6) for k in (0, 1, 2)]
    g = circle_through(*pts)
    assert (g.t, g.l1, g.l2, g.l0) == (F(1), F(0), F(0), F(-1))


def test_degenerate_triple():
    with pytest.raises(DegenerateTriple):
        circle_through(rp(0, 0), rp(0, 0), rp(1, 1))


# ---- predicates


def test_concyclic_square():
    assert concyclic(rp(0, 0), rp(1, 0), rp(1, 1), rp(0, 1))


def test_three_collinear_one_off_not_concyclic():
    assert not concyclic(rp(0, 0), rp(1, 0), rp(2, 0), rp(0, 1))


def test_mirror_symmetric_two_circle_concyclic():
    a = trig_point(1, 6)
    b = trig_point(2, 6)
    c = trig_point(-1, 6, radius=3)
    d = trig_point(-2, 6, radius=3)
    assert concyclic(a, b, c, d)


def test_collinear_examples():
    assert collinear(rp(0, 0), rp(1, 1), rp(2, 2))
    assert not collinear(rp(0, 0), rp(1, 0), rp(0, 1))
    a = trig_point(1, 6)
    b = trig_point(5, 6)
    assert not collinear(a, b, rp(2, 0))
    assert collinear(a, b, Point(RealExpr.rational(1, 2), RealExpr.rational(-7)))


@given(st.lists(st.tuples(fracs, fracs), min_size=4, max_size=4, unique=True))
def test_concyclic_matches_circle_membership(coords):
    pts = [rp(x, y) for (x, y) in coords]
    try:
        g = circle_through(pts[0], pts[1], pts[2])
    except DegenerateTriple:
        return
    assert concyclic(*pts) == g.contains(pts[3])


# ---- inversion


def test_invert_point_examples():
    spec = InversionSpec.rational(0, 0, 1)
    img = invert_point(spec, rp(2, 0))
    assert points_equal(img, rp(F(1, 2), 0))
    spec1 = InversionSpec.rational(1, 0, 1)
    img2 = invert_point(spec1, rp(3, 0))
    assert points_equal(img2, rp(F(3, 2), 0))


def test_unit_circle_points_fixed():
    spec = InversionSpec.rational(0, 0, 1)
    p = trig_point(1, 8)
    assert points_equal(invert_point(spec, p), p)


def test_center_inversion_raises():
    spec = InversionSpec.rational(1, 2, 1)
    with pytest.raises(CenterInversion):
        invert_point(spec, rp(1, 2))


@given(st.tuples(fracs, fracs))
def test_involution_on_points(coords):
    spec = InversionSpec.rational(F(1, 3), F(-2, 5), F(7, 4))
    p = rp(*coords)
    if points_equal(p, spec.center):
        return
    assert points_equal(invert_point(spec, invert_point(spec, p)), p)


def test_invert_circle_examples():
    spec = InversionSpec.rational(0, 0, 1)
    line = GeneralisedCircle(F(0), F(1), F(0), F(-1, 2))  # x = 1/2
    img = invert_generalised_circle(spec, line)
    assert (img.t, img.l1, img.l2, img.l0) == (F(1), F(-2), F(0), F(0))
    circ = GeneralisedCircle(F(1), F(-1), F(-1), F(0))
    img2 = invert_generalised_circle(spec, circ)
    assert img2.is_line()
    assert (img2.t, img2.l1, img2.l2, img2.l0) == (F(0), F(1), F(1), F(-1))
    unit = GeneralisedCircle(F(1), F(0), F(0), F(-1))
    assert invert_generalised_circle(spec, unit) == unit


@given(
    st.lists(st.tuples(fracs, fracs), min_size=3, max_size=3, unique=True),
    st.tuples(fracs, fracs),
)
def test_incidence_preservation(coords, qc):
    spec = InversionSpec.rational(F(9, 2), F(-11, 3), 1)
    try:
        g = circle_through(*[rp(x, y) for (x, y) in coords])
    except DegenerateTriple:
        return
    q = rp(*qc)
    if points_equal(q, spec.center):
        return
    gi = invert_generalised_circle(spec, g)
    qi = invert_point(spec, q)
    assert g.contains(q) == gi.contains(qi)


def test_circle_involution_exact():
    spec = InversionSpec.rational(F(2, 3), F(5, 7), F(11, 5))
    g = GeneralisedCircle(F(3), F(1), F(-2), F(-5))
    assert invert_generalised_circle(spec, invert_generalised_circle(spec, g)) == g


# ---- normalization and hashing


def test_normalization_idempotent_and_hashable():
    g1 = GeneralisedCircle(F(2), F(-2), F(-2), F(0))
    g2 = GeneralisedCircle(F(1), F(-1), F(-1), F(0))
    assert g1 == g2 and hash(g1) == hash(g2)
    g3 = GeneralisedCircle(F(-1, 3), F(1, 3), F(1, 3), F(0))
    assert g3 == g1


def test_trig_circle_normalizes_to_rational():
    pts = [trig_point(k, 8) for k in (0, 1, 3)]
    g = circle_through(*pts)
    assert (g.t, g.l1, g.l2, g.l0) == (F(1), F(0), F(0), F(-1))


def test_circle_json_round_trip():
    g = GeneralisedCircle(F(3), F(-1, 2), F(5), F(-7))
    back = GeneralisedCircle.from_json(g.to_json())
    assert back == g
    line = GeneralisedCircle(F(0), F(2), F(-3), F(1))
    assert GeneralisedCircle.from_json(line.to_json()) == line


def test_point_set_json_round_trip():
    from ordinarycircles.geometry import point_set_from_json, point_set_to_json

    pts = [trig_point(1, 8), rp(F(2, 3), F(-5, 7))]
    pts[0].tag = "sample"
    obj = point_set_to_json(pts, meta={"note": "round-trip"})
    back, meta = point_set_from_json(obj)
    assert meta == {"note": "round-trip"}
    assert len(back) == 2 and back[0].tag == "sample"
    for p, q in zip(pts, back):
        assert points_equal(p, q)


def test_degenerate_circle_rejected():
    with pytest.raises(ValueError):
        GeneralisedCircle(F(1), F(0), F(0), F(1))  # imaginary radius
    with pytest.raises(ValueError):
        GeneralisedCircle(F(1), F(0), F(0), F(0))  # radius zero

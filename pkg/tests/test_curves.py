"""Curve algebra: multiplicities, classification, inversion, fitting,
singularities."""
import random
from fractions import Fraction as F

import pytest

from ordinarycircles.curves import (
    CircularClass,
    CurvePoly,
    circular_class,
    fit_bicircular_quartic,
    inversion_case_battery,
    invert_curve,
    multiplicity_at_circular_points,
    singular_points_cubic,
    verify_inversion_case_table,
)
from ordinarycircles.errors import IrrationalSingularity, UnsupportedDegree
from ordinarycircles.exactnum import Angle, RealExpr
from ordinarycircles.geometry import InversionSpec, Point

UNIT_CIRCLE = CurvePoly({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1})
ELLIPSE = CurvePoly({(2, 0, 0): 1, (0, 2, 0): 2, (1, 0, 1): -2})  # (x-1)^2 + 2y^2 = 1
ACNODAL = CurvePoly({(3, 0, 0): 2, (1, 2, 0): 2, (2, 0, 1): -1, (0, 2, 1): -2})
BICIRC = CurvePoly({(4, 0, 0): 1, (2, 2, 0): 2, (0, 4, 0): 1, (0, 0, 4): -1})
LINE = CurvePoly({(1, 0, 0): 1, (0, 0, 1): -1})


def test_multiplicities():
    assert multiplicity_at_circular_points(UNIT_CIRCLE) == (1, 1)
    assert multiplicity_at_circular_points(BICIRC) == (2, 2)
    assert multiplicity_at_circular_points(LINE) == (0, 0)


def test_conjugation_symmetry_random():
    rnd = random.Random(5)
    for _ in range(15):
        coeffs = {}
        for i in range(4):
            for j in range(4 - i):
                k = 3 - i - j
                c = rnd.randint(-5, 5)
                if c:
                    coeffs[(i, j, k)] = F(c)
        if not coeffs:
            continue
        ma, mb = multiplicity_at_circular_points(CurvePoly(coeffs))
        assert ma == mb


def test_classification():
    assert circular_class(UNIT_CIRCLE).kind == CircularClass.GENERALISED_CIRCLE
    assert circular_class(LINE).kind == CircularClass.GENERALISED_CIRCLE
    assert circular_class(ACNODAL).kind == CircularClass.CIRCULAR_CUBIC
    assert circular_class(BICIRC).kind == CircularClass.BICIRCULAR_QUARTIC
    hyp = CurvePoly({(1, 1, 0): 1, (0, 0, 2): -1})
    assert circular_class(hyp).kind == CircularClass.NON_CIRCULAR_CONIC
    with pytest.raises(UnsupportedDegree):
        circular_class(CurvePoly({(5, 0, 0): 1, (0, 0, 5): 1}))


def test_ellipse_acnodal_pair_bit_exact():
    spec = InversionSpec.rational(0, 0, 1)
    assert invert_curve(spec, ELLIPSE) == ACNODAL
    assert invert_curve(spec, ACNODAL) == ELLIPSE


def test_line_inverts_to_circle_through_origin():
    spec = InversionSpec.rational(0, 0, 1)
    img = invert_curve(spec, LINE)
    assert img == CurvePoly({(2, 0, 0): 1, (0, 2, 0): 1, (1, 0, 1): -1})


def test_unit_circle_fixed():
    spec = InversionSpec.rational(0, 0, 1)
    assert invert_curve(spec, UNIT_CIRCLE) == UNIT_CIRCLE


def test_inversion_involution_random_cubics():
    rnd = random.Random(9)
    spec = InversionSpec.rational(F(1, 2), F(-1, 3), F(2))
    done = 0
    while done < 10:
        coeffs = {}
        for i in range(4):
            for j in range(4 - i):
                k = 3 - i - j
                c = rnd.randint(-4, 4)
                if c:
                    coeffs[(i, j, k)] = F(c)
        if not coeffs or max(i + j for (i, j, k) in coeffs) < 2:
            continue
        f = CurvePoly(coeffs)
        try:
            img = invert_curve(spec, f)
            back = invert_curve(spec, img)
        except ValueError:
            continue
        assert back == CurvePoly({m: c for m, c in f.coeffs.items()}) or _affine_equal(back, f)
        done += 1


def _affine_equal(a, b):
    # involution may drop line-at-infinity components: compare affine parts
    return a.affine() == b.affine() or CurvePoly.from_affine(a.affine()) == CurvePoly.from_affine(b.affine())


def test_incidence_transport():
    spec = InversionSpec.rational(0, 0, 1)
    # rational point on the ellipse: (3/5, 8/5) wrt x^2 + (y/2)^2 = 1?
    # here ELLIPSE is (x-1)^2 + 2 y^2 = 1; use (x, y) = (2/3, 2/3 * ... )
    # solve: (x-1)^2 + 2 y^2 = 1 with x = 9/5: (4/5)^2 + 2 y^2 = 1 -> y^2 = 9/50
    # pick x = 1/5: (4/5)^2 + 2y^2 = 1 -> y^2 = 9/50 not square; use x = 1, y^2 = 1/2 no
    # parametrize: x = 2t^2/(t^2+... simpler: known point (2, 0): (1)^2 = 1 ok
    from ordinarycircles.geometry import invert_point

    q = Point.rational(2, 0)
    assert ELLIPSE.contains_point(q)
    img_curve = invert_curve(spec, ELLIPSE)
    img_q = invert_point(spec, q)
    assert img_curve.contains_point(img_q)


def test_case_battery_all_clauses():
    battery = inversion_case_battery()
    assert len(battery) == 12
    labels = []
    for name, curve, centre in battery:
        spec = InversionSpec.rational(centre[0], centre[1], 1)
        labels.append(verify_inversion_case_table(curve, spec))
    for expected in (
        "line",
        "circle",
        "non-circular conic",
        "circular cubic",
        "bicircular quartic",
        "non-circular cubic",
        "circular quartic",
        "2-circular quintic",
        "3-circular sextic",
    ):
        assert expected in labels, expected


def test_singularities():
    sings = singular_points_cubic(ACNODAL)
    assert sings == [((F(0), F(0), F(1)), "acnode")]
    cusp = CurvePoly({(0, 2, 1): 1, (3, 0, 0): -1})
    assert singular_points_cubic(cusp) == [((F(0), F(0), F(1)), "cusp")]
    node = CurvePoly({(0, 2, 1): 1, (3, 0, 0): -1, (2, 0, 1): -1})
    assert singular_points_cubic(node) == [((F(0), F(0), F(1)), "crunode")]
    smooth = CurvePoly({(0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): -1})
    assert singular_points_cubic(smooth) == []


def test_reducible_cubic_rejected():
    reducible = CurvePoly({(2, 1, 0): 1, (0, 1, 2): -1})  # y (x^2 - z^2)
    with pytest.raises(ValueError):
        singular_points_cubic(reducible)


def test_irrational_singularity_reported():
    # y^2 z = (x^2 - 2 z^2)(x - 5z) has singular x-coordinate sqrt(2)
    f = CurvePoly(
        {(0, 2, 1): 1, (3, 0, 0): -1, (2, 0, 1): 5, (1, 0, 2): 2, (0, 0, 3): -10}
    )
    try:
        sings = singular_points_cubic(f)
    except IrrationalSingularity:
        return
    assert all(kind in ("acnode", "crunode", "cusp") for _, kind in sings)


# ---- fitter


def unit_circle_points(n):
    return [Point(RealExpr.cos(Angle(k, n)), RealExpr.sin(Angle(k, n))) for k in range(n)]


def test_fit_circle_points():
    rep = fit_bicircular_quartic(unit_circle_points(12), 0)
    assert rep.quartic is not None
    assert len(rep.inliers) == 12 and rep.residual_certified


def test_fit_two_concentric_circles():
    pts = unit_circle_points(6)
    two = RealExpr.rational(2)
    pts += [
        Point(two * RealExpr.cos(Angle(k, 6)), two * RealExpr.sin(Angle(k, 6)))
        for k in range(6)
    ]
    rep = fit_bicircular_quartic(pts, 0)
    assert rep.quartic == CurvePoly(
        {
            (4, 0, 0): 1,
            (2, 2, 0): 2,
            (0, 4, 0): 1,
            (2, 0, 2): -5,
            (0, 2, 2): -5,
            (0, 0, 4): 4,
        }
    )
    assert len(rep.inliers) == 12


def test_fit_rejects_random_points():
    rnd = random.Random(7)
    pts = [
        Point.rational(F(rnd.randint(-20, 20), rnd.randint(1, 7)), F(rnd.randint(-20, 20), rnd.randint(1, 7)))
        for _ in range(12)
    ]
    rep = fit_bicircular_quartic(pts, 0)
    assert rep.quartic is None and not rep.residual_certified


def test_fit_with_planted_outliers():
    pts = unit_circle_points(12) + [Point.rational(F(7, 2), F(5)), Point.rational(F(-4), F(13, 3))]
    rep = fit_bicircular_quartic(pts, 2)
    assert rep.quartic is not None
    assert len(rep.inliers) >= 12
    assert set(rep.outliers) <= {12, 13}


def test_fit_inliers_exactly_vanish():
    pts = unit_circle_points(10) + [Point.rational(3, 4), Point.rational(F(1, 5), F(9, 7))]
    rep = fit_bicircular_quartic(pts, 2)
    assert rep.quartic is not None
    for i in rep.inliers:
        assert rep.quartic.contains_point(pts[i])


def test_curve_json_round_trip():
    obj = ACNODAL.to_json()
    assert CurvePoly.from_json(obj) == ACNODAL

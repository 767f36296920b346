"""Certified arithmetic: intervals, angles, symbolic zeros, serialization."""
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordinarycircles.errors import DivisionNearZero, NegativeSqrt, PrecisionExhausted
from ordinarycircles.exactnum import (
    Angle,
    CycloField,
    RealExpr,
    certified_sign,
    eval_interval,
    exact_rational_value,
    expr_from_json,
    expr_to_json,
)


def test_rational_interval_width():
    e = RealExpr.rational(1, 3)
    iv = eval_interval(e, 53)
    assert iv.lo_fraction() <= F(1, 3) <= iv.hi_fraction()
    assert iv.width_fraction() <= F(2) ** -52


def test_interval_precision_floor():
    with pytest.raises(ValueError):
        eval_interval(RealExpr.rational(1), 4)


def test_cos_sixth_turn_is_half():
    c = RealExpr.cos(Angle(1, 6))
    assert exact_rational_value(c) == F(1, 2)
    iv = eval_interval(c, 80)
    assert iv.lo_fraction() <= F(1, 2) <= iv.hi_fraction()


def test_cos45_minus_sin45_symbolic_zero():
    d = RealExpr.cos(Angle(1, 8)) - RealExpr.sin(Angle(1, 8))
    cert = certified_sign(d)
    assert cert.sign == 0 and cert.method == "SymbolicZero"
    iv = eval_interval(d, 128)
    assert iv.contains_zero()


def test_quotient_collapse():
    q = RealExpr.rational(1) / RealExpr.cos(Angle(1, 6))
    assert exact_rational_value(q) == 2


def test_sum_of_rationals():
    assert exact_rational_value(RealExpr.rational(1, 2) + RealExpr.rational(1, 3)) == F(5, 6)


def test_cos_eighth_irrational():
    assert exact_rational_value(RealExpr.cos(Angle(1, 8))) is None


def test_signs():
    assert certified_sign(RealExpr.rational(0)).sign == 0
    assert certified_sign(RealExpr.rational(0)).method == "ExactRational"
    s = certified_sign(RealExpr.cos(Angle(1, 12)) * RealExpr.rational(-2))
    assert s.sign == -1


def test_division_by_exact_zero():
    zero = RealExpr.cos(Angle(1, 8)) - RealExpr.sin(Angle(1, 8))
    with pytest.raises(DivisionNearZero):
        RealExpr.rational(1) / zero


def test_negative_sqrt():
    with pytest.raises(NegativeSqrt):
        RealExpr.rational(-2).sqrt()


def test_sqrt_identities():
    r2 = RealExpr.rational(2).sqrt()
    assert certified_sign(r2 * r2 - RealExpr.rational(2)).sign == 0
    assert exact_rational_value(RealExpr.rational(9, 4).sqrt()) == F(3, 2)


def test_precision_exhausted_on_mixed_radicals():
    # sqrt(2)*sqrt(3) - sqrt(6) is zero but outside the symbolic closure
    v = RealExpr.rational(2).sqrt() * RealExpr.rational(3).sqrt() - RealExpr.rational(6).sqrt()
    with pytest.raises(PrecisionExhausted):
        certified_sign(v, cap=256)


# ---- eight-gon concyclicity determinant: independent oracle over Q(sqrt 2)


class Root2:
    """a + b sqrt(2), the minimal field containing the octagon coordinates."""

    def __init__(self, a, b=F(0)):
        self.a, self.b = F(a), F(b)

    def __add__(s, o):
        return Root2(s.a + o.a, s.b + o.b)

    def __sub__(s, o):
        return Root2(s.a - o.a, s.b - o.b)

    def __mul__(s, o):
        return Root2(s.a * o.a + 2 * s.b * o.b, s.a * o.b + s.b * o.a)

    def is_zero(s):
        return s.a == 0 and s.b == 0


def _octagon_coords(k):
    # cos/sin of 2 pi k/8 as elements of Q(sqrt 2)
    half = F(1, 2)
    table = {
        0: (Root2(1), Root2(0)),
        1: (Root2(0, half), Root2(0, half)),
        2: (Root2(0), Root2(1)),
        3: (Root2(0, -half), Root2(0, half)),
        4: (Root2(-1), Root2(0)),
        5: (Root2(0, -half), Root2(0, -half)),
        6: (Root2(0), Root2(-1)),
        7: (Root2(0, half), Root2(0, -half)),
    }
    return table[k % 8]


def _det4_root2(rows):
    def det3(r):
        (a, b, c), (d, e, f), (g, h, i) = r
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    total = Root2(0)
    sign = 1
    for j in range(4):
        minor = [[rows[i][kk] for kk in range(4) if kk != j] for i in range(1, 4)]
        term = rows[0][j] * det3(minor)
        total = total + (term if sign > 0 else Root2(0) - term)
        sign = -sign
    return total


def test_octagon_concyclicity_determinant_zero():
    quad = [0, 1, 3, 6]
    # oracle: determinant over Q(sqrt 2) is exactly zero
    rows = []
    for k in quad:
        x, y = _octagon_coords(k)
        rows.append([x * x + y * y, x, y, Root2(1)])
    assert _det4_root2(rows).is_zero()
    # certified sign of the same determinant built as an expression tree
    exprs = []
    for k in quad:
        exprs.append((RealExpr.cos(Angle(k, 8)), RealExpr.sin(Angle(k, 8))))
    rows_e = [(x * x + y * y, x, y, RealExpr.rational(1)) for (x, y) in exprs]

    def det3e(r):
        (a, b, c), (d, e, f), (g, h, i) = r
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    total = RealExpr.rational(0)
    for j in range(4):
        minor = [[rows_e[i][kk] for kk in range(4) if kk != j] for i in range(1, 4)]
        term = rows_e[0][j] * det3e(minor)
        total = total + (term if j % 2 == 0 else -term)
    cert = certified_sign(total)
    assert cert.sign == 0 and cert.method == "SymbolicZero"


# ---- angle group, exhaustively for small denominators


def test_angle_group_axioms_exhaustive():
    dens = range(1, 25)
    angles = [Angle(n, d) for d in dens for n in range(d)]
    sample = [a for a in angles if a.den <= 6] + [Angle(5, 24), Angle(7, 24)]
    zero = Angle(0, 1)
    for a in sample:
        assert a + zero == a
        assert a + (-a) == zero
    for a in sample[:12]:
        for b in sample[:12]:
            for c in sample[:12]:
                assert (a + b) + c == a + (b + c)
    for a in sample[:20]:
        for b in sample[:20]:
            assert a + b == b + a


def test_angle_normalization():
    assert Angle(7, 6) == Angle(1, 6)
    assert Angle(-1, 6) == Angle(5, 6)
    assert Angle(2, 4) == Angle(1, 2)


# ---- randomized expression trees: monotone refinement and sign soundness


@st.composite
def expr_trees(draw, depth=0):
    if depth >= 4 or draw(st.booleans()):
        leaf = draw(st.integers(0, 3))
        if leaf == 0:
            return RealExpr.rational(
                draw(st.integers(-30, 30)), draw(st.integers(1, 12))
            )
        den = draw(st.integers(1, 12))
        num = draw(st.integers(0, den - 1))
        if leaf == 1:
            return RealExpr.cos(Angle(num, den))
        return RealExpr.sin(Angle(num, den))
    op = draw(st.integers(0, 2))
    a = draw(expr_trees(depth=depth + 1))
    if op == 0:
        return -a
    b = draw(expr_trees(depth=depth + 1))
    return a + b if op == 1 else a * b


@given(expr_trees())
def test_monotone_refinement(e):
    a = eval_interval(e, 64)
    b = eval_interval(e, 200)
    assert a.contains(b)


@given(expr_trees())
def test_sign_soundness_vs_256bit(e):
    cert = certified_sign(e)
    iv = eval_interval(e, 256)
    if cert.sign > 0:
        assert iv.hi_fraction() > 0
    elif cert.sign < 0:
        assert iv.lo_fraction() < 0
    else:
        assert iv.contains_zero()


def test_exactness_on_rational_trees():
    e = (RealExpr.rational(3, 7) + RealExpr.rational(-2, 5)) * RealExpr.rational(35)
    cert = certified_sign(e)
    assert cert.method == "ExactRational"
    assert exact_rational_value(e) == 1


# ---- serialization


def test_expression_json_round_trip():
    e = (
        RealExpr.cos(Angle(1, 8)) * RealExpr.rational(3, 2)
        + (-RealExpr.sin(Angle(5, 12)))
    ) / RealExpr.rational(7, 3)
    obj = expr_to_json(e)
    back = expr_from_json(obj)
    assert certified_sign(e - back).sign == 0


def test_sqrt_json_round_trip():
    e = RealExpr.rational(5).sqrt()
    back = expr_from_json(expr_to_json(e))
    assert certified_sign(e - back).sign == 0


def test_cyclotomic_polynomial_values():
    assert CycloField(8).phi_poly == [1, 0, 0, 0, 1]
    assert CycloField(12).degree == 4
    assert CycloField(1).degree == 1

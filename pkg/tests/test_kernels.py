"""Compiled and pure kernels must agree exactly, at every magnitude."""
from hypothesis import given
from hypothesis import strategies as st

from ordinarycircles import _kernels_py
from ordinarycircles import kernels
from ordinarycircles.exactnum import CycloField

ints_small = st.integers(-(2**20), 2**20)
ints_big = st.integers(-(2**90), 2**90)


@given(st.lists(ints_small, min_size=9, max_size=9))
def test_det3_small(vals):
    assert kernels.det3_sign(*vals) == _kernels_py.det3_sign(*vals)
    assert kernels.det3(*vals) == _kernels_py.det3(*vals)


@given(st.lists(ints_big, min_size=9, max_size=9))
def test_det3_big(vals):
    assert kernels.det3_sign(*vals) == _kernels_py.det3_sign(*vals)


@given(st.lists(ints_small, min_size=16, max_size=16))
def test_det4_small(vals):
    assert kernels.det4_sign(vals) == _kernels_py.det4_sign(vals)


@given(st.lists(ints_big, min_size=16, max_size=16))
def test_det4_big(vals):
    assert kernels.det4_sign(vals) == _kernels_py.det4_sign(vals)


@given(st.lists(ints_small, min_size=12, max_size=12))
def test_circle_minors(vals):
    assert kernels.circle3_minors(*vals) == _kernels_py.circle3_minors(*vals)


@given(
    st.integers(2, 4).flatmap(
        lambda k: st.tuples(
            st.just([8, 12, 24, 40][k - 2]),
            st.lists(st.integers(-(2**40), 2**40), min_size=1, max_size=1),
        )
    ),
    st.data(),
)
def test_poly_mul_reduce_matches(params, data):
    m, _ = params
    f = CycloField(m)
    a = tuple(
        data.draw(st.integers(-(2**45), 2**45)) for _ in range(f.degree)
    )
    b = tuple(
        data.draw(st.integers(-(2**45), 2**45)) for _ in range(f.degree)
    )
    got = kernels.poly_mul_reduce(a, b, f.reduction_rows, f.degree)
    want = _kernels_py.poly_mul_reduce(a, b, f.reduction_rows, f.degree)
    assert got == want


@given(st.data())
def test_poly_mul_reduce_big_coeffs(data):
    f = CycloField(12)
    a = tuple(data.draw(st.integers(-(2**80), 2**80)) for _ in range(f.degree))
    b = tuple(data.draw(st.integers(-(2**80), 2**80)) for _ in range(f.degree))
    got = kernels.poly_mul_reduce(a, b, f.reduction_rows, f.degree)
    want = _kernels_py.poly_mul_reduce(a, b, f.reduction_rows, f.degree)
    assert got == want


@given(
    st.lists(ints_small, min_size=4, max_size=4),
    st.lists(st.tuples(ints_small, ints_small, ints_small, ints_small), min_size=1, max_size=20),
)
def test_incident_indices_small(coeffs, rows):
    got = kernels.incident_indices(*coeffs, rows)
    want = _kernels_py.incident_indices(*coeffs, rows)
    assert got == want


@given(
    st.lists(ints_big, min_size=4, max_size=4),
    st.lists(st.tuples(ints_big, ints_big, ints_big, ints_big), min_size=1, max_size=8),
)
def test_incident_indices_big(coeffs, rows):
    got = kernels.incident_indices(*coeffs, rows)
    want = _kernels_py.incident_indices(*coeffs, rows)
    assert got == want


def test_incident_indices_hits():
    rows = [(2, 1, 1, 1), (5, 0, 0, 1), (1, -1, 0, 1)]
    assert kernels.incident_indices(1, 1, 1, -5, rows) == (1,)


def test_poly_mul_reduce_is_field_multiplication():
    # zeta_8 * zeta_8^3 = zeta_8^4 = -1
    f = CycloField(8)
    z1 = tuple(f.zeta_pows[1])
    z3 = tuple(f.zeta_pows[3])
    got = kernels.poly_mul_reduce(z1, z3, f.reduction_rows, f.degree)
    assert got == (-1, 0, 0, 0)

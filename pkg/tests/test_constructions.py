"""Construction generators, count oracle, tables, witnesses."""
from fractions import Fraction as F

import pytest

from ordinarycircles.constructions import (
    ALIGNED,
    CUBIC_COSET,
    ELLIPSE_SUBGROUP,
    INVERTED,
    INVERTED_CUBIC,
    INVERTED_ELLIPSE,
    OFFSET,
    PUNCTURED,
    ConstructionSpec,
    expected_counts,
    extremal_witness,
    generate,
    theorem_value,
)
from ordinarycircles.errors import InvalidParameters, NoWitnessKnown
from ordinarycircles.exactnum import exact_rational_value
from ordinarycircles.spectrum import spectrum_fast, spectrum_naive


def test_aligned_generation():
    spec = ConstructionSpec(ALIGNED, m=6, r=F(3))
    pts = generate(spec)
    assert len(pts) == 12
    assert {p.tag.split(":")[0] for p in pts} == {"inner", "outer"}


def test_special_radius_value():
    spec = ConstructionSpec(ALIGNED, m=6, special_k=1)
    r = spec.radius_expr()
    assert exact_rational_value(r) == 2  # 1 / cos(60 deg)


def test_generic_radius_must_avoid_tangent_radii():
    with pytest.raises(InvalidParameters):
        ConstructionSpec(ALIGNED, m=6, r=F(2))


def test_invalid_parameters():
    with pytest.raises(InvalidParameters):
        ConstructionSpec(ALIGNED, m=2)
    with pytest.raises(InvalidParameters):
        ConstructionSpec(ALIGNED, m=6, r=F(1, 2))
    with pytest.raises(InvalidParameters):
        ConstructionSpec(ALIGNED, m=8, special_k=2)  # cos(pi/2) = 0
    with pytest.raises(InvalidParameters):
        ConstructionSpec(ELLIPSE_SUBGROUP, n=8, s=F(1))
    with pytest.raises(InvalidParameters):
        ConstructionSpec(CUBIC_COSET, n=10, variant="Z_half_times_Z2")
    with pytest.raises(InvalidParameters):
        ConstructionSpec(PUNCTURED, m=6, removed=6)


def test_inverted_shape():
    spec = ConstructionSpec(INVERTED, m=5, r=F(3))
    pts = generate(spec)
    assert len(pts) == 9  # m on a circle, m-1 on a line
    s = spectrum_naive(pts).spectrum
    assert s.line_counts.get(4, 0) == 1  # the m-1 = 4 point line


def test_expected_counts_aligned():
    even = expected_counts(ConstructionSpec(ALIGNED, m=6, r=F(3)))
    assert even.ordinary_generalised == 24 and even.ordinary_circles == 24
    odd = expected_counts(ConstructionSpec(ALIGNED, m=5, r=F(3)))
    assert odd.ordinary_generalised == 20
    special = expected_counts(ConstructionSpec(ALIGNED, m=6, special_k=1))
    assert special.ordinary_circles == 18 and special.ordinary_generalised == 24


def test_expected_counts_offset():
    even = expected_counts(ConstructionSpec(OFFSET, m=6, r=F(3)))
    assert even.ordinary_generalised == 36  # m^2
    odd = expected_counts(ConstructionSpec(OFFSET, m=5, r=F(3)))
    assert odd.ordinary_generalised == 20  # m(m-1)


def test_expected_counts_punctured():
    assert expected_counts(ConstructionSpec(PUNCTURED, m=7, r=F(3))).ordinary_generalised == 51
    assert expected_counts(ConstructionSpec(PUNCTURED, m=8, r=F(3))).ordinary_generalised == 64


def test_expected_counts_inverted():
    odd = expected_counts(ConstructionSpec(INVERTED, m=5, r=F(3)))
    assert odd.ordinary_circles == 14
    even = expected_counts(ConstructionSpec(INVERTED, m=6, r=F(3)))
    assert even.ordinary_circles == 18


def test_expected_counts_ellipse():
    got = expected_counts(ConstructionSpec(ELLIPSE_SUBGROUP, n=8))
    assert got.ordinary_circles == 20 and got.four_point == 9


def test_measured_matches_expected_small():
    for spec in (
        ConstructionSpec(ALIGNED, m=5, r=F(3)),
        ConstructionSpec(OFFSET, m=5, r=F(3)),
        ConstructionSpec(ELLIPSE_SUBGROUP, n=7),
        ConstructionSpec(INVERTED, m=5, r=F(3)),
    ):
        expected = expected_counts(spec)
        s = spectrum_fast(generate(spec)).spectrum
        if expected.ordinary_circles is not None:
            assert s.ordinary_circles == expected.ordinary_circles, spec
        if expected.ordinary_generalised is not None:
            assert s.ordinary_generalised == expected.ordinary_generalised, spec
        if expected.four_point is not None:
            assert s.four_point_generalised == expected.four_point, spec


def test_offset_worse_than_aligned_for_n_div_4():
    m = 6  # n = 12 = 0 mod 4
    aligned = expected_counts(ConstructionSpec(ALIGNED, m=m, r=F(3)))
    offset = expected_counts(ConstructionSpec(OFFSET, m=m, r=F(3)))
    assert offset.ordinary_generalised > aligned.ordinary_generalised
    s_al = spectrum_fast(generate(ConstructionSpec(ALIGNED, m=m, r=F(3)))).spectrum
    s_off = spectrum_fast(generate(ConstructionSpec(OFFSET, m=m, r=F(3)))).spectrum
    assert s_off.ordinary_generalised > s_al.ordinary_generalised


def test_theorem_tables():
    assert theorem_value("1.1", 12) == 18
    assert theorem_value("1.2", 13) == 51
    assert theorem_value("1.3", 8) == 10
    assert theorem_value("1.3", 7) == 5
    assert theorem_value("1.3", 10) == 22
    with pytest.raises(InvalidParameters):
        theorem_value("9.9", 8)


def test_witness_specs():
    assert extremal_witness("1.2", 12).kind == ALIGNED
    assert extremal_witness("1.1", 9).kind == INVERTED
    assert extremal_witness("1.3", 7).kind == ELLIPSE_SUBGROUP
    assert extremal_witness("1.3", 12).kind == CUBIC_COSET
    with pytest.raises(NoWitnessKnown):
        extremal_witness("1.3", 16)


def test_witness_measured_value_spot():
    spec = extremal_witness("1.1", 10)
    s = spectrum_fast(generate(spec)).spectrum
    assert s.ordinary_circles == theorem_value("1.1", 10) == 15


def test_inverted_ellipse_matches_subgroup_generalised_counts():
    sub = ConstructionSpec(ELLIPSE_SUBGROUP, n=8)
    inv = ConstructionSpec(INVERTED_ELLIPSE, n=8)
    s1 = spectrum_fast(generate(sub)).spectrum
    s2 = spectrum_fast(generate(inv)).spectrum
    assert s1.ordinary_generalised == s2.ordinary_generalised
    assert s1.four_point_generalised == s2.four_point_generalised


def test_inverted_cubic_matches_counts():
    base = ConstructionSpec(INVERTED_ELLIPSE, n=7)
    quartic_side = ConstructionSpec(INVERTED_CUBIC, n=7)
    s1 = spectrum_fast(generate(base)).spectrum
    s2 = spectrum_fast(generate(quartic_side)).spectrum
    assert s1.ordinary_generalised == s2.ordinary_generalised
    assert s1.four_point_generalised == s2.four_point_generalised


def test_expected_counts_sweep_to_n16():
    """spectrum_fast(generate(spec)) reproduces every closed-form count for
    family members with up to 16 points."""
    specs = []
    for m in (4, 5, 6, 7, 8):
        specs.append(ConstructionSpec(ALIGNED, m=m, r=F(3)))
        specs.append(ConstructionSpec(OFFSET, m=m, r=F(3)))
        if 4 < m:
            specs.append(ConstructionSpec(ALIGNED, m=m, special_k=1))
    for m in (6, 7, 8):
        specs.append(ConstructionSpec(PUNCTURED, m=m, r=F(3)))
        specs.append(ConstructionSpec(INVERTED, m=m, r=F(3)))
    for n in range(5, 17):
        specs.append(ConstructionSpec(ELLIPSE_SUBGROUP, n=n))
    specs.append(ConstructionSpec(CUBIC_COSET, n=8, variant="Z_half_times_Z2"))
    specs.append(ConstructionSpec(CUBIC_COSET, n=12, variant="Z_half_times_Z2"))
    for n in (6, 10, 14):
        specs.append(ConstructionSpec(CUBIC_COSET, n=n, variant="cyclic", host="acnodal"))
    for spec in specs:
        expected = expected_counts(spec)
        s = spectrum_fast(generate(spec)).spectrum
        if expected.ordinary_circles is not None:
            assert s.ordinary_circles == expected.ordinary_circles, spec
        if expected.ordinary_generalised is not None:
            assert s.ordinary_generalised == expected.ordinary_generalised, spec
        if expected.four_point is not None:
            assert s.four_point_generalised == expected.four_point, spec


def test_witness_consistency_sweep():
    """Measured spectrum of every feasible witness up to n = 16 matches the
    value table (Thms at n in the battery range for the coset variants)."""
    selectors = {
        "1.1": "ordinary_circles",
        "1.2": "ordinary_generalised",
        "1.3": "four_point_generalised",
    }
    checked = 0
    for which, attr in selectors.items():
        top = 16 if which != "1.3" else 12
        lo = 5 if which == "1.3" else 7
        for n in range(lo, top + 1):
            try:
                spec = extremal_witness(which, n)
            except NoWitnessKnown:
                continue
            s = spectrum_fast(generate(spec)).spectrum
            assert getattr(s, attr) == theorem_value(which, n), (which, n, spec)
            checked += 1
    assert checked >= 25


def test_spec_json_round_trip():
    spec = ConstructionSpec(ALIGNED, m=6, r=F(7, 2))
    back = ConstructionSpec.from_json(spec.to_json())
    assert back.kind == spec.kind and back.params["m"] == 6 and back.params["r"] == F(7, 2)

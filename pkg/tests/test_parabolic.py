import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from flagcalc.cli import parse
from flagcalc.parabolic import (
    ModelError,
    chi_decompose,
    chi_geq,
    dominant_span,
    g0_components,
    grade,
    is_dominant,
    is_saturated,
    is_saturated_ideal,
    make_model,
    perp_profile,
    quotient_modules,
    root_sum,
    saturation_witness,
    tally,
)
from flagcalc.rootsys import pairing

from .conftest import SMALL_TYPES, all_models, crossings
from .oracles import closed_g0_subsets_min

RANK4 = [(f, r) for f, r in [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3),
                             ("B", 4), ("C", 3), ("C", 4), ("D", 4), ("G", 2), ("F", 4)]]


def test_grades():
    g2 = parse("G2[2]")
    assert grade(g2, (1, 0)) == 0
    assert grade(g2, (2, 3)) == 3
    assert g2.depth == 3
    assert grade(parse("C3[2]"), (2, 2, 1)) == 2


def test_grade_levels_are_additive():
    m = parse("F4[3]")
    for a in m.system.roots:
        assert grade(m, tuple(-x for x in a)) == -grade(m, a)
        for b in m.system.roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s in m.system.index:
                assert grade(m, s) == grade(m, a) + grade(m, b)


def test_chi_geq_examples():
    assert chi_geq(parse("G2[2]"), 1) == (5, 10)
    assert chi_geq(parse("B2[1]"), 1) == (3, 3)
    m = parse("C3[2]")
    assert not any(chi_geq(m, m.depth + 1))


def test_perp_profile_examples():
    assert set(perp_profile(parse("G2[2]"), 1)) == {(1, 0), (-1, 0)}
    assert set(perp_profile(parse("B2[1]"), 1)) == {(0, 1), (0, -1)}
    assert perp_profile(parse("A2[1,2]"), 1) == []
    with pytest.raises(ModelError):
        perp_profile(parse("B2[1]"), 2)


def test_is_dominant_examples():
    g2 = parse("G2[2]")
    assert is_dominant(g2, (0, 0))
    assert is_dominant(g2, (5, 10))
    assert not is_dominant(g2, (0, -1))


def test_saturation_examples():
    g2 = parse("G2[2]")
    neg = g2.negative_grade
    assert is_saturated(g2, neg)
    assert not is_saturated(g2, [(0, -1)])
    # grade <= -2 is not closed: adding the grade-1 root a2 to -(a1+2a2) leaves it
    deep = [r for r in neg if grade(g2, r) <= -2]
    assert not is_saturated(g2, deep)
    lam, eps = saturation_witness(g2, deep)
    assert grade(g2, tuple(x + y for x, y in zip(lam, eps))) == -1
    shallow = [r for r in neg if grade(g2, r) >= -2]
    assert is_saturated(g2, shallow)
    with pytest.raises(ModelError):
        is_saturated(g2, [(1, 0)])


def test_g0_components_examples():
    assert sorted(len(c) for c in g0_components(parse("G2[2]"))) == [1, 2, 2]
    assert [len(c) for c in g0_components(parse("B2[1]"))] == [3]
    assert [len(c) for c in g0_components(parse("A2[1,2]"))] == [1, 1, 1]


@pytest.mark.parametrize(
    "spec,expected",
    [("G2[2]", [1]), ("B2[1]", [3]), ("A2[1]", [2]), ("C3[2]", [3]), ("G2[2]xA2[1]", [1, 2])],
)
def test_tally_examples(spec, expected):
    assert tally(parse(spec)) == expected


def test_quotient_modules_examples():
    (q,) = quotient_modules(parse("A2[1]"))
    assert set(q.roots) == {(1, 0), (1, 1)} and q.dim == 2 and q.character == (2, 1)
    (q,) = quotient_modules(parse("G2[2]"))
    assert set(q.roots) == {(0, 1), (1, 1)} and q.dim == 2 and q.character == (1, 2)
    q1, q2 = quotient_modules(parse("B2[1,2]"))
    assert q1.roots == ((1, 0),) and q1.dim == 1


def test_dominant_span_examples():
    g2 = parse("G2[2]")
    assert dominant_span(g2, (0, 0)) == {1: 0}
    assert dominant_span(g2, (5, 10)) == {1: 5}
    assert dominant_span(parse("B2[1]"), (3, 3)) == {0: 1}
    with pytest.raises(ModelError):
        dominant_span(g2, (1, 0))


def test_chi_decompose_examples():
    g2 = parse("G2[2]")
    assert chi_decompose(g2, (0, 0)) == ({0: 0}, (0, 0))
    assert chi_decompose(g2, (5, 10)) == ({0: F(5, 3)}, (0, 0))
    assert chi_decompose(parse("B2[1]"), (3, 3)) == ({0: 1}, (0, 0))
    with pytest.raises(ModelError):
        chi_decompose(g2, (1, 0))


def test_make_model_errors():
    with pytest.raises(ModelError):
        make_model([("A", 2)], [[3]])
    with pytest.raises(ModelError):
        make_model([("A", 2)], [[1, 1]])


# properties over the rank <= 4 battery


def _models():
    return list(all_models(RANK4))


@pytest.mark.parametrize("m", _models(), ids=str)
def test_perpendicularity_to_chi_geq(m):
    system = m.system
    chi1 = chi_geq(m, 1)
    for b in system.roots:
        assert (pairing(system, chi1, b) == 0) == (grade(m, b) == 0)
    for j in range(1, m.depth + 1):
        chi = chi_geq(m, j + 1)
        if not any(chi):
            continue
        for b in system.roots:
            if grade(m, b) >= j:
                assert pairing(system, chi, b) > 0
    chi2 = chi_geq(m, 2)
    if any(chi2):
        for b in system.roots:
            depth_one = m.factor_depth(system.factor_of(b)) == 1
            assert (pairing(system, chi2, b) == 0) == (grade(m, b) == 0 or depth_one)


@pytest.mark.parametrize("m", _models(), ids=str)
def test_chi_geq_dominant_and_components(m):
    for k in range(1, m.depth + 1):
        assert is_dominant(m, chi_geq(m, k))
    comps = g0_components(m)
    flat = [r for c in comps for r in c]
    assert sorted(flat) == sorted(m.negative_grade)
    for c in comps:
        assert len({grade(m, r) for r in c}) == 1


@pytest.mark.parametrize("m", list(all_models(SMALL_TYPES)), ids=str)
def test_tally_matches_subset_oracle(m):
    assert tally(m) == [
        closed_g0_subsets_min(m.negative_grade, m.compact, set(m.system.roots))
    ]


@pytest.mark.parametrize("m", list(all_models([("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)])), ids=str)
def test_saturated_sums_are_dominant(m):
    pos = m.positive_grade
    count = 0
    for size in range(1, len(pos) + 1):
        for gamma in itertools.combinations(pos, size):
            if is_saturated_ideal(m, gamma):
                count += 1
                assert is_dominant(m, root_sum(gamma, m.system.rank))
    assert count >= 1


@given(st.sampled_from([("A", 3), ("B", 3), ("C", 3), ("G", 2), ("D", 4)]), st.data())
def test_dominant_span_of_chi_geq(t, data):
    fam, r = t
    cr = data.draw(st.sampled_from(list(crossings(r))))
    m = make_model([t], [list(cr)])
    k = data.draw(st.integers(1, m.depth))
    coeffs = dominant_span(m, chi_geq(m, k))
    assert all(a >= 0 for a in coeffs.values())
    total = [F(0)] * r
    for qm in quotient_modules(m):
        for i, x in enumerate(qm.character):
            total[i] += coeffs[qm.node] * x
    assert tuple(total) == chi_geq(m, k)

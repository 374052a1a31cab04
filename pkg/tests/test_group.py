import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballquot.group import (
    GroupSpec,
    InvalidGroupError,
    classify_case,
    enumerate_specs,
    is_fixed_point_free,
    is_fixed_point_free_exhaustive,
    validate_spec,
)


def subgroup_elements(m, t):
    """Brute-force oracle: the subgroup of diagonal matrices as exponent tuples."""
    return frozenset(tuple((k * v) % m for v in t) for k in range(m))


def test_validate_trivial_group():
    spec = validate_spec(1, (3, 5))
    assert (spec.m, spec.n, spec.t, spec.t_sum) == (1, 2, (0, 0), 0)


def test_validate_rescales_to_unit_minimum():
    spec = validate_spec(5, (2, 4))
    assert spec.t == (1, 2)
    # both exponent vectors generate the same subgroup of diagonal matrices
    assert subgroup_elements(5, (2, 4)) == subgroup_elements(5, (1, 2))


def test_validate_rejections():
    with pytest.raises(InvalidGroupError):
        validate_spec(4, (1, 2))  # gcd(2,4)=2
    with pytest.raises(InvalidGroupError):
        validate_spec(3, (1, 3))  # 3 = 0 mod 3
    with pytest.raises(InvalidGroupError):
        validate_spec(5, (2,))  # n < 2
    with pytest.raises(InvalidGroupError):
        validate_spec(0, (1, 1))


def test_fixed_point_free_examples():
    assert is_fixed_point_free(4, (1, 2)) is False  # k=2 fixes axis 2
    assert is_fixed_point_free(5, (1, 2)) is True
    assert is_fixed_point_free_exhaustive(6, (1, 5)) is True
    assert is_fixed_point_free_exhaustive(4, (1, 2)) is False


def test_fixed_point_free_loop_equals_gcd_exhaustive_2d():
    # Agreement is entrywise, so exhausting 1 and 2 entries covers the logic;
    # longer vectors are sampled below.
    for m in range(1, 25):
        for t1 in range(m):
            assert is_fixed_point_free(m, (t1,)) == is_fixed_point_free_exhaustive(m, (t1,))
            for t2 in range(m):
                t = (t1, t2)
                assert is_fixed_point_free(m, t) == is_fixed_point_free_exhaustive(m, t)


def test_fixed_point_free_loop_equals_gcd_sampled():
    rng = random.Random(42)
    for _ in range(1500):
        m = rng.randint(1, 24)
        n = rng.choice((3, 4))
        t = tuple(rng.randrange(m) for _ in range(n))
        assert is_fixed_point_free(m, t) == is_fixed_point_free_exhaustive(m, t)


def test_classify_case_ii_paper_instance():
    pred = classify_case(validate_spec(3, (1, 1)))
    assert pred.case_tag == "II" and pred.k == 1 and pred.a == 2
    assert (pred.lhs_degree, pred.pq_degree) == (4, 4)
    assert pred.lhs_coeff == 6561 and pred.pq_coeff == 3645
    assert pred.residual_coeff == 2916
    # the displayed comparison behind the coefficients
    assert Fraction(pred.lhs_coeff, pred.pq_coeff) == Fraction(108, 60)


def test_classify_case_i():
    pred = classify_case(validate_spec(2, (1, 1)))
    assert pred.case_tag == "I" and pred.k == 0
    assert pred.pq_degree is None and pred.pq_coeff == 0
    assert (pred.residual_degree, pred.residual_coeff) == (0, 16)


def test_classify_case_iiia():
    pred = classify_case(validate_spec(7, (1, 4)))
    assert pred.case_tag == "IIIa" and pred.k == 2 and pred.a == 1
    assert (pred.lhs_degree, pred.pq_degree) == (8, 15)
    assert (pred.residual_degree, pred.residual_coeff) == (8, 7**4 * 6**4)


def test_classify_case_iiib_tie():
    pred = classify_case(validate_spec(5, (1, 2)))
    assert pred.case_tag == "IIIb" and pred.degrees_tie
    assert pred.lhs_coeff == 810000 and pred.pq_coeff == 225000
    assert pred.residual_coeff == 585000


def test_classify_rejects_trivial():
    with pytest.raises(InvalidGroupError):
        classify_case(validate_spec(1, (0, 0)))


def test_enumerate_small():
    assert [(s.m, s.t) for s in enumerate_specs(2, 2)] == [(1, (0, 0)), (2, (1, 1))]
    m3 = [(s.m, s.t) for s in enumerate_specs(3, 2)]
    assert (3, (1, 1)) in m3 and (3, (1, 2)) in m3
    assert all(t != (2, 2) for _, t in m3)  # (2,2) rescales to (1,1)
    assert validate_spec(3, (2, 2)).t == (1, 1)


def test_enumerate_m5_classes():
    m5 = [s.t for s in enumerate_specs(5, 2) if s.m == 5]
    assert m5 == [(1, 1), (1, 2), (1, 3), (1, 4)]
    assert validate_spec(5, (2, 4)).t == (1, 2)


def test_enumerate_specs_distinct_subgroups():
    # Distinct normalized specs generate distinct diagonal subgroups.
    for n_max in (2, 3):
        specs = [s for s in enumerate_specs(6, n_max) if s.m >= 2]
        seen = {}
        for s in specs:
            key = (s.m, s.n, subgroup_elements(s.m, s.t))
            assert key not in seen, (s, seen[key])
            seen[key] = s
            assert is_fixed_point_free(s.m, s.t)


def test_enumerate_bounds_validation():
    with pytest.raises(ValueError):
        enumerate_specs(0, 2)
    with pytest.raises(ValueError):
        enumerate_specs(3, 1)


@st.composite
def raw_specs(draw):
    m = draw(st.integers(2, 24))
    units = [u for u in range(1, m) if math.gcd(u, m) == 1]
    n = draw(st.integers(2, 5))
    return m, tuple(draw(st.sampled_from(units)) for _ in range(n))


@settings(max_examples=80, deadline=None)
@given(raw_specs())
def test_validate_spec_idempotent(raw):
    m, t_raw = raw
    once = validate_spec(m, t_raw)
    twice = validate_spec(once.m, once.t)
    assert once == twice
    assert once.t[0] == 1 and list(once.t) == sorted(once.t)


@settings(max_examples=80, deadline=None)
@given(raw_specs())
def test_validate_spec_preserves_subgroup_up_to_axes(raw):
    # Rescaling by a unit picks another generator of the same subgroup; the
    # final sort can permute the coordinate axes, nothing more.
    import itertools

    m, t_raw = raw
    spec = validate_spec(m, t_raw)
    original = subgroup_elements(m, t_raw)
    normalized = subgroup_elements(m, spec.t)
    assert any(
        frozenset(tuple(e[i] for i in perm) for e in original) == normalized
        for perm in itertools.permutations(range(spec.n))
    )


def test_case_trichotomy():
    for spec in enumerate_specs(8, 4):
        if spec.m == 1:
            continue
        pred = classify_case(spec)
        assert 0 <= pred.k <= spec.m - 1
        assert (pred.k == 0) == (pred.case_tag == "I")
        assert (pred.k == 1) == (pred.case_tag == "II")
        assert (2 <= pred.k <= spec.m - 1) == (pred.case_tag in ("IIIa", "IIIb"))
        if pred.pq_degree is None:
            assert pred.residual_degree == pred.lhs_degree
        else:
            assert pred.residual_degree == min(pred.lhs_degree, pred.pq_degree)
        assert pred.residual_coeff != 0

from fractions import Fraction

import pytest

from ballquot.exactnum import CycloElem, binomial, power_of_eps
from ballquot.group import classify_case, enumerate_specs, validate_spec
from ballquot.kernel import (
    ResidualInconsistencyError,
    check_f_derivative,
    check_f_reindex,
    default_order,
    detA_slice,
    f_series,
    f_series_oracle,
    ke_residual,
    phi_diagonal_series,
    pq_series,
    residual_series,
)
from ballquot.series import TruncSeries


def test_f_series_examples():
    assert f_series(2, -1, 3, 4) == TruncSeries.make(4, (2, 0, 12, 0, 30))
    # m=1 collapses to the plain geometric power (1-x)^{-3}
    assert f_series(1, 0, 3, 3) == TruncSeries.make(3, (1, 3, 6, 10))
    # constant term rule
    for m in range(1, 7):
        for t in range(-6, 7):
            for p in range(1, 5):
                expected = Fraction(m if (t + p) % m == 0 else 0)
                assert f_series(m, t, p, 0).coeffs[0] == expected


def test_f_series_oracle_agrees_small_grid():
    for m in range(1, 6):
        for t in range(-m, m + 1):
            for p in range(1, 5):
                assert f_series(m, t, p, 12) == f_series_oracle(m, t, p, 12), (m, t, p)


def test_f_series_oracle_divisibility_scan():
    s = f_series_oracle(5, -3, 3, 10)
    assert [j for j, c in enumerate(s.coeffs) if c] == [0, 5, 10]


def test_f_series_periodicity():
    for m in range(1, 7):
        for t in range(-m, m + 1):
            for p in (1, 3):
                assert f_series(m, t, p, 15) == f_series(m, t + m, p, 15)


def test_derivative_identity():
    assert check_f_derivative(3, -2, 2, 12)
    assert check_f_derivative(1, 0, 1, 8)  # d/dx (1-x)^{-1} = (1-x)^{-2}
    assert check_f_derivative(5, 1, 4, 15)


def test_reindex_identity():
    assert check_f_reindex(4, 2, 3, 10)
    assert check_f_reindex(1, 0, 2, 6)
    assert check_f_reindex(7, 5, 4, 14)


def test_phi_diagonal_series():
    assert phi_diagonal_series(validate_spec(1, (0, 0)), 3) == TruncSeries.make(3, (1, 3, 6, 10))
    s3 = phi_diagonal_series(validate_spec(3, (1, 1)), 4)
    assert s3.coeffs[0] == 0 and s3.coeffs[1] == 9
    s2 = phi_diagonal_series(validate_spec(2, (1, 1)), 2)
    assert s2.coeffs[0] == 2


def test_pq_trivial_group_reproduces_ball_power():
    spec = validate_spec(1, (0, 0))
    p, q = pq_series(spec, 9)
    prod = p * q
    assert all(prod.coeffs[j] == binomial(11 + j, j) for j in range(10))


def test_pq_case_ii_leading_terms():
    p, q = pq_series(validate_spec(3, (1, 1)), 10)
    assert p.lowest_nonzero_term() == (4, Fraction(1215))
    assert q.lowest_nonzero_term() == (0, Fraction(3))


def test_ke_residual_trivial_control():
    report = ke_residual(validate_spec(1, (0, 0, 0)), 30)
    assert report.observed is None and report.matches
    assert report.case_tag == "trivial"


def test_ke_residual_case_i():
    report = ke_residual(validate_spec(2, (1, 1)))
    assert report.observed == (0, Fraction(16))
    assert report.matches


def test_ke_residual_case_ii_exact_values():
    report = ke_residual(validate_spec(3, (1, 1)))
    assert report.observed == (4, Fraction(2916))
    pred = report.prediction
    assert Fraction(pred.lhs_coeff, pred.pq_coeff) == Fraction(108, 60)
    assert report.matches
    assert report.order_used == default_order(report.spec) == 18


def test_ke_residual_case_iiib_tie_instance():
    report = ke_residual(validate_spec(5, (1, 2)))
    assert report.observed == (8, Fraction(585000))
    pred = report.prediction
    assert pred.lhs_coeff == 810000 and pred.pq_coeff == 225000
    assert Fraction(pred.lhs_coeff, pred.pq_coeff) == Fraction(2592, 720)


def test_ke_residual_explicit_order_too_small():
    with pytest.raises(ResidualInconsistencyError):
        ke_residual(validate_spec(5, (1, 2)), 4)


def test_residual_matches_prediction_small_scan():
    for spec in enumerate_specs(5, 3):
        if spec.m == 1:
            continue
        report = ke_residual(spec)
        assert report.matches, (spec, report.observed, report.prediction)


def test_residual_sign_property():
    # lhs first: positive; pq first: negative; tie: positive.
    for spec in enumerate_specs(6, 3):
        if spec.m == 1:
            continue
        report = ke_residual(spec)
        degree, coeff = report.observed
        pred = report.prediction
        if pred.pq_degree is None or pred.lhs_degree < pred.pq_degree:
            assert coeff > 0, spec
        elif pred.pq_degree < pred.lhs_degree:
            assert coeff < 0, spec
        else:
            assert coeff > 0, spec


def test_negative_residual_case_exists():
    # m=2, n=3: the product side's lowest degree sits below the power side's.
    report = ke_residual(validate_spec(2, (1, 1, 1)))
    pred = report.prediction
    assert pred.pq_degree < pred.lhs_degree
    assert report.observed == (3, Fraction(-1280))
    assert report.matches


def test_detA_slice_trivial_cancellation():
    spec = validate_spec(5, (1, 3))
    one = CycloElem.one(5)
    for x in (Fraction(0), Fraction(1, 4), Fraction(2, 3)):
        assert detA_slice(spec, (0, 0, 0), x) == one


def test_detA_slice_at_zero_is_phase():
    spec = validate_spec(5, (1, 3))
    for ks in ((1, 2, 3), (4, 0, 2), (0, 3, 1)):
        expected = power_of_eps(5, ks[1] * 1 + ks[2] * 3)
        assert detA_slice(spec, ks, Fraction(0)) == expected


def test_detA_slice_frozen_value():
    # Value fixed by the direct numeric determinant before the closed form
    # was written; the embedding cross-check lives in test_numeric.
    spec = validate_spec(4, (1, 3))
    value = detA_slice(spec, (1, 2, 3), Fraction(1, 3))
    assert value == CycloElem.from_rational(4, -1)


def test_detA_slice_validation():
    spec = validate_spec(4, (1, 3))
    with pytest.raises(ValueError):
        detA_slice(spec, (1, 2), Fraction(1, 3))
    with pytest.raises(ValueError):
        detA_slice(spec, (1, 2, 4), Fraction(1, 3))
    with pytest.raises(ValueError):
        detA_slice(spec, (1, 2, 3), Fraction(3, 2))


def test_residual_series_support_is_arithmetic_progression():
    # phi's support sits in k + mZ, so the (n+2)-th power side and the
    # product side both only carry degrees congruent to (n+2)k mod m, and so
    # does their difference.
    for spec in enumerate_specs(6, 2):
        if spec.m == 1:
            continue
        pred = classify_case(spec)
        series = residual_series(spec, default_order(spec))
        for j, c in enumerate(series.coeffs):
            if c:
                assert (j - (spec.n + 2) * pred.k) % spec.m == 0, (spec, j)

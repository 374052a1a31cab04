from fractions import Fraction

import pytest

from ballquot.group import classify_case, enumerate_specs, validate_spec
from ballquot.kernel import ke_residual
from ballquot.lemmas import (
    F_value,
    L_value,
    Q_ratio,
    check_F_monotone,
    check_L2_closed_form,
    check_L_monotone,
    check_comb1,
    check_elementary,
    check_main,
    check_main_simplified,
    check_rearrangement,
    elementary_sides,
    enumerate_comb1,
    scan_F_monotone,
    scan_L_monotone,
    scan_elementary,
    scan_main,
    scan_main_simplified,
    scan_rearrangement,
    tie_lemma_instance,
)


def test_comb1_displayed_instance():
    result = check_comb1(3, 2, 2, (1, 1))
    assert (result.lhs, result.rhs, result.holds) == (108, 60, True)


def test_comb1_rejects_bad_side_condition():
    with pytest.raises(ValueError):
        check_comb1(3, 3, 3, (1, 1, 1))  # the all-ones tail at n=3 needs m=4
    with pytest.raises(ValueError):
        check_comb1(5, 2, 1, (2, 3))  # t_1 must be 1
    with pytest.raises(ValueError):
        check_comb1(1, 2, 2, (1, 1))


def test_enumerate_comb1_exact_small_lists():
    assert enumerate_comb1(3, 2) == [(3, 2, 2, (1, 1))]
    # at m <= 2 the side condition is unsatisfiable for every n
    assert enumerate_comb1(2, 4) == []


def test_enumerate_comb1_hits_tail_boundary():
    # an admissible tuple with t_n = m-1, the edge the a < n branch leans on
    tuples = enumerate_comb1(12, 6)
    assert (3, 4, 3, (1, 1, 1, 2)) in tuples
    for tup in tuples:
        assert check_comb1(*tup).holds


def test_rearrangement_examples():
    r = check_rearrangement(2, 5, 1, 4)
    assert (r.lhs, r.rhs, r.holds) == (140, 200, True)
    r = check_rearrangement(1, 3, 0, 2)
    assert (r.lhs, r.rhs, r.holds) == (30, 36, True)
    with pytest.raises(ValueError):
        check_rearrangement(2, 5, 3, 4)  # needs s+1 < t


def test_F_value_example():
    assert F_value(2, 1, (1, 0)) == 80


def test_F_monotone_boundary():
    # lam = e_1 against lam = 0 (where the implied order drops to k)
    r = check_F_monotone(3, 2, (1, 0, 0), 1)
    assert r.holds
    with pytest.raises(ValueError):
        check_F_monotone(3, 2, (0, 0, 0), 1)


def test_main_examples():
    r = check_main(2, 5, 2, (1, 2))
    assert (r.lhs, r.rhs, r.holds) == (2592, 720, True)
    tight = check_main(1, 2, 2, (1, 0))
    assert (tight.lhs, tight.rhs, tight.holds) == (81, 80, True)
    neg = check_main(2, 3, 2, (2, -1))
    assert neg.holds
    with pytest.raises(ValueError):
        check_main(2, 5, 2, (1, 1))  # sum != m - k
    with pytest.raises(ValueError):
        check_main(3, 3, 2, (0, 0))  # k > m-1


def test_main_simplified_examples():
    r = check_main_simplified(2, 1)
    assert (r.lhs, r.rhs, r.holds) == (81, 80, True)
    assert check_main_simplified(2, 2).holds
    # equals the main lemma at lam = e_1, m = k+1
    for n in range(2, 5):
        for k in range(1, 6):
            direct = check_main(k, k + 1, n, (1,) + (0,) * (n - 1))
            simplified = check_main_simplified(n, k)
            assert (direct.lhs, direct.rhs) == (simplified.lhs, simplified.rhs)


def test_elementary_examples_and_sharpness():
    r = check_elementary(3, 3)
    assert (r.lhs, r.rhs, r.holds) == (15, 16, True)
    # the k = 2 region genuinely fails, which is why the hypothesis needs k >= 3
    lhs, rhs = elementary_sides(3, 2)
    assert (lhs, rhs) == (5, 4) and not lhs < rhs
    with pytest.raises(ValueError):
        check_elementary(3, 2)
    with pytest.raises(ValueError):
        check_elementary(2, 5)


def test_L_values():
    assert L_value(2, 1) == Fraction(81, 80)
    for n in range(0, 9):
        assert Q_ratio(n, 0) == 1
    assert check_L2_closed_form(1).lhs == Fraction(81, 80)
    for k in range(1, 13):
        assert check_L2_closed_form(k).holds


def test_scans_hold_at_moderate_bounds():
    assert all(r.holds for r in scan_rearrangement(8, 8))
    assert all(r.holds for r in scan_F_monotone(3, 4))
    assert all(r.holds for r in scan_main(7, 3))
    assert all(r.holds for r in scan_main_simplified(4, 6))
    assert all(r.holds for r in scan_elementary(10, 10))
    assert all(r.holds for r in scan_L_monotone(6, 8))
    assert all(check_L_monotone(n, k).holds for n in range(0, 4) for k in range(0, 4))


def test_tie_instances_match_coefficient_ratios():
    # Wherever the two sides' lowest degrees tie, the matching inequality
    # instance reproduces the exact coefficient ratio of the prediction.
    ties = 0
    for spec in enumerate_specs(8, 4):
        if spec.m == 1:
            continue
        pred = classify_case(spec)
        instance = tie_lemma_instance(spec, pred)
        if pred.degrees_tie:
            ties += 1
            assert instance is not None and instance.holds, (spec, instance)
            assert instance.lhs / instance.rhs == pred.lhs_coeff / pred.pq_coeff
            report = ke_residual(spec)
            assert report.observed[1] > 0  # the tie resolves to a positive residual
        else:
            assert instance is None
    assert ties > 0


def _reduce_to_simplified(k, m, n, lam):
    """Replay the three-step reduction, returning the rhs trajectory."""
    lam = list(lam)
    trail = [check_main(k, m, n, tuple(lam)).rhs]
    # Step 1: push negative entries up, compensating at a positive entry.
    while any(v < 0 for v in lam):
        j1 = min(range(n), key=lambda i: lam[i])
        j2 = max(range(n), key=lambda i: lam[i])
        assert lam[j1] < 0 < lam[j2]
        lam[j1] += 1
        lam[j2] -= 1
        trail.append(check_main(k, m, n, tuple(lam)).rhs)
    # Step 2: lower positive entries one by one; F grows, m shrinks with it.
    total = sum(lam)
    while total > 1:
        j = max(range(n), key=lambda i: lam[i])
        before = F_value(n, k, tuple(lam))
        lam[j] -= 1
        total -= 1
        after = F_value(n, k, tuple(lam))
        assert before <= after
        trail.append(check_main(k, k + total, n, tuple(lam)).rhs)
    # Step 3: the end state is a unit vector; compare with the closed form.
    assert sorted(lam, reverse=True) == [1] + [0] * (n - 1)
    simplified = check_main_simplified(n, k)
    assert trail[-1] == simplified.rhs
    return trail, simplified


def test_main_lemma_reduction_chain():
    cases = [
        (2, 3, 2, (2, -1)),
        (2, 5, 2, (1, 2)),
        (2, 4, 3, (2, 1, -1)),
        (3, 7, 2, (1, 3)),
        (3, 8, 4, (-2, 3, 3, 1)),
    ]
    for k, m, n, lam in cases:
        start = check_main(k, m, n, lam)
        trail, simplified = _reduce_to_simplified(k, m, n, lam)
        # rhs never shrinks along the reduction, so the simplified bound
        # dominates; a holding endpoint certifies every stop along the way.
        assert all(a <= b for a, b in zip(trail, trail[1:]))
        assert simplified.holds
        assert start.lhs == simplified.lhs
        assert start.holds

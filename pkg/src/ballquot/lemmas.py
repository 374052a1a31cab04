"""Exact verifiers and enumerators for the combinatorial inequalities.

Each checker evaluates both sides of one inequality in exact big-integer or
rational arithmetic and records whether the stated relation holds.  The scan
helpers enumerate every admissible parameter tuple inside finite bounds;
they are confidence checks over a finite range, not proofs, and reports
should label them as such.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exactnum import binomial
from .group import CasePrediction, GroupSpec

__all__ = [
    "LEMMA_IDS",
    "LemmaCheckResult",
    "F_value",
    "L_value",
    "Q_ratio",
    "check_F_monotone",
    "check_L2_closed_form",
    "check_L_monotone",
    "check_comb1",
    "check_elementary",
    "check_main",
    "check_main_simplified",
    "check_rearrangement",
    "elementary_sides",
    "enumerate_comb1",
    "scan_F_monotone",
    "scan_L_monotone",
    "scan_elementary",
    "scan_main",
    "scan_main_simplified",
    "scan_rearrangement",
    "tie_lemma_instance",
]

LEMMA_IDS = (
    "comb1",
    "rearrange",
    "fmono",
    "main",
    "simplified",
    "elementary",
    "lmono",
    "l2closed",
)


@dataclass(frozen=True)
class LemmaCheckResult:
    lemma_id: str
    params: tuple
    lhs: Fraction
    rhs: Fraction
    holds: bool


def check_comb1(m: int, n: int, a: int, t) -> LemmaCheckResult:
    """(n+1)^{n+1}(m+1) > m C(n+m+1, m) prod_{j>a} C(m+n+2-t_j, m+1-t_j).

    Admissible data: m, n >= 2, 1 <= a <= n, t_1 = ... = t_a = 1 < t_{a+1}
    <= ... <= t_n <= m-1, under the degree-tie side condition
    n+2 = (m+1)(n-a+1) - sum_{j>a} t_j.

    >>> check_comb1(3, 2, 2, (1, 1))
    LemmaCheckResult(lemma_id='comb1', params=(3, 2, 2, (1, 1)), lhs=Fraction(108, 1), rhs=Fraction(60, 1), holds=True)
    """
    t = tuple(int(v) for v in t)
    if m < 2 or n < 2:
        raise ValueError("need m >= 2 and n >= 2")
    if not 1 <= a <= n or len(t) != n:
        raise ValueError("need 1 <= a <= n and a length-n exponent vector")
    if any(v != 1 for v in t[:a]):
        raise ValueError("t_1 .. t_a must all equal 1")
    tail = t[a:]
    if tail and (tail[0] <= 1 or any(x > y for x, y in zip(tail, tail[1:])) or tail[-1] > m - 1):
        raise ValueError("t_{a+1} .. t_n must be nondecreasing in [2, m-1]")
    if n + 2 != (m + 1) * (n - a + 1) - sum(tail):
        raise ValueError("degree-tie side condition fails for this tuple")
    lhs = Fraction((n + 1) ** (n + 1) * (m + 1))
    rhs = Fraction(m) * binomial(n + m + 1, m)
    for tj in tail:
        rhs *= binomial(m + n + 2 - tj, m + 1 - tj)
    return LemmaCheckResult("comb1", (m, n, a, t), lhs, rhs, lhs > rhs)


def enumerate_comb1(max_m: int, max_n: int) -> list[tuple]:
    """All admissible (m, n, a, t) tuples with m <= max_m and n <= max_n."""
    found = []
    for n in range(2, max_n + 1):
        for m in range(2, max_m + 1):
            for a in range(1, n + 1):
                for tail in itertools.combinations_with_replacement(range(2, m), n - a):
                    if n + 2 == (m + 1) * (n - a + 1) - sum(tail):
                        found.append((m, n, a, (1,) * a + tail))
    return found


def check_rearrangement(n: int, k: int, s: int, t: int) -> LemmaCheckResult:
    """Pushing an extreme pair (s, t) with s+1 < t <= k inward grows the product:

    C(n+1+k-s, k-s) C(n+1+k-t, k-t) < C(n+k-s, k-s-1) C(n+2+k-t, k-t+1).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if not s + 1 < t <= k:
        raise ValueError("need s+1 < t <= k")
    lhs = Fraction(binomial(n + 1 + k - s, k - s) * binomial(n + 1 + k - t, k - t))
    rhs = Fraction(binomial(n + k - s, k - s - 1) * binomial(n + 2 + k - t, k - t + 1))
    return LemmaCheckResult("rearrange", (n, k, s, t), lhs, rhs, lhs < rhs)


def scan_rearrangement(max_n: int, max_k: int, min_s: int | None = None) -> list[LemmaCheckResult]:
    # s is unbounded below in the statement; the scan floor defaults to -max_k,
    # which covers every value the negative-entry reduction can produce here.
    floor = -max_k if min_s is None else min_s
    out = []
    for n in range(1, max_n + 1):
        for k in range(1, max_k + 1):
            for s in range(floor, k - 1):
                for t in range(s + 2, k + 1):
                    out.append(check_rearrangement(n, k, s, t))
    return out


def F_value(n: int, k: int, lam) -> Fraction:
    """m C(n+k+m, n) prod_j C(n+1+k-lam_j, k-lam_j), with m = k + sum(lam)."""
    lam = tuple(int(v) for v in lam)
    m = k + sum(lam)
    value = Fraction(m) * binomial(n + k + m, n)
    for lj in lam:
        value *= binomial(n + 1 + k - lj, k - lj)
    return value


def check_F_monotone(n: int, k: int, lam, j1: int) -> LemmaCheckResult:
    """F does not decrease when one positive entry is lowered by 1.

    Note the implied group order moves with the vector: F(lam - e_{j1}) is
    evaluated at m - 1.
    """
    lam = tuple(int(v) for v in lam)
    if n < 1 or k < 1:
        raise ValueError("need n, k >= 1")
    if len(lam) != n or any(not 0 <= v <= k for v in lam):
        raise ValueError("need a length-n vector with entries in [0, k]")
    if not 1 <= j1 <= n or lam[j1 - 1] < 1:
        raise ValueError("entry j1 must exist and be >= 1")
    lowered = lam[: j1 - 1] + (lam[j1 - 1] - 1,) + lam[j1:]
    lhs = F_value(n, k, lam)
    rhs = F_value(n, k, lowered)
    return LemmaCheckResult("fmono", (n, k, lam, j1), lhs, rhs, lhs <= rhs)


def scan_F_monotone(max_n: int, max_k: int, max_total: int = 6) -> list[LemmaCheckResult]:
    out = []
    for n in range(1, max_n + 1):
        for k in range(1, max_k + 1):
            for lam in itertools.product(range(0, min(k, max_total) + 1), repeat=n):
                if not 1 <= sum(lam) <= max_total:
                    continue
                for j1 in range(1, n + 1):
                    if lam[j1 - 1] >= 1:
                        out.append(check_F_monotone(n, k, lam, j1))
    return out


def check_main(k: int, m: int, n: int, lam) -> LemmaCheckResult:
    """k C(n+k,k)^{n+2} > m C(n+k+m,n) prod_j C(n+1+k-lam_j, k-lam_j).

    Hypotheses: 1 <= k <= m-1, n >= 2, every lam_j <= k (negative entries
    allowed) and sum(lam) = m - k.

    >>> check_main(1, 2, 2, (1, 0)).lhs, check_main(1, 2, 2, (1, 0)).rhs
    (Fraction(81, 1), Fraction(80, 1))
    """
    lam = tuple(int(v) for v in lam)
    if n < 2:
        raise ValueError("need n >= 2")
    if not 1 <= k <= m - 1:
        raise ValueError("need 1 <= k <= m-1")
    if len(lam) != n or any(v > k for v in lam):
        raise ValueError("need a length-n vector with entries <= k")
    if sum(lam) != m - k:
        raise ValueError("need sum(lam) = m - k")
    lhs = Fraction(k) * binomial(n + k, k) ** (n + 2)
    rhs = Fraction(m) * binomial(n + k + m, n)
    for lj in lam:
        rhs *= binomial(n + 1 + k - lj, k - lj)
    return LemmaCheckResult("main", (k, m, n, lam), lhs, rhs, lhs > rhs)


def scan_main(max_m: int, max_n: int, min_lambda: int = -3) -> list[LemmaCheckResult]:
    out = []
    for n in range(2, max_n + 1):
        for m in range(2, max_m + 1):
            for k in range(1, m):
                for lam in _vectors_with_sum(n, min_lambda, k, m - k):
                    out.append(check_main(k, m, n, lam))
    return out


def _vectors_with_sum(length: int, lo: int, hi: int, total: int):
    if length == 0:
        if total == 0:
            yield ()
        return
    for v in range(lo, hi + 1):
        rest = total - v
        if (length - 1) * lo <= rest <= (length - 1) * hi:
            for tail in _vectors_with_sum(length - 1, lo, hi, rest):
                yield (v,) + tail


def check_main_simplified(n: int, k: int) -> LemmaCheckResult:
    """The fully reduced form of the main inequality (lam = e_1, m = k+1):

    k C(n+k,k)^{n+2} > (k+1) C(n+2k+1,n) C(n+k,k-1) C(n+k+1,k)^{n-1}.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    lhs = Fraction(k) * binomial(n + k, k) ** (n + 2)
    rhs = (
        Fraction(k + 1)
        * binomial(n + 2 * k + 1, n)
        * binomial(n + k, k - 1)
        * binomial(n + k + 1, k) ** (n - 1)
    )
    return LemmaCheckResult("simplified", (n, k), lhs, rhs, lhs > rhs)


def scan_main_simplified(max_n: int, max_k: int) -> list[LemmaCheckResult]:
    return [
        check_main_simplified(n, k)
        for n in range(2, max_n + 1)
        for k in range(1, max_k + 1)
    ]


def elementary_sides(n: int, k: int) -> tuple[int, int]:
    """Both sides of C(n+k, k-1) < (n+1)^{k-1}, with no hypothesis enforced.

    Exposed separately because the inequality genuinely fails for k <= 2;
    the sharpness of the k >= 3 hypothesis is itself worth checking.
    """
    return binomial(n + k, k - 1), (n + 1) ** (k - 1)


def check_elementary(n: int, k: int) -> LemmaCheckResult:
    """C(n+k, k-1) < (n+1)^{k-1} for n, k >= 3."""
    if n < 3 or k < 3:
        raise ValueError("need n >= 3 and k >= 3 (the bound fails below that)")
    lhs, rhs = elementary_sides(n, k)
    return LemmaCheckResult("elementary", (n, k), Fraction(lhs), Fraction(rhs), lhs < rhs)


def scan_elementary(max_n: int, max_k: int) -> list[LemmaCheckResult]:
    return [
        check_elementary(n, k)
        for n in range(3, max_n + 1)
        for k in range(3, max_k + 1)
    ]


def L_value(n: int, k: int) -> Fraction:
    """L(n,k) = (n+1)^n / ((k+1)(n+k+1)^{n-1}) * (n+k)!^2 (2k+1)! / (n! k!^2 (n+2k+1)!).

    >>> L_value(2, 1)
    Fraction(81, 80)
    """
    if n < 0 or k < 0:
        raise ValueError("need n, k >= 0")
    # Fraction ** (1 - n) keeps the n = 0 boundary exact: (n+k+1)^{n-1} = 1/(k+1).
    head = Fraction((n + 1) ** n, k + 1) * Fraction(n + k + 1) ** (1 - n)
    return head * Fraction(
        factorial(n + k) ** 2 * factorial(2 * k + 1),
        factorial(n) * factorial(k) ** 2 * factorial(n + 2 * k + 1),
    )


def Q_ratio(n: int, k: int) -> Fraction:
    """L(n+1, k) / L(n, k)."""
    return L_value(n + 1, k) / L_value(n, k)


def check_L_monotone(n: int, k: int) -> LemmaCheckResult:
    """L(n, k) <= L(n+1, k)."""
    lhs = L_value(n, k)
    rhs = L_value(n + 1, k)
    return LemmaCheckResult("lmono", (n, k), lhs, rhs, lhs <= rhs)


def scan_L_monotone(max_n: int, max_k: int) -> list[LemmaCheckResult]:
    return [
        check_L_monotone(n, k)
        for n in range(0, max_n + 1)
        for k in range(0, max_k + 1)
    ]


def check_L2_closed_form(k: int) -> LemmaCheckResult:
    """L(2, k) equals 9(k^2+4k+4) / (4(2k^2+9k+9)), and that value exceeds 1."""
    if k < 1:
        raise ValueError("need k >= 1")
    lhs = L_value(2, k)
    rhs = Fraction(9 * (k * k + 4 * k + 4), 4 * (2 * k * k + 9 * k + 9))
    return LemmaCheckResult("l2closed", (k,), lhs, rhs, lhs == rhs and lhs > 1)


def tie_lemma_instance(spec: GroupSpec, prediction: CasePrediction) -> LemmaCheckResult | None:
    """The inequality instance matching a degree-tied prediction, or None.

    For a Case II tie this is the comb1 instance at (m, n, a, t); for a Case
    III tie it is the main-lemma instance with lam = (t_1, ..., t_a,
    t_{a+1}-m, ..., t_n-m).  By construction lhs/rhs of the instance equals
    lhs_coeff/pq_coeff of the prediction.
    """
    if not prediction.degrees_tie:
        return None
    if prediction.case_tag == "II":
        return check_comb1(spec.m, spec.n, prediction.a, spec.t)
    a = prediction.a
    lam = spec.t[:a] + tuple(tj - spec.m for tj in spec.t[a:])
    return check_main(prediction.k, spec.m, spec.n, lam)

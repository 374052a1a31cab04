"""Series side of the diagonal Kähler-Einstein identity.

On the slice z = (z_1, 0, ..., 0) with x = |z_1|^2, everything reduces to
the one-parameter family

    f_{t,p}(x) = sum_{k=0}^{m-1} eps^{-tk} (eps^k - x)^{-p},

whose Taylor coefficient of x^j is m * C(p+j-1, j) when m | (t+p+j) and 0
otherwise.  :func:`f_series` builds that expansion directly from the
divisibility rule; :func:`f_series_oracle` rebuilds it by literal character
summation in Q(eps) and is the independent check of the rule.

The kernel function restricted to the diagonal slice is
phi(x) = f_{|T|-(n+1), n+1}(x) with |T| = sum(t), and the bordered
Monge-Ampère determinant collapses (after dividing out a factor (n+1)^n)
into P(x) * Q(x) with P and Q products of nearby f's.  The metric is
Einstein exactly when phi^{n+2} = P * Q, so the object of interest is the
residual series R = phi^{n+2} - P*Q: identically zero for the trivial
group, and with a nonzero lowest term whose degree and coefficient are
predicted by :func:`ballquot.group.classify_case` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import CycloElem, binomial, power_of_eps
from .group import CasePrediction, GroupSpec, classify_case
from .series import CycloSeries, TruncSeries

__all__ = [
    "ResidualInconsistencyError",
    "ResidualReport",
    "check_f_derivative",
    "check_f_reindex",
    "default_order",
    "detA_slice",
    "f_series",
    "f_series_oracle",
    "ke_residual",
    "phi_diagonal_series",
    "pq_series",
    "residual_series",
]


class ResidualInconsistencyError(RuntimeError):
    """The residual series contradicts what is provable about it."""


def f_series(m: int, t: int, p: int, order: int) -> TruncSeries:
    """Taylor expansion of f_{t,p} to the given order, from the closed rule.

    Coefficient of x^j: m * C(p+j-1, j) if m | (t+p+j), else 0.

    >>> f_series(2, -1, 3, 4).coeffs
    (Fraction(2, 1), Fraction(0, 1), Fraction(12, 1), Fraction(0, 1), Fraction(30, 1))
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if p < 1:
        raise ValueError("p must be >= 1")
    coeffs = tuple(
        Fraction(m * binomial(p + j - 1, j)) if (t + p + j) % m == 0 else Fraction(0)
        for j in range(order + 1)
    )
    return TruncSeries(order, coeffs)


def f_series_oracle(m: int, t: int, p: int, order: int) -> TruncSeries:
    """f_{t,p} by direct summation over the group, expanded in Q(eps)[[x]].

    Each term is expanded geometrically,

        eps^{-tk} (eps^k - x)^{-p} = eps^{-k(t+p)} sum_j C(p+j-1, j) eps^{-kj} x^j,

    the m terms are added as CycloSeries, and the sum is converted down to a
    rational series.  A non-rational coefficient raises, which is the
    internal consistency check this oracle provides.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if p < 1:
        raise ValueError("p must be >= 1")
    total = CycloSeries.zero(m, order)
    for k in range(m):
        term = CycloSeries(
            m,
            order,
            tuple(
                power_of_eps(m, -k * (t + p + j)) * binomial(p + j - 1, j)
                for j in range(order + 1)
            ),
        )
        total = total + term
    return total.to_trunc_series()


def check_f_derivative(m: int, t: int, p: int, order: int) -> bool:
    """Does d/dx f_{t,p} equal p * f_{t,p+1}, as exact series to the order?"""
    if order < 1:
        raise ValueError("need order >= 1 to differentiate")
    lhs = f_series(m, t, p, order).derivative()
    rhs = f_series(m, t, p + 1, order - 1).scale(p)
    return lhs == rhs


def check_f_reindex(m: int, t: int, p: int, order: int) -> bool:
    """Does sum_k eps^{tk} (1 - eps^k x)^{-p} equal f_{t-p, p}?

    The left side is expanded by literal character summation in Q(eps) and
    compared with the closed-rule series for shifted character t - p.
    """
    total = CycloSeries.zero(m, order)
    for k in range(m):
        term = CycloSeries(
            m,
            order,
            tuple(
                power_of_eps(m, k * (t + j)) * binomial(p + j - 1, j)
                for j in range(order + 1)
            ),
        )
        total = total + term
    return total.to_trunc_series() == f_series(m, t - p, p, order)


def phi_diagonal_series(spec: GroupSpec, order: int) -> TruncSeries:
    """The kernel function on the diagonal slice: f_{|T|-(n+1), n+1}."""
    return f_series(spec.m, spec.t_sum - (spec.n + 1), spec.n + 1, order)


def pq_series(spec: GroupSpec, order: int) -> tuple[TruncSeries, TruncSeries]:
    """The two factors of the determinant side of the diagonal identity.

    P = f_{|T|-(n+2),n+2} f_{|T|-(n+1),n+2}
        - (n+2) x (f_{|T|-(n+1),n+2}^2 - f_{|T|-(n+1),n+1} f_{|T|-(n+1),n+3})
    Q = prod_{j=2}^{n} f_{|T|+t_j-(n+2),n+2}
    """
    m, n, ts = spec.m, spec.n, spec.t_sum
    fa = f_series(m, ts - (n + 2), n + 2, order)
    fb = f_series(m, ts - (n + 1), n + 2, order)
    fc = f_series(m, ts - (n + 1), n + 1, order)
    fe = f_series(m, ts - (n + 1), n + 3, order)
    p = fa * fb - (fb * fb - fc * fe).shift_by_x().scale(n + 2)
    q = TruncSeries.one(order)
    for tj in spec.t[1:]:
        q = q * f_series(m, ts + tj - (n + 2), n + 2, order)
    return p, q


def residual_series(spec: GroupSpec, order: int) -> TruncSeries:
    """R = phi^{n+2} - P*Q at the given truncation order."""
    phi = phi_diagonal_series(spec, order)
    p, q = pq_series(spec, order)
    return phi ** (spec.n + 2) - p * q


def default_order(spec: GroupSpec) -> int:
    # Both candidate lowest degrees are bounded by (m-1)(n+2) at any scale
    # this package enumerates, so this order always sees the lowest term.
    return (spec.n + 2) * spec.m + spec.n + 4


@dataclass(frozen=True)
class ResidualReport:
    """Observed versus predicted lowest term of the residual series.

    ``observed`` is a ``(degree, coefficient)`` pair, or None when the
    residual vanished identically up to ``order_used`` (required for m = 1,
    impossible for m >= 2).  ``prediction`` is None for the trivial group.
    """

    spec: GroupSpec
    order_used: int
    observed: tuple[int, Fraction] | None
    prediction: CasePrediction | None
    degree_match: bool
    coeff_match: bool

    @property
    def matches(self) -> bool:
        return self.degree_match and self.coeff_match

    @property
    def case_tag(self) -> str:
        return self.prediction.case_tag if self.prediction is not None else "trivial"


def ke_residual(spec: GroupSpec, order=None) -> ResidualReport:
    """Compute the residual series and compare its lowest term to the prediction.

    ``order=None`` (or the string ``"auto"``) picks :func:`default_order`; in
    that mode, a residual that vanishes up to the order for a nontrivial
    group triggers one retry at twice the order before the vanishing is
    reported as a hard inconsistency.  For the trivial group the residual
    must vanish identically to the order used.

    >>> ke_residual(GroupSpec(3, 2, (1, 1), 2)).observed
    (4, Fraction(2916, 1))
    """
    auto = order is None or order == "auto"
    used = default_order(spec) if auto else int(order)
    if used < 0:
        raise ValueError("truncation order must be nonnegative")
    lowest = residual_series(spec, used).lowest_nonzero_term()
    if lowest is None and spec.m >= 2 and auto:
        used *= 2
        lowest = residual_series(spec, used).lowest_nonzero_term()

    if spec.m == 1:
        if lowest is not None:
            raise ResidualInconsistencyError(
                f"trivial group produced a nonzero residual term {lowest}"
            )
        return ResidualReport(spec, used, None, None, True, True)

    if lowest is None:
        raise ResidualInconsistencyError(
            f"residual of {spec} vanished to order {used}; this contradicts the "
            "nontriviality of the group (or the order was forced too small)"
        )
    prediction = classify_case(spec)
    return ResidualReport(
        spec=spec,
        order_used=used,
        observed=lowest,
        prediction=prediction,
        degree_match=lowest[0] == prediction.residual_degree,
        coeff_match=lowest[1] == prediction.residual_coeff,
    )


def detA_slice(spec: GroupSpec, k_indices, x) -> CycloElem:
    """Closed form of the column determinant on the slice, exactly in Q(eps).

    For group element indices (k_0, ..., k_n) and x = |z_1|^2:

        eps^{k_1 + sum_{j>=2} k_j t_j}
        * (1 - (n+2) eps^{k_0} x
             + (n+2) eps^{k_1} x (1 - eps^{k_0} x) / (1 - eps^{k_1} x))

    >>> spec = GroupSpec(4, 2, (1, 3), 4)
    >>> detA_slice(spec, (0, 0, 0), Fraction(1, 3)).to_rational()
    Fraction(1, 1)
    """
    m, n = spec.m, spec.n
    ks = [int(k) for k in k_indices]
    if len(ks) != n + 1:
        raise ValueError(f"need n+1 = {n + 1} group indices, got {len(ks)}")
    if any(not 0 <= k <= m - 1 for k in ks):
        raise ValueError("group indices must lie in [0, m-1]")
    xq = Fraction(x)
    if not -1 < xq < 1:
        raise ValueError("x must satisfy |x| < 1")
    one = CycloElem.one(m)
    e0 = power_of_eps(m, ks[0])
    e1 = power_of_eps(m, ks[1])
    den = one - e1 * xq
    if not den:
        raise ZeroDivisionError("1 - eps^{k_1} x vanished")
    inner = one - e0 * (xq * (n + 2)) + (one - e0 * xq) / den * e1 * (xq * (n + 2))
    phase = sum(k * tj for k, tj in zip(ks[1:], spec.t))
    return power_of_eps(m, phase) * inner

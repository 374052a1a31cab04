"""Cyclic diagonal subgroups of U(n) and their case taxonomy.

A group here is the cyclic subgroup of diagonal unitaries generated by
diag(eps^{t_1}, ..., eps^{t_n}) with eps = exp(2*pi*i/m).  The fixed point
free condition (no nonidentity element fixes a boundary point) forces every
exponent to be a unit mod m, and the exponent vector is normalized so that
t_1 = 1 and t is nondecreasing.  The trivial group is encoded as m = 1 with
zero exponents; it is the control case in which the Kähler-Einstein identity
actually holds.

:func:`classify_case` predicts, from (m, t) alone, the degree and exact
coefficient of the lowest-order mismatch between the two sides of the
diagonal Kähler-Einstein equation.  The kernel module recomputes the same
data from truncated series and the two paths are compared everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import binomial

__all__ = [
    "CASE_TAGS",
    "CasePrediction",
    "GroupSpec",
    "InvalidGroupError",
    "classify_case",
    "enumerate_specs",
    "is_fixed_point_free",
    "is_fixed_point_free_exhaustive",
    "validate_spec",
]

CASE_TAGS = ("trivial", "I", "II", "IIIa", "IIIb")


class InvalidGroupError(ValueError):
    """The given (m, t) data does not describe a fixed point free cyclic group."""


@dataclass(frozen=True)
class GroupSpec:
    """Normalized group data: order m, dimension n, sorted exponent vector t.

    Invariants (enforced by :func:`validate_spec`): n >= 2; for m >= 2 every
    t_j is a unit mod m, t is nondecreasing and t_1 = 1; for m = 1 all t_j
    are 0.  ``t_sum`` caches sum(t).
    """

    m: int
    n: int
    t: tuple[int, ...]
    t_sum: int

    def __post_init__(self) -> None:
        assert self.n == len(self.t) and self.t_sum == sum(self.t)

    def __str__(self) -> str:
        return f"m={self.m} t=({','.join(map(str, self.t))})"


def validate_spec(m: int, t_raw) -> GroupSpec:
    """Validate and normalize raw exponent data into a :class:`GroupSpec`.

    Entries are reduced mod m; any entry that is 0 mod m or shares a factor
    with m is rejected (the group would fix a boundary point).  The vector is
    then rescaled by the modular inverse of its smallest entry, which picks
    the generator whose first exponent is 1, and sorted.

    >>> validate_spec(5, (2, 4)).t
    (1, 2)
    >>> validate_spec(1, (3, 5)).t
    (0, 0)
    """
    t_list = [int(v) for v in t_raw]
    n = len(t_list)
    if m < 1:
        raise InvalidGroupError(f"group order must be >= 1, got {m}")
    if n < 2:
        raise InvalidGroupError(f"dimension must be >= 2, got {n}")
    if m == 1:
        t = (0,) * n
        return GroupSpec(1, n, t, 0)
    reduced = []
    for v in t_list:
        r = v % m
        if r == 0:
            raise InvalidGroupError(f"exponent {v} = 0 mod {m}: not fixed point free")
        g = math.gcd(r, m)
        if g != 1:
            raise InvalidGroupError(f"gcd({r},{m})={g} != 1: not fixed point free")
        reduced.append(r)
    unit = pow(min(reduced), -1, m)
    t = tuple(sorted((unit * r) % m for r in reduced))
    return GroupSpec(m, n, t, sum(t))


def is_fixed_point_free(m: int, t) -> bool:
    """gcd form of the fixed point free test: every t_j is a unit mod m.

    Equivalent to the definition-level loop in
    :func:`is_fixed_point_free_exhaustive`; both are kept so the shortcut can
    be checked against the definition.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    return all(math.gcd(v % m, m) == 1 for v in t)


def is_fixed_point_free_exhaustive(m: int, t) -> bool:
    """Definition-level test: no power k in [1, m-1] has m | k*t_j for any j.

    diag(eps^{k t_1}, ..., eps^{k t_n}) fixes a boundary point exactly when
    one of its eigenvalues is 1, i.e. when m | k*t_j for some j.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    for k in range(1, m):
        for v in t:
            if (k * v) % m == 0:
                return False
    return True


@dataclass(frozen=True)
class CasePrediction:
    """Predicted lowest-order data for both sides of the diagonal identity.

    ``k`` is the smallest j >= 0 with m | (sum(t) + j); the case tag is I for
    k = 0, II for k = 1 and IIIa/IIIb for 2 <= k <= m-1 (b when every t_j is
    at most k).  ``pq_degree`` is None in Case I: there the argument only
    needs that the product side has no constant term, so no finite lowest
    degree is predicted for it.
    """

    case_tag: str
    k: int
    a: int | None
    lhs_degree: int
    lhs_coeff: Fraction
    pq_degree: int | None
    pq_coeff: Fraction
    residual_degree: int
    residual_coeff: Fraction

    @property
    def degrees_tie(self) -> bool:
        return self.pq_degree is not None and self.pq_degree == self.lhs_degree


def classify_case(spec: GroupSpec) -> CasePrediction:
    """Case tag plus exact lowest-term predictions for a nontrivial group.

    >>> classify_case(validate_spec(3, (1, 1))).residual_coeff
    Fraction(2916, 1)
    """
    m, n, t = spec.m, spec.n, spec.t
    if m < 2:
        raise InvalidGroupError("the trivial group has no mismatch to predict")
    k = (-spec.t_sum) % m

    if k == 0:
        lhs_degree = 0
        lhs_coeff = Fraction(m ** (n + 2))
        prediction = CasePrediction(
            case_tag="I",
            k=0,
            a=None,
            lhs_degree=lhs_degree,
            lhs_coeff=lhs_coeff,
            pq_degree=None,
            pq_coeff=Fraction(0),
            residual_degree=lhs_degree,
            residual_coeff=lhs_coeff,
        )
    elif k == 1:
        a = sum(1 for v in t if v == 1)
        tail = t[a:]
        lhs_degree = n + 2
        lhs_coeff = Fraction((n + 1) ** (n + 2) * m ** (n + 2))
        pq_degree = (m + 1) * (n - a + 1) - sum(tail)
        pq_coeff = Fraction(m ** (n + 3) * (n + 1), m + 1) * binomial(n + m + 1, m)
        for tj in tail:
            pq_coeff *= binomial(m + n + 2 - tj, m + 1 - tj)
        prediction = _with_residual("II", k, a, lhs_degree, lhs_coeff, pq_degree, pq_coeff)
    else:
        a = sum(1 for v in t if v <= k)
        head, tail = t[1:a], t[a:]
        tag = "IIIb" if a == n else "IIIa"
        lhs_degree = k * (n + 2)
        lhs_coeff = Fraction(m ** (n + 2)) * binomial(n + k, k) ** (n + 2)
        pq_degree = (n + 1) * k + m - 1 - sum(head) + sum(m - tj for tj in tail)
        pq_coeff = (
            Fraction(m ** (n + 3), k)
            * binomial(n + k, k - 1)
            * binomial(n + k + m, n)
        )
        for tj in head:
            pq_coeff *= binomial(n + 1 + k - tj, k - tj)
        for tj in tail:
            pq_coeff *= binomial(n + 1 + m + k - tj, m + k - tj)
        prediction = _with_residual(tag, k, a, lhs_degree, lhs_coeff, pq_degree, pq_coeff)

    # The residual coefficient being nonzero for every m >= 2 is the theorem;
    # the kernel module re-verifies it against the actual series.
    assert prediction.residual_coeff != 0
    return prediction


def _with_residual(tag, k, a, lhs_degree, lhs_coeff, pq_degree, pq_coeff) -> CasePrediction:
    if lhs_degree < pq_degree:
        res_degree, res_coeff = lhs_degree, lhs_coeff
    elif pq_degree < lhs_degree:
        res_degree, res_coeff = pq_degree, -pq_coeff
    else:
        res_degree, res_coeff = lhs_degree, lhs_coeff - pq_coeff
    return CasePrediction(
        case_tag=tag,
        k=k,
        a=a,
        lhs_degree=lhs_degree,
        lhs_coeff=lhs_coeff,
        pq_degree=pq_degree,
        pq_coeff=pq_coeff,
        residual_degree=res_degree,
        residual_coeff=res_coeff,
    )


def _units(m: int) -> list[int]:
    return [u for u in range(1, m) if math.gcd(u, m) == 1]


def enumerate_specs(max_m: int, max_n: int) -> list[GroupSpec]:
    """All normalized specs with m <= max_m and 2 <= n <= max_n, no duplicates.

    Two exponent vectors describe the same group exactly when one is a unit
    multiple of the other (choosing a different generator of the same cyclic
    subgroup); among sorted vectors with t_1 = 1 that forces the unit to be
    1, so enumerating nondecreasing unit vectors starting at 1 lists each
    group once.  Output is sorted by (m, n, t).

    >>> [ (s.m, s.t) for s in enumerate_specs(2, 2) ]
    [(1, (0, 0)), (2, (1, 1))]
    """
    if max_m < 1:
        raise ValueError("max_m must be >= 1")
    if max_n < 2:
        raise ValueError("max_n must be >= 2")
    specs = []
    for n in range(2, max_n + 1):
        specs.append(validate_spec(1, (0,) * n))
        for m in range(2, max_m + 1):
            units = _units(m)
            specs.extend(
                GroupSpec(m, n, (1,) + tail, 1 + sum(tail))
                for tail in _nondecreasing_tuples(units, n - 1)
            )
    specs.sort(key=lambda s: (s.m, s.n, s.t))
    return specs


def _nondecreasing_tuples(values: list[int], length: int):
    if length == 0:
        yield ()
        return
    for i, v in enumerate(values):
        for rest in _nondecreasing_tuples(values[i:], length - 1):
            yield (v,) + rest

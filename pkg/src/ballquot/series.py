"""Degree-truncated formal power series with exact coefficients.

:class:`TruncSeries` carries rational (Fraction) coefficients and is the
workhorse for the diagonal expansion.  :class:`CycloSeries` carries
:class:`~ballquot.exactnum.CycloElem` coefficients with a common conductor
and exists as the carrier for the character-sum oracles; it converts down
to a rational series once every coefficient is checked to lie in Q.

The truncation order D is explicit and inclusive: a series knows the
coefficients of x^0 .. x^D and never reads or writes beyond index D.
Representation is dense (a coefficient per degree); orders stay small here,
so simplicity wins over sparse bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import CycloConsistencyError, CycloElem

__all__ = ["TruncSeries", "CycloSeries"]


@dataclass(frozen=True)
class TruncSeries:
    """A power series truncated at degree ``order``, with Fraction coefficients.

    >>> s = TruncSeries.from_terms(3, {0: 1, 1: 1})       # 1 + x
    >>> t = TruncSeries.from_terms(3, {0: 1, 1: -1})      # 1 - x
    >>> (s * t).coeffs
    (Fraction(1, 1), Fraction(0, 1), Fraction(-1, 1), Fraction(0, 1))
    """

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"series of order {self.order} needs {self.order + 1} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @classmethod
    def make(cls, order: int, coeffs=()) -> "TruncSeries":
        """Build from an iterable of at most ``order + 1`` leading coefficients."""
        vals = [Fraction(c) for c in coeffs]
        if len(vals) > order + 1:
            raise ValueError("more coefficients than the truncation order allows")
        vals.extend([Fraction(0)] * (order + 1 - len(vals)))
        return cls(order, tuple(vals))

    @classmethod
    def from_terms(cls, order: int, terms: dict) -> "TruncSeries":
        vals = [Fraction(0)] * (order + 1)
        for deg, c in terms.items():
            if not 0 <= deg <= order:
                raise ValueError(f"term degree {deg} outside [0, {order}]")
            vals[deg] = Fraction(c)
        return cls(order, tuple(vals))

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls.make(order)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.make(order, (1,))

    def _check_order(self, other: "TruncSeries") -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} != {other.order}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        return TruncSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        return TruncSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.order + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncSeries(self.order, tuple(out))

    def scale(self, factor) -> "TruncSeries":
        f = Fraction(factor)
        return TruncSeries(self.order, tuple(a * f for a in self.coeffs))

    def shift_by_x(self) -> "TruncSeries":
        """Multiply by x; the old top coefficient falls off the truncation.

        >>> TruncSeries.from_terms(2, {0: 1, 1: 2}).shift_by_x().coeffs
        (Fraction(0, 1), Fraction(1, 1), Fraction(2, 1))
        """
        return TruncSeries(self.order, (Fraction(0),) + self.coeffs[:-1])

    def __pow__(self, e: int) -> "TruncSeries":
        """e-th power by repeated squaring, truncating at every step."""
        if e < 0:
            raise ValueError("negative powers of truncated series are not defined here")
        result = TruncSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "TruncSeries":
        """Termwise derivative; the order drops by one (requires order >= 1)."""
        if self.order < 1:
            raise ValueError("cannot differentiate a series truncated at order 0")
        return TruncSeries(
            self.order - 1, tuple(self.coeffs[j] * j for j in range(1, self.order + 1))
        )

    def truncate(self, order: int) -> "TruncSeries":
        """Forget coefficients above a smaller order (for aligning operands)."""
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(order, self.coeffs[: order + 1])

    def lowest_nonzero_term(self):
        """Smallest degree with a nonzero coefficient, as ``(degree, coeff)``.

        Returns ``None`` when the series is identically zero up to its order;
        that outcome is distinct from "has a lowest term of degree > order",
        which a truncated series cannot express.
        """
        for j, c in enumerate(self.coeffs):
            if c:
                return j, c
        return None

    def __call__(self, x) -> Fraction:
        """Evaluate the truncating polynomial at a rational point (Horner)."""
        xq = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * xq + c
        return acc

    def __str__(self) -> str:
        parts = [f"{c}*x^{j}" for j, c in enumerate(self.coeffs) if c]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(x^{self.order + 1})"


@dataclass(frozen=True)
class CycloSeries:
    """Truncated series whose coefficients live in Q(eps) for one conductor m."""

    m: int
    order: int
    coeffs: tuple[CycloElem, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count must equal order + 1")
        for c in self.coeffs:
            if c.m != self.m:
                raise ValueError(f"coefficient conductor {c.m} differs from series conductor {self.m}")

    @classmethod
    def zero(cls, m: int, order: int) -> "CycloSeries":
        return cls(m, order, (CycloElem.zero(m),) * (order + 1))

    @classmethod
    def one(cls, m: int, order: int) -> "CycloSeries":
        return cls(m, order, (CycloElem.one(m),) + (CycloElem.zero(m),) * order)

    def _check_compat(self, other: "CycloSeries") -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} != {other.order}")
        if self.m != other.m:
            raise ValueError(f"conductor mismatch: {self.m} != {other.m}")

    def __add__(self, other: "CycloSeries") -> "CycloSeries":
        self._check_compat(other)
        return CycloSeries(self.m, self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycloSeries") -> "CycloSeries":
        self._check_compat(other)
        return CycloSeries(self.m, self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "CycloSeries") -> "CycloSeries":
        self._check_compat(other)
        out = [CycloElem.zero(self.m) for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.order + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
        return CycloSeries(self.m, self.order, tuple(out))

    def scale(self, factor: CycloElem) -> "CycloSeries":
        return CycloSeries(self.m, self.order, tuple(a * factor for a in self.coeffs))

    def __pow__(self, e: int) -> "CycloSeries":
        if e < 0:
            raise ValueError("negative powers of truncated series are not defined here")
        result = CycloSeries.one(self.m, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def lowest_nonzero_term(self):
        for j, c in enumerate(self.coeffs):
            if c:
                return j, c
        return None

    def to_trunc_series(self) -> TruncSeries:
        """Convert to a rational series; every coefficient must lie in Q.

        Raises :class:`~ballquot.exactnum.CycloConsistencyError` otherwise,
        which is the internal self-test the oracle paths rely on.
        """
        rational = []
        for j, c in enumerate(self.coeffs):
            if not c.is_rational:
                raise CycloConsistencyError(f"coefficient of x^{j} is not rational: {c}")
            rational.append(c.to_rational())
        return TruncSeries(self.order, tuple(rational))

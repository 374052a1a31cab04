"""Exact arithmetic kernels: big-integer binomials and the fields Q(eps).

Every coefficient in this package is exact.  Rationals are
``fractions.Fraction`` (aliased :data:`Rational`), integers are Python's
arbitrary-precision ints, and numbers in the cyclotomic field Q(eps), with
eps a primitive m-th root of unity, are residues modulo the m-th cyclotomic
polynomial Phi_m.  Reducing mod Phi_m (rather than mod x^m - 1) makes the
representation canonical, so equality is plain coefficient comparison and
"this element is a rational number" is decidable by looking at the residue.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Rational",
    "CycloConsistencyError",
    "CycloElem",
    "binomial",
    "cyclotomic_polynomial",
    "euler_totient",
    "format_rational",
    "power_of_eps",
    "root_power_sum",
]

Rational = Fraction


class CycloConsistencyError(ArithmeticError):
    """An exact cyclotomic computation produced a structurally impossible value."""


def binomial(a: int, b: int) -> int:
    """Exact binomial coefficient C(a, b), with C(a, b) = 0 outside 0 <= b <= a.

    >>> binomial(6, 3)
    20
    >>> binomial(9, 2)
    36
    >>> binomial(4, 7)
    0
    """
    if a < 0:
        raise ValueError(f"binomial expects a nonnegative upper index, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def format_rational(value: Fraction | int) -> str:
    """Serialize a rational as the string "p/q", always including the denominator.

    >>> format_rational(Fraction(2916))
    '2916/1'
    >>> format_rational(Fraction(-3, 4))
    '-3/4'
    """
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def euler_totient(m: int) -> int:
    """Count of residues coprime to m; the degree of Phi_m."""
    if m < 1:
        raise ValueError("euler_totient expects m >= 1")
    return sum(1 for k in range(m) if math.gcd(k, m) == 1)


def _poly_trim(coeffs: list[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def _poly_divmod_monic(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # Long division by a monic divisor stays in integer coefficients.
    assert den and den[-1] == 1
    rem = list(num)
    quo = [0] * max(len(num) - len(den) + 1, 0)
    while len(rem) >= len(den) and any(rem):
        shift = len(rem) - len(den)
        lead = rem[-1]
        quo[shift] = lead
        for i, c in enumerate(den):
            rem[shift + i] -= lead * c
        rem = list(_poly_trim(rem))
    return _poly_trim(quo), _poly_trim(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, constant term first.

    Computed from the definition: x^m - 1 divided by Phi_d for every proper
    divisor d of m.  The result is monic of degree euler_totient(m).

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(12)
    (1, 0, -1, 0, 1)
    """
    if m < 1:
        raise ValueError("cyclotomic_polynomial expects m >= 1")
    poly: tuple[int, ...] = (-1,) + (0,) * (m - 1) + (1,)  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_monic(poly, cyclotomic_polynomial(d))
            assert rem == ()
    return poly


@lru_cache(maxsize=None)
def _phi_m(m: int) -> tuple[tuple[Fraction, ...], int]:
    coeffs = tuple(Fraction(c) for c in cyclotomic_polynomial(m))
    return coeffs, len(coeffs) - 1


def _reduce_mod_phi(m: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    """Remainder of a polynomial modulo Phi_m, padded to length euler_totient(m)."""
    phi, deg = _phi_m(m)
    rem = list(coeffs)
    while len(rem) > deg:
        lead = rem.pop()
        if lead:
            for i in range(deg):
                rem[len(rem) - deg + i] -= lead * phi[i]
    rem.extend([Fraction(0)] * (deg - len(rem)))
    return tuple(rem)


@dataclass(frozen=True)
class CycloElem:
    """An element of Q(eps) in canonical residue form modulo Phi_m.

    ``coeffs[i]`` is the coefficient of eps^i in the reduced representation,
    so ``len(coeffs) == euler_totient(m)`` and two elements are equal exactly
    when their coefficient tuples are.
    """

    m: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        expected = _phi_m(self.m)[1]
        if len(self.coeffs) != expected:
            raise ValueError(
                f"CycloElem for m={self.m} needs {expected} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def zero(cls, m: int) -> "CycloElem":
        return cls.from_rational(m, Fraction(0))

    @classmethod
    def one(cls, m: int) -> "CycloElem":
        return cls.from_rational(m, Fraction(1))

    @classmethod
    def from_rational(cls, m: int, value: Fraction | int) -> "CycloElem":
        deg = _phi_m(m)[1]
        return cls(m, (Fraction(value),) + (Fraction(0),) * (deg - 1))

    def _check_conductor(self, other: "CycloElem") -> None:
        if self.m != other.m:
            raise ValueError(f"conductor mismatch: {self.m} != {other.m}")

    def __add__(self, other: "CycloElem") -> "CycloElem":
        self._check_conductor(other)
        return CycloElem(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycloElem") -> "CycloElem":
        self._check_conductor(other)
        return CycloElem(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycloElem":
        return CycloElem(self.m, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = Fraction(other)
            return CycloElem(self.m, tuple(a * s for a in self.coeffs))
        self._check_conductor(other)
        prod = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycloElem(self.m, _reduce_mod_phi(self.m, prod))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def inverse(self) -> "CycloElem":
        """Multiplicative inverse, via the extended Euclidean algorithm against Phi_m."""
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(eps)")
        phi, _ = _phi_m(self.m)
        g, s = _poly_xgcd(list(self.coeffs), list(phi))
        # Phi_m is irreducible over Q, so the gcd with a nonzero residue is a constant.
        if len(g) != 1:
            raise CycloConsistencyError("nonconstant gcd with the cyclotomic polynomial")
        inv_g = 1 / g[0]
        return CycloElem(self.m, _reduce_mod_phi(self.m, [c * inv_g for c in s]))

    def __truediv__(self, other: "CycloElem") -> "CycloElem":
        self._check_conductor(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> "CycloElem":
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElem.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        """The value as a Fraction; fails if the residue is not a rational scalar."""
        if not self.is_rational:
            raise CycloConsistencyError(f"not a rational element of Q(eps): {self}")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        """Floating-point embedding at eps = exp(2*pi*i/m)."""
        eps = cmath.exp(2j * math.pi / self.m)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * eps + complex(c)
        return acc

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*e^{i}")
        return " + ".join(terms) if terms else "0"


def _poly_xgcd(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """gcd(a, b) and a Bezout cofactor s with s*a = gcd mod b, over Q[x]."""

    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def sub_scaled(p, q, factor, shift):
        for i, c in enumerate(q):
            idx = i + shift
            while len(p) <= idx:
                p.append(Fraction(0))
            p[idx] -= factor * c
        return trim(p)

    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1 = [Fraction(1)], []
    while r1:
        q_shift = len(r0) - len(r1)
        if q_shift < 0:
            r0, r1, s0, s1 = r1, r0, s1, s0
            continue
        factor = r0[-1] / r1[-1]
        r0 = sub_scaled(r0, r1, factor, q_shift)
        s0 = sub_scaled(s0, s1, factor, q_shift)
        if len(r0) < len(r1):
            r0, r1, s0, s1 = r1, r0, s1, s0
    return r0, s0


@lru_cache(maxsize=None)
def _eps_power_reduced(m: int, j: int) -> CycloElem:
    coeffs = [Fraction(0)] * (j + 1)
    coeffs[j] = Fraction(1)
    return CycloElem(m, _reduce_mod_phi(m, coeffs))


def power_of_eps(m: int, j: int) -> CycloElem:
    """eps^j as a canonical residue; j is taken modulo m (eps has order m).

    >>> power_of_eps(4, 2).to_rational()
    Fraction(-1, 1)
    >>> (power_of_eps(5, 2) * power_of_eps(5, 3)).to_rational()
    Fraction(1, 1)
    """
    if m < 1:
        raise ValueError("power_of_eps expects m >= 1")
    return _eps_power_reduced(m, j % m)


def root_power_sum(m: int, j: int) -> Fraction:
    """sum_{k=0}^{m-1} eps^{jk}, computed exactly in Q(eps).

    The sum always lies in Q (it equals m when m divides j, else 0); a
    non-rational result would mean the field arithmetic is broken, and is
    reported as a :class:`CycloConsistencyError`.

    >>> root_power_sum(4, 2)
    Fraction(0, 1)
    >>> root_power_sum(6, 12)
    Fraction(6, 1)
    """
    total = CycloElem.zero(m)
    for k in range(m):
        total = total + power_of_eps(m, j * k)
    return total.to_rational()

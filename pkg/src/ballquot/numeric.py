"""Floating-point evaluation of the quotient kernel function and its defect.

The kernel function of the quotient, pulled back to the ball, is

    phi(z, conj(w)) = sum_{k=0}^{m-1} conj(d_k) / (1 - <z, conj(g_k w)>)^{n+1}

with g_k = diag(eps^{k t_1}, ..., eps^{k t_n}), d_k = det g_k = eps^{k |T|}
and <u, v> = sum_j u_j v_j.  The volume-form normalization n!/pi^n of the
ball kernel is omitted throughout; every coefficient here is relative to
that convention.

The metric is Einstein exactly when the bordered determinant

    J(phi) = det [[phi, phi_zbar], [phi_z, phi_z_zbar]]

equals (n+1)^n phi^{n+2} on the diagonal w = z.  ``ke_defect`` measures the
difference.  All derivatives are closed-form; finite differences exist only
as validation oracles (``fd_gradient`` / ``fd_hessian``).  Everything is
plain complex double precision: each quantity computed here has an exact
series-side counterpart, so doubles only need to witness agreement or
disagreement far above rounding noise.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .group import GroupSpec

__all__ = [
    "DomainError",
    "GridScanResult",
    "NumericDefectSample",
    "TruncationWarning",
    "J_phi",
    "detA_direct",
    "fd_gradient",
    "fd_hessian",
    "ke_defect",
    "monomial_oracle_phi",
    "monomial_survives",
    "phi_derivatives",
    "phi_eval",
    "residual_grid_scan",
]


class DomainError(ValueError):
    """A point lies outside the open unit ball (or the stated safety margin)."""


class TruncationWarning(UserWarning):
    """A truncated oracle sum may not be converged to the comparison tolerance."""


@dataclass(frozen=True)
class NumericDefectSample:
    """J(phi) and the Einstein defect at one point of the ball.

    ``defect`` is J - (n+1)^n phi^{n+2} and ``rel_defect`` divides it by
    max(1, |(n+1)^n phi^{n+2}|).
    """

    z: tuple[complex, ...]
    phi: complex
    J: float
    defect: float
    rel_defect: float


@dataclass(frozen=True)
class GridScanResult:
    samples: tuple[NumericDefectSample, ...]
    max_abs_rel_defect: float
    argmax_z: tuple[complex, ...]


def _as_vector(spec: GroupSpec, z, name: str = "z") -> np.ndarray:
    v = np.asarray(z, dtype=complex)
    if v.shape != (spec.n,):
        raise DomainError(f"{name} must be a complex vector of length {spec.n}")
    if np.linalg.norm(v) >= 1.0:
        raise DomainError(f"{name} must lie in the open unit ball")
    return v


@lru_cache(maxsize=None)
def _conj_phase_table(m: int, t: tuple[int, ...], t_sum: int):
    """Rows k: conj of the diagonal phases of g_k, plus conj(det g_k)."""
    ks = np.arange(m)
    phases = np.exp(-2j * math.pi * np.outer(ks, np.array(t)) / m)
    dets = np.exp(-2j * math.pi * ks * t_sum / m)
    return phases, dets


def phi_eval(spec: GroupSpec, z, w) -> complex:
    """Direct m-term evaluation of phi(z, conj(w)).

    >>> from ballquot.group import validate_spec
    >>> phi_eval(validate_spec(1, (0, 0)), (0, 0), (0, 0))
    (1+0j)
    """
    zv = _as_vector(spec, z, "z")
    wv = _as_vector(spec, w, "w")
    phases, dets = _conj_phase_table(spec.m, spec.t, spec.t_sum)
    pairings = phases @ (zv * np.conj(wv))
    return complex(np.sum(dets / (1.0 - pairings) ** (spec.n + 1)))


def phi_derivatives(spec: GroupSpec, z):
    """phi(z, conj(z)) with its holomorphic gradient and mixed Hessian.

    Closed-form derivatives of the m-term sum; no differencing.  Returns
    ``(value, grad, hess)`` where ``grad[i]`` is d phi / d z_i and
    ``hess[i, j]`` is d^2 phi / (d z_i d conj(z_j)).
    """
    zv = _as_vector(spec, z)
    n = spec.n
    phases, dets = _conj_phase_table(spec.m, spec.t, spec.t_sum)
    value = 0j
    grad = np.zeros(n, dtype=complex)
    hess = np.zeros((n, n), dtype=complex)
    for k in range(spec.m):
        ph = phases[k]
        u = 1.0 - np.sum(ph * zv * np.conj(zv))
        gz_bar = ph * np.conj(zv)          # conj(g z)
        zt_g = zv * ph                     # row vector z^T conj(g)
        d = dets[k]
        value += d * u ** (-(n + 1))
        grad += (n + 1) * d * gz_bar * u ** (-(n + 2))
        hess += (
            (n + 1)
            * d
            * (np.diag(ph) * u + (n + 2) * np.outer(gz_bar, zt_g))
            * u ** (-(n + 3))
        )
    return complex(value), grad, hess


def J_phi(spec: GroupSpec, z) -> float:
    """Bordered determinant det [[phi, phi_zbar], [phi_z, hess]] at w = z.

    The bordered matrix is Hermitian up to rounding, so the determinant is
    real; the real part is returned.
    """
    value, grad, hess = phi_derivatives(spec, z)
    n = spec.n
    bordered = np.empty((n + 1, n + 1), dtype=complex)
    bordered[0, 0] = value
    bordered[0, 1:] = np.conj(grad)
    bordered[1:, 0] = grad
    bordered[1:, 1:] = hess
    return float(np.linalg.det(bordered).real)


def ke_defect(spec: GroupSpec, z) -> NumericDefectSample:
    """Sample the Einstein defect J - (n+1)^n phi^{n+2} at a point."""
    zv = _as_vector(spec, z)
    phi = phi_eval(spec, zv, zv)
    j = J_phi(spec, zv)
    target = (spec.n + 1) ** spec.n * phi.real ** (spec.n + 2)
    defect = j - target
    return NumericDefectSample(
        z=tuple(complex(c) for c in zv),
        phi=phi,
        J=j,
        defect=defect,
        rel_defect=defect / max(1.0, abs(target)),
    )


def detA_direct(spec: GroupSpec, k_indices, z) -> complex:
    """Determinant of the column matrix built verbatim from its definition.

    Column 0 for group element g is (1 - <z, g zbar>, (n+1) g zbar); column
    j >= 1 is (z^T (g)_j, ((g)_j (1 - <z, g zbar>) + (n+2) g zbar (z^T (g)_j))
    / (1 - <z, g zbar>)).  On the slice z = (z_1, 0, ..., 0) this must match
    the exact closed form :func:`ballquot.kernel.detA_slice`.
    """
    zv = _as_vector(spec, z)
    m, n = spec.m, spec.n
    ks = [int(k) for k in k_indices]
    if len(ks) != n + 1:
        raise DomainError(f"need n+1 = {n + 1} group indices")
    if any(not 0 <= k < m for k in ks):
        raise DomainError("group indices must lie in [0, m-1]")
    t = np.array(spec.t)
    a = np.empty((n + 1, n + 1), dtype=complex)
    for col, k in enumerate(ks):
        ph = np.exp(2j * math.pi * k * t / m)   # diagonal of g_k
        g_zbar = ph * np.conj(zv)
        u = 1.0 - np.sum(zv * g_zbar)
        if abs(u) < 1e-14:
            raise ZeroDivisionError("singular denominator 1 - <z, g zbar>")
        if col == 0:
            a[0, 0] = u
            a[1:, 0] = (n + 1) * g_zbar
        else:
            j = col - 1
            top = zv[j] * ph[j]
            column = np.zeros(n, dtype=complex)
            column[j] = ph[j] * u
            column += (n + 2) * g_zbar * top
            a[0, col] = top
            a[1:, col] = column / u
    return complex(np.linalg.det(a))


def monomial_survives(spec: GroupSpec, alpha) -> bool:
    """Character selection rule: does the multi-index alpha survive the sum?

    A monomial z^alpha conj(w)^alpha appears in phi exactly when
    m | (|T| + alpha . T).  This is the rule whose sign was fixed against
    :func:`phi_eval` (the test suite keeps the comparison, and shows the
    opposite sign failing already at m = 5, t = (1, 1)).
    """
    if len(alpha) != spec.n:
        raise DomainError(f"alpha must have length {spec.n}")
    return (spec.t_sum + sum(a * tj for a, tj in zip(alpha, spec.t))) % spec.m == 0


def monomial_oracle_phi(spec: GroupSpec, z, w, cutoff: int, tail_tol: float = 1e-9) -> complex:
    """phi(z, conj(w)) as a selected monomial sum, up to total degree ``cutoff``.

    Transporting the kernel through the quotient map turns phi into the full
    multinomial expansion of the ball kernel filtered by the character rule
    of :func:`monomial_survives`; a surviving alpha contributes
    m * (n+|alpha|)! / (n! alpha!) z^alpha conj(w)^alpha.

    Requires |z|, |w| <= 0.5 so the tail is geometrically small; emits a
    :class:`TruncationWarning` when the tail bound exceeds ``tail_tol``.
    """
    zv = np.asarray(z, dtype=complex)
    wv = np.asarray(w, dtype=complex)
    if zv.shape != (spec.n,) or wv.shape != (spec.n,):
        raise DomainError(f"points must be complex vectors of length {spec.n}")
    if np.linalg.norm(zv) > 0.5 or np.linalg.norm(wv) > 0.5:
        raise DomainError("monomial oracle requires |z|, |w| <= 0.5")
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    n, m, t = spec.n, spec.m, spec.t
    base = zv * np.conj(wv)
    rho = float(np.sum(np.abs(base)))
    tail = _tail_bound(m, n, cutoff, rho)
    if tail > tail_tol:
        warnings.warn(
            f"monomial sum truncated at degree {cutoff}: tail bound {tail:.3e} "
            f"exceeds {tail_tol:.1e}",
            TruncationWarning,
            stacklevel=2,
        )
    total = 0.0 + 0.0j

    # (n+d)!/(n! alpha!) = C(n+d, n) * prod_j C(sigma_j, alpha_j) with sigma_j the
    # partial degree; the product is carried level by level as a float, which
    # is far more accurate than the comparison tolerances used anywhere here.
    def walk(j: int, degree: int, char: int, mult: float, monomial: complex) -> None:
        nonlocal total
        if j == n:
            if char % m == 0:
                total += m * math.comb(n + degree, n) * mult * monomial
            return
        power = 1.0 + 0.0j
        for aj in range(cutoff - degree + 1):
            walk(
                j + 1,
                degree + aj,
                char + aj * t[j],
                mult * math.comb(degree + aj, aj),
                monomial * power,
            )
            power *= base[j]

    walk(0, 0, spec.t_sum, 1.0, 1.0 + 0.0j)
    return complex(total)


def _tail_bound(m: int, n: int, cutoff: int, rho: float) -> float:
    if rho >= 1.0:
        return math.inf
    if rho == 0.0:
        return 0.0
    return m * math.comb(n + cutoff + 1, n) * rho ** (cutoff + 1) / (1.0 - rho) ** (n + 1)


def residual_grid_scan(spec: GroupSpec, radius: float, grid_count: int, seed: int) -> GridScanResult:
    """Defect samples on a deterministic slice grid plus seeded interior points.

    ``grid_count`` points z = (radius * i / grid_count, 0, ..., 0) for
    i = 1..grid_count, then ``grid_count`` pseudorandom points drawn
    uniformly from the ball of the given radius with a fixed-seed generator,
    so equal arguments reproduce the sample list bit for bit.
    """
    if not 0.0 < radius < 1.0:
        raise DomainError("radius must lie in (0, 1)")
    if grid_count < 1:
        raise ValueError("grid_count must be >= 1")
    n = spec.n
    points = []
    for i in range(1, grid_count + 1):
        zp = np.zeros(n, dtype=complex)
        zp[0] = radius * i / grid_count
        points.append(zp)
    rng = np.random.default_rng(seed)
    for _ in range(grid_count):
        direction = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        direction /= np.linalg.norm(direction)
        r = radius * rng.uniform() ** (1.0 / (2 * n))
        points.append(r * direction)
    samples = tuple(ke_defect(spec, zp) for zp in points)
    worst = max(samples, key=lambda s: abs(s.rel_defect))
    return GridScanResult(
        samples=samples,
        max_abs_rel_defect=abs(worst.rel_defect),
        argmax_z=worst.z,
    )


def fd_gradient(spec: GroupSpec, z, step: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of phi(z, conj(z)); validation oracle only."""
    zv = _as_vector(spec, z)

    def f(p):
        return phi_eval(spec, p, p)

    return _wirtinger_fd(f, zv, step, conjugate=False)


def fd_hessian(spec: GroupSpec, z, step: float = 1e-5) -> np.ndarray:
    """Central-difference mixed Hessian, differencing the analytic gradient."""
    zv = _as_vector(spec, z)
    n = spec.n
    hess = np.empty((n, n), dtype=complex)
    for i in range(n):
        def gi(p, _i=i):
            return phi_derivatives(spec, p)[1][_i]

        hess[i, :] = _wirtinger_fd(gi, zv, step, conjugate=True)
    return hess


def _wirtinger_fd(func, zv: np.ndarray, step: float, conjugate: bool) -> np.ndarray:
    # d/dz = (d/dx - i d/dy)/2 and d/dzbar = (d/dx + i d/dy)/2.
    n = len(zv)
    out = np.empty(n, dtype=complex)
    sign = 1j if conjugate else -1j
    for i in range(n):
        ex = np.zeros(n, dtype=complex)
        ex[i] = step
        df_dx = (func(zv + ex) - func(zv - ex)) / (2 * step)
        df_dy = (func(zv + 1j * ex) - func(zv - 1j * ex)) / (2 * step)
        out[i] = (df_dx + sign * df_dy) / 2
    return out

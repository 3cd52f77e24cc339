"""
Scanning bounded-degree points
==============================

Every point of degree <= d with coefficients bounded by B is tested against
m < t h with certified arithmetic.  Flagged points get a membership verdict
for the exceptional set.
"""

from symheights import Divisor1, ratio_scan

#####################################################
# Rationals against 0 + inf over {inf, 2}: exactly the powers of 2 reach m = 2h.

res = ratio_scan(Divisor1.parse("0,inf"), "inf,2", 1, 64, 2)
print(res.summary())
print(sorted(str(r.point) for r in res.records))

#####################################################
# Quadratic points against four rational points over {inf, 2, 3} with t = 16/5.
# Small points such as the roots of 2x^2 + 1 exceed the threshold outside Z.

res = ratio_scan(Divisor1.parse("0,1,inf,2"), "inf,2,3", 2, 6, "16/5")
print(res.summary())
for r in sorted(res.records, key=lambda r: -r.ratio_lo)[:5]:
    print(f"  {r.point}: ratio in [{r.ratio_lo:.3f}, {r.ratio_hi:.3f}], {r.z_status}")

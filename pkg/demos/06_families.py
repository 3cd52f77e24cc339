"""
Explicit point families
=======================

Three constructions show the constants are attained: S-unit pullbacks under
a morphism, S-unit points near triple points of a line configuration, and
cubic points whose coefficient vectors lie on a Type II plane of P^3.
"""

from fractions import Fraction

from symheights import Divisor1, LineConfig, sharp_family, tbor_family, td3b_family, zariski_density_check
from symheights.exceptional import Rat1Map

#####################################################
# Pullbacks of S-units under z^2: the defect (n1 + n2) h - m stays bounded.

recs = tbor_family(Rat1Map((0, 0, 1), (1, 0, 0)), Divisor1.parse("0,inf,1,-1"), "inf,2", 12)
for r in recs[:6]:
    print(f"  u={r.extra['unit']:>6}  {r.point}  defect <= {r.extra['defect_hi']:.4f}")

#####################################################
# The complete quadrilateral: ratios climb to 9/2.

recs = sharp_family("II", LineConfig.parse("z;y;x;y-z;x-z;x-y"), "inf,2,3", 60)
print("Type II ratios:", [round(r.ratio_lo, 3) for r in recs[::10]])
print("dense to degree 3:", zariski_density_check([r.point for r in recs], 3))

#####################################################
# Cubic points above 17/4 that no exceptional map explains.

res = td3b_family(Divisor1.parse("0,1,-1,2,-2,inf"), "inf,2,3", Fraction(17, 4), 5)
print(res.summary())
for r in res.records:
    print(f"  {r.point}: ratio >= {r.ratio_lo:.4f}, {r.z_status}")

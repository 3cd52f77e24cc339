"""
Line configurations in P^2
==========================

Lines in 3-subgeneral position fall into three types with approximation
constants 5, 9/2 and 4.  Restricting the hyperplanes H_P of six points to a
special plane of P^3 produces a Type II configuration.
"""

from symheights import LineConfig, ProjPoint, classify_type, hyperplane_of_point, restrict_to_plane, triple_points
from symheights.heights import Form

for s in ("x;y;x+y;z;z", "z;y;x;y-z;x-z;x-y", "x;y;x+y;z"):
    cfg = LineConfig.parse(s)
    print(f"{s:22s} {classify_type(cfg)}  triple points {[str(p) for p in triple_points(cfg)]}")

#####################################################
# Six hyperplanes of P^3 cut out a complete quadrilateral on the plane x = 2z.

H = [hyperplane_of_point(ProjPoint.rational(x), 3) for x in (0, 1, -1, 2, -2)]
H.append(hyperplane_of_point(ProjPoint((1, 0)), 3))
basis = [(0, 1, 0, -1), (0, 4, 0, -1), (2, -3, 1, 0)]
cfg = restrict_to_plane(H, Form.linear((1, 0, -2, 0)), basis)
print(cfg, "->", classify_type(cfg))

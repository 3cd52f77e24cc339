"""
Heights and proximity of rational points
========================================

Local heights measure how close a point is to a hypersurface at one place.
Summed over every place they give back the degree times the height, plus the
height of the defining form.  Everything here is exact: values are ``log(q)/n``.
"""

from symheights import Divisor1, Form, Place, ProjPoint, global_height, local_height, prox
from symheights.heights import form_height, height_degree_identity_defect

#####################################################
# The point 8 is far from 0 at the real place but 2-adically close to it.

P = ProjPoint((8, 1))
x = Form.parse("x", dim=1)
print("h(8)                =", global_height(P))
print("h_{0,2}(8)          =", local_height(P, x, Place(2)))
print("h_{0,inf}(8)        =", local_height(P, x, Place.parse("inf")))

#####################################################
# Proximity to 0 + inf over S = {inf, 2}: the real place sees inf, 2 sees 0.

print("m_{0+inf,S}(8)      =", prox(P, Divisor1.parse("0,inf"), "inf,2"))

#####################################################
# Archimedean local heights can be negative.

Q = ProjPoint((3, 4, 1))
print("h_{x+y+z,inf}(3:4:1) =", local_height(Q, Form.parse("x+y+z"), Place.parse("inf")))

#####################################################
# Summing over all places leaves deg(f) h(P) + h(f).

f = Form.parse("(x+y+z)^2")
print("all-places defect   =", height_degree_identity_defect(Q, f), " h(f) =", form_height(f))

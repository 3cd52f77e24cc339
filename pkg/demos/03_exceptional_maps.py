"""
Exceptional maps and the set Z
==============================

Points lying over P^1(Q) under a map of degree <= d that sends many divisor
points to 0 and infinity are the expected exceptions.  For 2d - 1 < t <= 2d
these maps are the finitely many phi_I.
"""

from fractions import Fraction

from symheights import AlgPoint, Divisor1, IndexPair, enumerate_phi, phi_from_index, rem_witness, z_member
from symheights.exceptional import pullback_profile, Rat1Map

D = Divisor1.parse("0,1,inf,2")

#####################################################
# One phi_I and the full list for q = 4, d = 2.

print(phi_from_index(D, IndexPair((0, 1), (2, 3))))
print(len(enumerate_phi(D, 2, Fraction(7, 2))), "maps for q = 4, d = 2")

#####################################################
# sqrt 2 is in Z(D, 2, 7/2): some phi_I sends it to a rational number.

r = z_member(AlgPoint.parse("x^2-2"), D, 2, Fraction(7, 2))
print(r.status, "witness", r.witness, "->", r.witness.image(AlgPoint.parse("x^2-2")))

#####################################################
# For small t every point is in Z; the witness sends the point to 1.

phi = rem_witness(AlgPoint.parse("x^2-2"), Divisor1.parse("0,1,3"), 2, 3)
print("rem witness", phi)

#####################################################
# How z^2 folds 0, inf, 1, -1 onto three points.

print(pullback_profile(Rat1Map((0, 0, 1), (1, 0, 0)), Divisor1.parse("0,inf,1,-1")))

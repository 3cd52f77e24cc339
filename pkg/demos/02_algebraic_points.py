"""
Algebraic points and the symmetric power
========================================

A point of degree d on P^1 corresponds to the rational point psi(P) of P^d
given by its minimal polynomial.  Proximity to rational points transports to
proximity to hyperplanes H_Q up to a bounded defect.
"""

from symheights import AlgPoint, Divisor1, ProjPoint, alg_height, conjugates, hyperplane_of_point, psi, sigma
from symheights.algebraic import prox_alg, transport_defect

P = AlgPoint.parse("x^3-x-1")

#####################################################
# Certified, disjoint root balls; the order is fixed by the ball centers.

for z in conjugates(P):
    print("  conjugate", z)
print("h(P) in", alg_height(P))

#####################################################
# psi(P) is the coefficient vector of the minimal polynomial; sigma of three
# rational points is the coefficient vector of the product of their forms.

print("psi(P)              =", psi(P, 3))
print("sigma(1, 2, inf)    =", sigma([ProjPoint.rational(1), ProjPoint.rational(2), ProjPoint((1, 0))]))
print("H_2 in P^3          =", hyperplane_of_point(ProjPoint.rational(2), 3))

#####################################################
# Proximity of sqrt 2 to 0 + 1 + inf over S = {inf, 2}, and the transport defect.

R = AlgPoint.parse("x^2-2")
D = Divisor1.parse("0,1,inf")
print("m(sqrt 2)           in", prox_alg(R, D, "inf,2"))
m_def, h_def = transport_defect(R, D, "inf,2")
print("transport defects   ", m_def, h_def)

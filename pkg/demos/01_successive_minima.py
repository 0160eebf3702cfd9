"""
Successive minima
=================

Exact successive minima for a few symmetric bodies, including one with
irrational minima, and the same values after a unimodular change of basis.
"""
from fractions import Fraction

from latcover import Body, successive_minima
from latcover.cover import mahler_products, polar_minima
from latcover.geometry import transform

###############################################################################
# Balls and slabs
# ---------------
# A ball of radius r has every minimum equal to 1/r.  The slab
# [-x, x]^(n-1) x [-1, 1] has the same first n-1 minima, but its last one is 1.
for body in (Body.ball(4, 3), Body.cube_slab(5, 3), Body.cross_slab(5, 3)):
    prof = successive_minima(body)
    print(body.family.value, [str(m) for m in prof.minima], prof.witnesses)

###############################################################################
# Quadratic bodies
# ----------------
# For an ellipsoid the minima are square roots of rationals; they are kept
# as exact squares and print as ``sqrt(p/q)``.
ell = Body.ellipsoid([[Fraction(1, 9), Fraction(1, 30)], [Fraction(1, 30), Fraction(1, 16)]])
prof = successive_minima(ell)
print([str(m) for m in prof.minima], [round(float(m), 6) for m in prof.minima])

###############################################################################
# Invariance under a change of basis
# ----------------------------------
u = [[2, 1], [1, 1]]
print(successive_minima(transform(ell, u)).minima == prof.minima)

###############################################################################
# Products with the polar minima
# ------------------------------
# lambda_i * mu_(n-i+1) is never below 1.
print([str(p) for p in mahler_products(prof, polar_minima(ell))])

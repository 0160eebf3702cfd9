"""
Lattice points in general position
==================================

Lift the discrete moment curve over a prime into a disc and check that no
two of the resulting lattice points lie on a line through the origin.
"""
from latcover import Body, build_general_position, lower_bound, successive_minima
from latcover.genpos import largest_admissible_prime, lemma_lift, moment_curve

###############################################################################
# The admissible prime
# --------------------
# The bound comes from the successive minima; the prime is the largest one
# strictly below it.
disc = Body.ball(100, 2)
report = lower_bound(successive_minima(disc))
print("lower bound", report.bound_float(), "prime", largest_admissible_prime(report))

###############################################################################
# One lift
# --------
# Each curve point v is moved into the body as j*v + p*w.
p = 307
v = moment_curve(p, 2)[200]
print(v, "->", lemma_lift(disc, v, p))

###############################################################################
# The full certificate
# --------------------
cert = build_general_position(disc)
print(len(cert.points), "points, verified:", cert.check())
print(cert.points[:6])

###############################################################################
# Three dimensions
# ----------------
cert3 = build_general_position(Body.ball(100, 3), threads=4)
print("n=3:", cert3.p, "prime,", len(cert3.points), "points")

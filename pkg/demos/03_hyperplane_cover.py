"""
Covering lattice points by hyperplanes
======================================

Hyperplanes through the origin whose normals are short combinations of the
polar minima witnesses.  Every family is checked against all lattice points.
"""
from latcover import Body, build_cover, exact_g
from latcover.cover import build_D_alpha, pigeonhole_collision, polar_minima
from latcover.lattice import enumerate_points

###############################################################################
# A cover and its diagnostics
# ---------------------------
ball = Body.ball(4, 3)
fam = build_cover(ball)
print(fam.diagnostics())
print("polar minima:", [str(m) for m in polar_minima(ball).mu])

###############################################################################
# Why it works
# ------------
# All scalar products of a lattice point u with the digit box are small
# integers, and the box is larger than their range, so two of them collide
# and their difference is orthogonal to u.
d_plus = build_D_alpha(fam.witnesses, fam.nu, fam.alpha, nonnegative=True)
u = (1, 2, -3)
a, b = pigeonhole_collision(u, d_plus)
print(u, "is orthogonal to", tuple(x - y for x, y in zip(a, b)))

###############################################################################
# Against the optimum
# -------------------
# The construction is far from optimal on small bodies; the exact minimum
# comes from the brute-force oracle.
small = Body.ball(2, 3)
print("constructed", build_cover(small).size, "optimal", exact_g(small).value,
      "points", len(enumerate_points(small)))

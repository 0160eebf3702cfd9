"""
Hyperplanes spanned by lattice points of a ball
===============================================

Count the hyperplanes through the origin spanned by lattice points of rB^n,
fit the growth exponent, and look at the average number of points per
hyperplane.
"""
import math

from latcover import scaling_fit
from latcover.census import claim_stats, decomposition_replay

###############################################################################
# Growth in the plane and in space
# --------------------------------
# The count grows like r^(n(n-1)).
for n, radii in ((2, [10, 20, 40, 80]), (3, [4, 6, 8, 10])):
    fit, reports = scaling_fit(n, radii, threads=4)
    print(f"n={n} slope {fit.slope:.3f} (expected {n * (n - 1)})")
    for rep in reports:
        print("  ", rep.to_dict())

###############################################################################
# Planar density
# --------------
# Lines through primitive points of the disc: about (3/pi) r^2.
print("3/pi =", 3 / math.pi)

###############################################################################
# Point load per hyperplane
# -------------------------
# The total load equals |H_r| plus, for each nonzero point, the number of
# hyperplanes through it.
print(decomposition_replay(3, 4))

###############################################################################
# Shortest vectors of orthogonal lattices
# ---------------------------------------
stats = claim_stats(3, 10, 3, sample=400, seed=1)
print(stats.to_dict())

"""
Exact g and h on small bodies
=============================

Brute-force the fewest covering hyperplanes (g) and the largest set in
general position (h) for two bodies with identical successive minima but
very different behaviour.
"""
from latcover import Body, build_general_position, check_sandwich, exact_g, exact_h, successive_minima

###############################################################################
# Same minima, different bodies
# -----------------------------
box = Body.cube_slab(4, 2)
cross = Body.cross_slab(5, 3)
for body in (box, Body.cube_slab(2, 3), cross):
    print([str(m) for m in successive_minima(body).minima],
          "g =", exact_g(body).value, "h =", exact_h(body).value)

###############################################################################
# Witnesses
# ---------
g = exact_g(cross)
h = exact_h(cross)
print("cover normals", [hp.normal for hp in g.witness])
print("general position set", h.witness)

###############################################################################
# The sandwich
# ------------
disc = Body.ball(25, 2)
print(check_sandwich(disc, certificate=build_general_position(disc)).to_dict())

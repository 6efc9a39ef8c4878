"""
Bracketing a Euclidean simplex between hyperbolic and spherical ones
====================================================================

Sliding the Gram matrix of a Euclidean simplex a little toward the all -1
off-diagonal matrix lowers every angle and gives a hyperbolic simplex;
sliding it the other way raises every angle and gives a spherical one.
"""

import numpy as np

from simplexorder.comparisons import m3_bracket
from simplexorder.sampling import random_simplex
from simplexorder.simplex import compare, dihedral_angles, gram_of

# regular triangle: the closed form is -0.6 / -0.4 off the diagonal at t = 0.2
g = np.full((3, 3), -0.5)
np.fill_diagonal(g, 1.0)
r = m3_bracket(g, 0.2)
print("hyperbolic Gram off-diagonal:", r.gram_hyp.matrix[0, 1])
print("spherical  Gram off-diagonal:", r.gram_sph.matrix[0, 1])
print("angles (deg): hyperbolic %.4f < euclidean 60 < spherical %.4f" % (
    np.degrees(np.arccos(0.6)), np.degrees(np.arccos(0.4))))

# a random tetrahedron
e = random_simplex("euclidean", 3, 7)
r = m3_bracket(e, 0.1)
angles = dihedral_angles(gram_of(e))
print("t used:", r.t_hyp, r.t_sph)
print("hyperbolic vs euclidean:", compare(dihedral_angles(r.gram_hyp), angles).order.value)
print("spherical  vs euclidean:", compare(dihedral_angles(r.gram_sph), angles).order.value)
print("smallest strict gap: %.3e" % r.min_margin)

# how far the angles move for small t: roughly t * tan(angle / 2), so
# obtuse angles move more than acute ones
for t in (1e-1, 1e-2, 1e-3):
    r = m3_bracket(e, t)
    zeta = angles.pairs()
    dev = np.abs(dihedral_angles(r.gram_hyp).pairs() - zeta)
    predicted = r.t_hyp * np.tan(zeta / 2)
    print(f"t={t:.0e}: max move {dev.max():.2e}, largest ratio to t*tan(angle/2) "
          f"{np.max(dev / predicted):.3f}")

"""
From a spherical simplex to a Euclidean one with smaller angles
===============================================================

The vertices of the dual simplex sit in a smallest enclosing ball. After
rotating its center to the south pole, each vertex is pushed along its
meridian by pi/2 - r, so the ball boundary lands on the equator and all
pairwise distances grow. The pushed points are the unit normals of a
Euclidean simplex with angles pi - d(w_i, w_j).
"""

import numpy as np

from simplexorder.comparisons import m1_euclidean_from_spherical
from simplexorder.sampling import dual_center_barycentric, random_boundary_center_simplex, random_simplex
from simplexorder.simplex import Simplex

# the positive orthant of S^2: every angle is pi/2
orthant = Simplex("spherical", np.eye(3))
euclid, xi, chain = m1_euclidean_from_spherical(orthant)
print("dual ball radius:", chain.ball.radius, "boundary vertices:", chain.boundary_count)
print("t_hat:", chain.t_hat)
print("output angles (deg):", np.degrees(xi.pairs()))

# a random spherical tetrahedron
s = random_simplex("spherical", 3, 11)
r = m1_euclidean_from_spherical(s)
print("\nrandom tetrahedron")
print("spherical angles:", np.round(np.degrees(r.sigma.pairs()), 3))
print("euclidean angles:", np.round(np.degrees(r.xi.pairs()), 3))
print("ball center on the boundary of the dual:", r.chain.delta > 0)

# when the ball center lies on a proper face of the dual, the pushed points
# sit in a closed hemisphere and need a small tilt
s = random_boundary_center_simplex(3, 5)
print("\nboundary case, barycentric coordinates of the center:",
      np.round(dual_center_barycentric(s), 6))
r = m1_euclidean_from_spherical(s)
print("face:", r.chain.face, "delta: %.3e" % r.chain.delta)
print("coefficients b:", np.round(r.chain.coefficients, 6))
print("|sum b_i w_i| = %.1e" % np.max(np.abs(r.chain.coefficients @ r.chain.perturbed)))
print("smallest sigma - xi: %.3e" % np.min(r.sigma.pairs() - r.xi.pairs()))

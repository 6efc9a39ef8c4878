"""
From a hyperbolic simplex to a Euclidean one with larger angles
===============================================================

Move the incenter of a hyperbolic simplex to the origin of the Poincare
ball. The inscribed sphere touches each facet at a point u_i, and the
planes tangent to the unit sphere at the u_i bound a Euclidean simplex
whose angles pi - angle(u_i, u_j) beat the hyperbolic ones pairwise.
"""

import numpy as np

from simplexorder.comparisons import hyperbolic_incenter, m2_euclidean_from_hyperbolic
from simplexorder.sampling import random_simplex
from simplexorder.simplex import realize

# regular hyperbolic triangle with all angles pi/4
g = np.full((3, 3), -np.cos(np.pi / 4))
np.fill_diagonal(g, 1.0)
h = realize(g)
ins = hyperbolic_incenter(h)
print("inradius:", ins.inradius)
print("tangency directions:\n", np.round(ins.tangency_dirs, 6))
print("balance coefficients:", ins.balance)

euclid, xi, eta = m2_euclidean_from_hyperbolic(h)
print("euclidean angles (deg):", np.degrees(xi.pairs()))
print("hyperbolic angles (deg):", np.degrees(eta.pairs()))

# random hyperbolic simplexes in dimensions 2 to 5
for dim in range(2, 6):
    gaps = []
    for seed in range(20):
        r = m2_euclidean_from_hyperbolic(random_simplex("hyperbolic", dim, seed))
        gaps.append(np.min(r.xi.pairs() - r.eta.pairs()))
    print(f"dim {dim}: smallest xi - eta over 20 simplexes = {min(gaps):.3e}")

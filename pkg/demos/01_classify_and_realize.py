"""
Classifying Gram matrices and realizing them as simplexes
==========================================================

A symmetric unit-diagonal matrix G with entries -cos(angle) is the Gram
matrix of some simplex exactly when its eigenvalues and cofactors have the
right signs; the sign of the smallest eigenvalue then tells which geometry
the simplex lives in.
"""

import numpy as np

from simplexorder.sampling import random_simplex
from simplexorder.simplex import classify_gram, dihedral_angles, gram_of, realize


def angle_gram(angle, size=3):
    g = np.full((size, size), -np.cos(angle))
    np.fill_diagonal(g, 1.0)
    return g


# equilateral triangles with all angles equal: pi/3 is flat, smaller is
# hyperbolic, larger is spherical
for angle in (np.pi / 4, np.pi / 3, np.pi / 2):
    c = classify_gram(angle_gram(angle))
    print(f"all angles {np.degrees(angle):5.1f} deg -> {c.kind.value}")

# a matrix that is not the Gram matrix of anything
print("all ones ->", classify_gram(np.ones((3, 3))))

# realize a Gram matrix and read the angles back off the result
tri = realize(angle_gram(np.pi / 4))
print("hyperboloid vertices:\n", np.round(tri.vertices, 6))
print("angles recovered:", np.degrees(dihedral_angles(gram_of(tri)).pairs()))

# the same roundtrip on random simplexes of every geometry
for geometry in ("spherical", "euclidean", "hyperbolic"):
    worst = 0.0
    for seed in range(50):
        g = gram_of(random_simplex(geometry, 2 + seed % 4, seed))
        assert classify_gram(g).kind.value == geometry
        worst = max(worst, np.max(np.abs(gram_of(realize(g)).matrix - g.matrix)))
    print(f"{geometry:10s} 50 simplexes, worst Gram roundtrip error {worst:.1e}")

"""
No two Euclidean simplexes are strictly ordered
===============================================

If G1 and G2 are Euclidean Gram matrices with every angle of the second at
least as large and one strictly larger, then f(t) = det((1 - t) G1 + t G2)
would have f(1) = 0 and f'(1) > 0, making the interpolated matrices
indefinite just below t = 1. The witness computes f on a grid and f'(1) by
cofactors, and reports which premise fails.
"""

import numpy as np

from simplexorder.comparisons import m4_rigidity_witness
from simplexorder.numeric import TolerancePolicy
from simplexorder.sampling import random_simplex
from simplexorder.simplex import gram_of

g1 = gram_of(random_simplex("euclidean", 3, 2)).matrix
print(m4_rigidity_witness(g1, g1).reason)

# raising one angle makes the second matrix non-Euclidean
g2 = g1.copy()
g2[0, 1] = g2[1, 0] = g1[0, 1] + 0.05
rep = m4_rigidity_witness(g1, g2)
print(rep.classes, "|", rep.reason)
print("f'(1) = %.4f, f on [0, 1]:" % rep.f_prime_at_1, np.round(rep.f_grid[::5], 5))

# a tolerance loose enough to call a spherical Gram Euclidean trips the alarm
g2 = g1.copy()
g2[0, 1] = g2[1, 0] = g1[0, 1] + 1e-6
loose = TolerancePolicy(eq_zero=1e-4, strict_margin=1e-12)
print("loose tolerance:", m4_rigidity_witness(g1, g2, loose).verdict.value)

"""Seeded generators of well-conditioned random simplexes.

Samples are rejected until the vertex matrix has reciprocal condition
number >= 1e-6, every dihedral angle lies in (0.05, pi - 0.05) and every
diagonal cofactor of the Gram matrix is at least 1e-8, so the property
tests work with compact, comfortably nondegenerate simplexes.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError, SimplexOrderError
from .models import Geometry
from .numeric import MAX_DIM, cofactor_matrix
from .simplex import Simplex, dihedral_angles, gram_of, nondegeneracy_residual

MIN_RESIDUAL = 1e-6
MIN_COFACTOR = 1e-8
ANGLE_MARGIN = 0.05
SPHERE_CAP = np.pi / 2 - 0.1
MAX_ATTEMPTS = 10_000


def as_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _unit(rng, k):
    while True:
        v = rng.standard_normal(k)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            return v / norm


def _draw_vertices(geometry, dim, rng):
    if geometry is Geometry.EUCLIDEAN:
        return rng.standard_normal((dim + 1, dim))
    if geometry is Geometry.HYPERBOLIC:
        verts = []
        for _ in range(dim + 1):
            r = rng.uniform(0.3, 2.0)
            verts.append(np.append(np.sinh(r) * _unit(rng, dim), np.cosh(r)))
        return np.array(verts)
    center = _unit(rng, dim + 1)
    cos_cap = np.cos(SPHERE_CAP)
    verts = []
    while len(verts) < dim + 1:
        v = _unit(rng, dim + 1)
        if v @ center > cos_cap:
            verts.append(v)
    return np.array(verts)


def acceptable(simplex):
    """True if ``simplex`` passes the sampler's conditioning filters."""
    if nondegeneracy_residual(simplex.geometry, simplex.vertices) < MIN_RESIDUAL:
        return False
    try:
        gram = gram_of(simplex)
        angles = dihedral_angles(gram).pairs()
    except SimplexOrderError:
        return False
    # small diagonal cofactors sit too close to the strict-positivity cut
    if np.min(np.diag(cofactor_matrix(gram.matrix))) < MIN_COFACTOR:
        return False
    return bool(np.all(angles > ANGLE_MARGIN) and np.all(angles < np.pi - ANGLE_MARGIN))


def random_simplex(geometry, dim, seed=None):
    """Random ``dim``-simplex in the given geometry (deterministic per seed).

    Euclidean vertices are i.i.d. standard normal; hyperbolic vertices sit
    at distance uniform in [0.3, 2] from the basepoint in uniform
    directions; spherical vertices are uniform in a cap of radius
    ``pi/2 - 0.1`` around a uniform random center.
    """
    geometry = Geometry.parse(geometry)
    if not isinstance(dim, (int, np.integer)) or not 2 <= dim <= MAX_DIM:
        raise InputError(f"dim must be an integer in [2, {MAX_DIM}], got {dim!r}")
    rng = as_rng(seed)
    for _ in range(MAX_ATTEMPTS):
        verts = _draw_vertices(geometry, int(dim), rng)
        try:
            simplex = Simplex(geometry, verts)
        except InputError:
            continue
        if acceptable(simplex):
            return simplex
    raise RuntimeError("random_simplex: rejection sampling did not terminate")


def dual_center_barycentric(simplex):
    """Barycentric coordinates of the dual's smallest-ball center inside the dual."""
    from .models import min_enclosing_spherical_ball
    from .simplex import spherical_barycentric, spherical_dual

    dual = spherical_dual(simplex)
    ball, _ = min_enclosing_spherical_ball(dual.points)
    return spherical_barycentric(dual, ball.center.coords)


def random_boundary_center_simplex(dim, seed=None, threshold=1e-3):
    """Random spherical simplex whose dual has its smallest enclosing ball
    centered on a proper face (some barycentric coordinate below
    ``threshold``).

    Plain rejection rarely hits the face, so each draw is built from its
    dual: ``k`` dual vertices are placed symmetrically on a small circle
    around the south pole so that the pole is their circumcenter, and the
    remaining vertices are drawn strictly inside that circle.
    """
    if not isinstance(dim, (int, np.integer)) or not 2 <= dim <= MAX_DIM:
        raise InputError(f"dim must be an integer in [2, {MAX_DIM}], got {dim!r}")
    from .simplex import spherical_dual

    rng = as_rng(seed)
    n = int(dim)
    for _ in range(MAX_ATTEMPTS):
        k = int(rng.integers(2, n + 1))  # face size, a proper face
        r = rng.uniform(0.4, 1.2)
        # zero-mean tangent directions put the pole in the hull of the face
        dirs = rng.standard_normal((k, n))
        dirs -= dirs.mean(axis=0)
        norms = np.linalg.norm(dirs, axis=1)
        if np.min(norms) < 1e-3:
            continue
        dirs /= norms[:, None]
        face = [np.append(np.sin(r) * d, -np.cos(r)) for d in dirs]
        rest = []
        for _ in range(n + 1 - k):
            rr = rng.uniform(0.2, 0.9) * r
            rest.append(np.append(np.sin(rr) * _unit(rng, n), -np.cos(rr)))
        q = np.linalg.qr(rng.standard_normal((n + 1, n + 1)))[0]
        dual_verts = np.array(face + rest) @ q.T
        try:
            dual = Simplex(Geometry.SPHERICAL, dual_verts)
            primal = spherical_dual(dual)
        except SimplexOrderError:
            continue
        if not acceptable(primal) or nondegeneracy_residual(Geometry.SPHERICAL, dual_verts) < MIN_RESIDUAL:
            continue
        try:
            beta = dual_center_barycentric(primal)
        except SimplexOrderError:
            continue
        if np.min(beta) < threshold:
            return primal
    raise RuntimeError("random_boundary_center_simplex: rejection sampling did not terminate")

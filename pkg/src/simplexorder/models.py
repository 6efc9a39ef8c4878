"""Points, distances and isometries in the three model geometries.

* spherical: unit vectors in R^(n+1)
* euclidean: plain vectors in R^n
* hyperbolic: upper sheet of the hyperboloid ``<x, x>_M = -1`` in R^(n,1)
  with the Minkowski form ``diag(1, ..., 1, -1)``; the Poincare ball is
  available through :func:`hyperboloid_to_poincare`.

The module also holds the spherical utilities needed by the construction
of a Euclidean simplex from a spherical one: geodesic ray extension, the
spherical cosine law and the smallest enclosing spherical ball.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BallTooLarge, DegenerateRay, InputError, NumericalFailure, PreconditionViolated
from .numeric import DEFAULT_TOL, hemisphere_witness, min_norm_point

NORM_RESIDUAL = 1e-10


class Geometry(str, enum.Enum):
    SPHERICAL = "spherical"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InputError(f"unknown geometry {value!r}") from None


def minkowski_form(dim):
    """``diag(1, ..., 1, -1)`` of size ``dim``."""
    j = np.eye(dim)
    j[-1, -1] = -1.0
    return j


def minkowski_dot(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(x[:-1] @ y[:-1] - x[-1] * y[-1])


def ambient_dot(geometry, x, y):
    if Geometry.parse(geometry) is Geometry.HYPERBOLIC:
        return minkowski_dot(x, y)
    return float(np.dot(x, y))


def model_residual(geometry, coords):
    """Distance of ``coords`` from the model manifold (0 for Euclidean)."""
    geometry = Geometry.parse(geometry)
    x = np.asarray(coords, dtype=float)
    if geometry is Geometry.SPHERICAL:
        return abs(float(np.linalg.norm(x)) - 1.0)
    if geometry is Geometry.HYPERBOLIC:
        return abs(minkowski_dot(x, x) + 1.0)
    return 0.0


@dataclass(frozen=True)
class ModelPoint:
    geometry: Geometry
    coords: np.ndarray

    def __post_init__(self):
        geometry = Geometry.parse(self.geometry)
        x = np.array(self.coords, dtype=float)
        if x.ndim != 1 or x.size < 1:
            raise InputError("point coordinates must be a non-empty vector")
        if not np.all(np.isfinite(x)):
            raise InputError("point has non-finite coordinates")
        if geometry is not Geometry.EUCLIDEAN and x.size < 2:
            raise InputError("spherical/hyperbolic points need at least 2 coordinates")
        resid = model_residual(geometry, x)
        if resid >= NORM_RESIDUAL:
            raise InputError(f"{geometry.value} point off the model (residual {resid:.3e})")
        if geometry is Geometry.HYPERBOLIC and x[-1] <= 0:
            raise InputError("hyperboloid point must lie on the upper sheet")
        x.setflags(write=False)
        object.__setattr__(self, "geometry", geometry)
        object.__setattr__(self, "coords", x)

    @property
    def dim(self):
        """Dimension of the geometry the point lives in."""
        return self.coords.size - (0 if self.geometry is Geometry.EUCLIDEAN else 1)

    @classmethod
    def spherical(cls, coords, normalize=False):
        x = np.asarray(coords, dtype=float)
        if normalize:
            x = x / np.linalg.norm(x)
        return cls(Geometry.SPHERICAL, x)

    @classmethod
    def euclidean(cls, coords):
        return cls(Geometry.EUCLIDEAN, coords)

    @classmethod
    def hyperbolic(cls, coords, normalize=False):
        x = np.asarray(coords, dtype=float)
        if normalize:
            x = x / np.sqrt(-minkowski_dot(x, x))
            if x[-1] < 0:
                x = -x
        return cls(Geometry.HYPERBOLIC, x)


def basepoint(geometry, dim):
    """South pole ``(0, ..., 0, -1)`` of S^dim, origin of E^dim or ``(0, ..., 0, 1)`` of H^dim."""
    geometry = Geometry.parse(geometry)
    if geometry is Geometry.EUCLIDEAN:
        return ModelPoint(geometry, np.zeros(dim))
    x = np.zeros(dim + 1)
    x[-1] = -1.0 if geometry is Geometry.SPHERICAL else 1.0
    return ModelPoint(geometry, x)


def distance(p, q):
    """Geodesic distance; radians for S^n and H^n.

    Computed from chord lengths (``2 atan2(|p - q|, |p + q|)`` on the
    sphere, ``2 asinh(|p - q|_M / 2)`` on the hyperboloid), which stays
    accurate for nearby points where arccos/arccosh lose half the digits.
    """
    if p.geometry is not q.geometry:
        raise InputError("points belong to different geometries")
    if p.coords.shape != q.coords.shape:
        raise InputError("points have different dimensions")
    diff = p.coords - q.coords
    if p.geometry is Geometry.SPHERICAL:
        return sphere_distance(p.coords, q.coords)
    if p.geometry is Geometry.HYPERBOLIC:
        chord = np.sqrt(max(0.0, minkowski_dot(diff, diff)))
        return float(2.0 * np.arcsinh(chord / 2.0))
    return float(np.linalg.norm(diff))


def sphere_distance(x, y):
    """Angle between two unit vectors (no validation)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(2.0 * np.arctan2(np.linalg.norm(x - y), np.linalg.norm(x + y)))


# -- isometries ------------------------------------------------------------


@dataclass(frozen=True)
class Isometry:
    """Linear isometry of the ambient space of a model.

    Orthogonal for S^n and E^n (E^n isometries here fix the origin),
    Lorentz for H^n. Compose with ``@``; apply to points with a call and
    to tangent/normal vectors with :meth:`apply_vector`.
    """

    geometry: Geometry
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        object.__setattr__(self, "matrix", m)

    def __call__(self, point):
        if point.geometry is not self.geometry:
            raise InputError("isometry applied to a point of another geometry")
        return ModelPoint(self.geometry, self.matrix @ point.coords)

    def apply_vector(self, v):
        return self.matrix @ np.asarray(v, dtype=float)

    def __matmul__(self, other):
        if other.geometry is not self.geometry:
            raise InputError("cannot compose isometries of different geometries")
        return Isometry(self.geometry, self.matrix @ other.matrix)

    def inverse(self):
        if self.geometry is Geometry.HYPERBOLIC:
            j = minkowski_form(self.matrix.shape[0])
            return Isometry(self.geometry, j @ self.matrix.T @ j)
        return Isometry(self.geometry, self.matrix.T)


def rotation_between(a, b):
    """Rotation of R^k (det +1) taking unit vector ``a`` to unit vector ``b``,
    acting as the identity on the complement of ``span(a, b)``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    k = a.size
    c = float(np.clip(a @ b, -1.0, 1.0))
    perp = b - c * a
    norm = np.linalg.norm(perp)
    if norm < 1e-12 and c > 0:
        return np.eye(k)
    if norm < 1e-12:
        # antipodal: rotate by pi in a plane containing a
        trial = np.eye(k)[np.argmin(np.abs(a))]
        perp = trial - (trial @ a) * a
        perp /= np.linalg.norm(perp)
        s = 0.0
        c = -1.0
    else:
        perp /= norm
        s = float(np.sqrt(max(0.0, 1.0 - c * c)))
    r = np.eye(k) + (c - 1.0) * (np.outer(a, a) + np.outer(perp, perp)) + s * (
        np.outer(perp, a) - np.outer(a, perp)
    )
    return r


def lorentz_boost_to_basepoint(p):
    """Lorentz boost of R^(n,1) taking hyperboloid point ``p`` to ``(0, ..., 0, 1)``."""
    p = np.asarray(p, dtype=float)
    k = p.size
    x, x0 = p[:-1], p[-1]
    m = np.eye(k)
    r = np.linalg.norm(x)
    if r > 0:
        u = x / r
        m[:-1, :-1] += (x0 - 1.0) * np.outer(u, u)
    m[:-1, -1] = -x
    m[-1, :-1] = -x
    m[-1, -1] = x0
    return m


def translate_to_basepoint(p):
    """Isometry taking ``p`` to the basepoint of its model.

    Spherical points go to the south pole ``(0, ..., 0, -1)`` by a
    rotation; hyperbolic points go to ``(0, ..., 0, 1)`` by a boost.
    """
    if p.geometry is Geometry.SPHERICAL:
        target = np.zeros(p.coords.size)
        target[-1] = -1.0
        return Isometry(p.geometry, rotation_between(p.coords, target))
    if p.geometry is Geometry.HYPERBOLIC:
        return Isometry(p.geometry, lorentz_boost_to_basepoint(p.coords))
    raise InputError("translate_to_basepoint needs a spherical or hyperbolic point")


# -- hyperbolic model conversion ---------------------------------------------


def hyperboloid_to_poincare(p):
    """Poincare-ball coordinates ``x[:-1] / (1 + x[-1])``."""
    if p.geometry is not Geometry.HYPERBOLIC:
        raise InputError("expected a hyperbolic point")
    return p.coords[:-1] / (1.0 + p.coords[-1])


def poincare_to_hyperboloid(y):
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y)):
        raise InputError("non-finite Poincare coordinates")
    r2 = float(y @ y)
    if r2 >= 1.0:
        raise InputError("Poincare point must lie inside the unit ball")
    denom = 1.0 - r2
    return ModelPoint(Geometry.HYPERBOLIC, np.append(2.0 * y / denom, (1.0 + r2) / denom))


# -- spherical utilities -----------------------------------------------------


def spherical_ray_extend(s, v, t):
    """Point at arclength ``t`` beyond ``v`` on the geodesic ray from ``s`` through ``v``.

    ``t`` ranges over ``[-d(s, v), pi - d(s, v)]``: ``t = -d(s, v)`` gives
    ``s`` and the upper end gives the antipode ``-s``.
    """
    if s.geometry is not Geometry.SPHERICAL or v.geometry is not Geometry.SPHERICAL:
        raise InputError("spherical_ray_extend needs spherical points")
    d = distance(s, v)
    tangent = v.coords - np.cos(d) * s.coords
    norm = np.linalg.norm(tangent)
    if norm < 1e-12:
        raise DegenerateRay("ray from s through v is undefined (v = ±s)")
    if not (-d - 1e-12 <= t <= np.pi - d + 1e-12):
        raise InputError(f"t={t} outside [{-d}, {np.pi - d}]")
    tangent /= norm
    angle = d + t
    x = np.cos(angle) * s.coords + np.sin(angle) * tangent
    return ModelPoint(Geometry.SPHERICAL, x / np.linalg.norm(x))


def spherical_third_side(x, y, c):
    """Side opposite angle ``c`` in a spherical triangle with sides ``x``, ``y``."""
    rhs = np.cos(x) * np.cos(y) + np.sin(x) * np.sin(y) * np.cos(c)
    return float(np.arccos(np.clip(rhs, -1.0, 1.0)))


def extension_growth_rate(x, y, c, g):
    """``z'(t)`` when both sides adjacent to angle ``c`` grow at rate ``g``.

    ``z' sin z = g (1 - cos c) sin(x + y)``, which is positive as long as
    ``x + y < pi``.
    """
    if x + y >= np.pi:
        raise PreconditionViolated("side extension requires x + y < pi")
    if g <= 0:
        raise PreconditionViolated("growth rate g must be positive")
    z = spherical_third_side(x, y, c)
    return float(g * (1.0 - np.cos(c)) * np.sin(x + y) / np.sin(z))


@dataclass(frozen=True)
class SphericalBall:
    center: ModelPoint
    radius: float

    def __post_init__(self):
        if self.center.geometry is not Geometry.SPHERICAL:
            raise InputError("ball center must be spherical")
        if not (0.0 <= self.radius < np.pi / 2):
            raise BallTooLarge(f"radius {self.radius} outside [0, pi/2)")

    def contains(self, point, slack=1e-10):
        return distance(self.center, point) <= self.radius + slack


def _tangent_coordinates(center, vectors):
    """Unit tangent directions at ``center`` towards ``vectors``, in an
    orthonormal basis of the tangent space."""
    k = center.size
    basis = np.linalg.svd(np.eye(k) - np.outer(center, center))[0][:, : k - 1]
    out = []
    for v in vectors:
        t = basis.T @ (v - (v @ center) * center)
        out.append(t / np.linalg.norm(t))
    return np.array(out)


def min_enclosing_spherical_ball(points, tol=DEFAULT_TOL):
    """Smallest spherical ball containing ``points``; returns ``(ball, support)``.

    For points in an open hemisphere, ``cos(radius)`` is the largest value
    of ``min_i <c, p_i>`` over unit ``c``, which equals the distance from
    the origin to the convex hull of the points; the center is the nearest
    hull point, normalized. ``support`` lists the indices at distance
    ``radius`` (to 1e-8) from the center.
    """
    pts = [p if isinstance(p, ModelPoint) else ModelPoint.spherical(p) for p in points]
    if not pts:
        raise InputError("no points")
    if any(p.geometry is not Geometry.SPHERICAL for p in pts):
        raise InputError("min_enclosing_spherical_ball needs spherical points")
    coords = np.array([p.coords for p in pts])
    nearest, _ = min_norm_point(coords, tol)
    cos_r = float(np.linalg.norm(nearest))
    if cos_r <= np.sin(tol.eq_zero):
        raise BallTooLarge("points do not lie in an open hemisphere")
    center = nearest / cos_r
    dists = np.arccos(np.clip(coords @ center, -1.0, 1.0))
    radius = float(np.max(dists))
    if radius >= np.pi / 2 - tol.eq_zero:
        raise BallTooLarge(f"enclosing radius {radius} too close to pi/2")
    support = tuple(int(i) for i in np.flatnonzero(dists >= radius - 1e-8))
    ball = SphericalBall(ModelPoint.spherical(center, normalize=True), radius)
    if len(support) >= 2 and radius > 0:
        # optimality certificate: support not in an open hemisphere of the boundary sphere
        dirs = _tangent_coordinates(ball.center.coords, coords[list(support)])
        if hemisphere_witness(dirs, "open", tol) is not None:
            raise NumericalFailure("enclosing ball failed its optimality certificate")
    return ball, support


def support_certificate(ball, points, support, tol=DEFAULT_TOL):
    """Open-hemisphere witness for the support on the ball's boundary sphere
    (``None`` certifies optimality)."""
    coords = np.array([points[i].coords if isinstance(points[i], ModelPoint) else points[i]
                       for i in support], dtype=float)
    if ball.radius == 0 or len(support) < 2:
        return None
    dirs = _tangent_coordinates(ball.center.coords, coords)
    return hemisphere_witness(dirs, "open", tol)

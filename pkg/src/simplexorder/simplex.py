"""Simplexes, facet normals, Gram matrices and dihedral-angle tables.

The Gram matrix of an n-simplex is the (n+1) x (n+1) matrix of inner
products of its inward unit facet normals, ``G_ij = -cos(zeta_ij)``, with
the ambient form of the model (Euclidean dot product for S^n and E^n,
Minkowski form for H^n). :func:`classify_gram` decides which geometry a
unit-diagonal symmetric matrix belongs to, and :func:`realize` builds a
simplex with a prescribed Gram matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DegenerateSimplex, InputError, NumericalFailure
from .models import Geometry, ModelPoint, minkowski_form
from .numeric import (
    DEFAULT_TOL,
    MAX_DIM,
    gram_diagnostics,
    matrix_scale,
    solve_square,
    symmetric_matrix,
)


def _homogeneous(geometry, vertices):
    """Square matrix whose rows are the vertices (affinely lifted for E^n)."""
    if geometry is Geometry.EUCLIDEAN:
        return np.hstack([vertices, np.ones((vertices.shape[0], 1))])
    return vertices


def nondegeneracy_residual(geometry, vertices):
    """Reciprocal condition number of the (lifted) vertex matrix; 0 when degenerate."""
    m = _homogeneous(Geometry.parse(geometry), np.asarray(vertices, dtype=float))
    sv = np.linalg.svd(m, compute_uv=False)
    return float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0


@dataclass(frozen=True)
class Simplex:
    """Labeled geodesic n-simplex; row ``i`` of ``vertices`` is ``z_(i+1)``."""

    geometry: Geometry
    vertices: np.ndarray

    def __post_init__(self):
        geometry = Geometry.parse(self.geometry)
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2:
            raise InputError("vertices must be a 2-d array")
        n = v.shape[0] - 1
        ambient = n if geometry is Geometry.EUCLIDEAN else n + 1
        if v.shape[1] != ambient:
            raise InputError(
                f"{geometry.value} {n}-simplex needs vertices with {ambient} coordinates, "
                f"got {v.shape[1]}"
            )
        if not 2 <= n <= MAX_DIM:
            raise InputError(f"simplex dimension must be in [2, {MAX_DIM}], got {n}")
        for i, row in enumerate(v):
            try:
                ModelPoint(geometry, row)
            except InputError as exc:
                raise InputError(f"vertex {i}: {exc}", path=f"vertices[{i}]") from None
        if nondegeneracy_residual(geometry, v) <= DEFAULT_TOL.eq_zero:
            raise DegenerateSimplex("vertices lie in a totally geodesic hypersurface")
        v.setflags(write=False)
        object.__setattr__(self, "geometry", geometry)
        object.__setattr__(self, "vertices", v)

    @property
    def dim(self):
        return self.vertices.shape[0] - 1

    def vertex(self, i):
        return ModelPoint(self.geometry, self.vertices[i])

    @property
    def points(self):
        return [self.vertex(i) for i in range(self.dim + 1)]

    def permuted(self, perm):
        return Simplex(self.geometry, self.vertices[list(perm)])


@dataclass(frozen=True)
class FacetNormals:
    """Inward unit normals; ``normals[i]`` is normal to the face opposite vertex ``i``."""

    geometry: Geometry
    normals: np.ndarray

    def form(self):
        if self.geometry is Geometry.HYPERBOLIC:
            return minkowski_form(self.normals.shape[1])
        return np.eye(self.normals.shape[1])

    def gram(self):
        return self.normals @ self.form() @ self.normals.T


def facet_normals(simplex):
    """Inward unit normals of the facets, under the model's ambient form.

    Row ``i`` of the inverse of the (lifted) vertex matrix pairs to 1 with
    ``z_i`` and to 0 with every other vertex, so it is an inward normal of
    face ``i`` up to the form and a positive scale.
    """
    g = simplex.geometry
    m = _homogeneous(g, simplex.vertices)
    try:
        inv = np.linalg.inv(m)
    except np.linalg.LinAlgError:
        raise DegenerateSimplex("vertex matrix is singular") from None
    dual = inv.T  # row i pairs with vertex i
    if g is Geometry.EUCLIDEAN:
        raw = dual[:, :-1]
        norms = np.linalg.norm(raw, axis=1)
    elif g is Geometry.SPHERICAL:
        raw = dual
        norms = np.linalg.norm(raw, axis=1)
    else:
        j = minkowski_form(m.shape[1])
        raw = dual @ j
        sq = np.einsum("ij,jk,ik->i", raw, j, raw)
        if np.any(sq <= 0):
            raise DegenerateSimplex("facet normal is not spacelike")
        norms = np.sqrt(sq)
    if np.any(norms <= 0) or not np.all(np.isfinite(norms)):
        raise DegenerateSimplex("zero facet normal")
    return FacetNormals(g, raw / norms[:, None])


@dataclass(frozen=True)
class GramMatrix:
    """Unit-diagonal symmetric matrix with entries ``-cos(zeta_ij)``."""

    matrix: np.ndarray

    def __post_init__(self):
        a = symmetric_matrix(self.matrix)
        if np.max(np.abs(np.diag(a) - 1.0)) > 1e-12:
            raise InputError("Gram matrix must have unit diagonal")
        a = a.copy()
        np.fill_diagonal(a, 1.0)
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @property
    def size(self):
        return self.matrix.shape[0]

    @cached_property
    def diagnostics(self):
        return gram_diagnostics(self.matrix)


def gram_of(simplex):
    """Gram matrix of ``simplex`` from its inward facet normals."""
    normals = facet_normals(simplex)
    g = normals.gram()
    g = 0.5 * (g + g.T)
    np.fill_diagonal(g, 1.0)
    return GramMatrix(g)


@dataclass(frozen=True)
class DihedralAngles:
    """Symmetric table of dihedral angles; the diagonal holds pi."""

    angles: np.ndarray

    def __post_init__(self):
        a = np.array(self.angles, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError("angle table must be square")
        if not np.allclose(a, a.T, atol=1e-14):
            raise InputError("angle table must be symmetric")
        off = a[~np.eye(a.shape[0], dtype=bool)]
        if np.any(off <= 0) or np.any(off >= np.pi):
            raise InputError("dihedral angles must lie in (0, pi)")
        a = 0.5 * (a + a.T)
        np.fill_diagonal(a, np.pi)
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)

    @property
    def size(self):
        return self.angles.shape[0]

    def pairs(self):
        """Upper-triangular angles ``zeta_ij`` (i < j), row-major."""
        return self.angles[np.triu_indices(self.size, 1)]

    def to_gram(self):
        g = -np.cos(self.angles)
        np.fill_diagonal(g, 1.0)
        return GramMatrix(g)


def dihedral_angles(gram):
    """``zeta_ij = arccos(-g_ij)``."""
    g = gram.matrix if isinstance(gram, GramMatrix) else np.asarray(gram, dtype=float)
    off = g[~np.eye(g.shape[0], dtype=bool)]
    if np.any(off <= -1.0) or np.any(off >= 1.0):
        raise InputError("Gram off-diagonal entries must lie in (-1, 1)")
    return DihedralAngles(np.arccos(-g))


# -- classification --------------------------------------------------------


class GramClass(str, enum.Enum):
    SPHERICAL = "spherical"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"
    NOT_A_GRAM = "not_a_gram"

    @property
    def geometry(self):
        return None if self is GramClass.NOT_A_GRAM else Geometry(self.value)


@dataclass(frozen=True)
class Classification:
    kind: GramClass
    reason: str | None = None
    diagnostics: object = field(default=None, repr=False, compare=False)

    @property
    def geometry(self):
        return self.kind.geometry

    def __eq__(self, other):
        if isinstance(other, (GramClass, Geometry)):
            return self.kind.value == other.value
        if isinstance(other, Classification):
            return self.kind is other.kind and self.reason == other.reason
        return NotImplemented

    __hash__ = object.__hash__


def classify_gram(a, tol=DEFAULT_TOL):
    """Decide whether ``a`` is the Gram matrix of a spherical, Euclidean or
    hyperbolic simplex.

    Spherical iff positive definite. Otherwise all principal blocks of size
    n must be positive definite and all cofactors positive; the determinant
    then separates Euclidean (zero) from hyperbolic (negative). Failures
    are reported in the order determinant sign, principal blocks,
    cofactors.
    """
    if isinstance(a, GramMatrix):
        a = a.matrix
    a = symmetric_matrix(a, tol)
    if a.shape[0] < 3:
        raise InputError("classification needs a matrix of size >= 3")
    if np.max(np.abs(np.diag(a) - 1.0)) > 1e-12:
        raise InputError("classify_gram expects a unit diagonal")
    diag = gram_diagnostics(a, tol)
    # The sign of det(A) is read off the spectrum: |det| of a genuine
    # hyperbolic Gram can be far below eq_zero while its negative
    # eigenvalue stays well separated from zero.
    eig = np.linalg.eigvalsh(a)
    threshold = tol.eq_zero * matrix_scale(a)
    if eig[0] > threshold:
        return Classification(GramClass.SPHERICAL, diagnostics=diag)
    det_is_zero = abs(eig[0]) <= threshold
    if not det_is_zero and np.prod(np.sign(eig)) > 0:
        return Classification(GramClass.NOT_A_GRAM,
                              "det(A) > 0 but A is not positive definite", diag)
    if not diag.principal_n_blocks_pd:
        k = int(np.argmin(diag.principal_block_mins))
        return Classification(GramClass.NOT_A_GRAM,
                              f"principal block without index {k} is not positive definite", diag)
    if not diag.cofactors_all_positive:
        i, j = np.unravel_index(np.argmin(diag.cofactors), diag.cofactors.shape)
        return Classification(GramClass.NOT_A_GRAM,
                              f"cofactor c[{i}][{j}] = {diag.cofactors[i, j]:.3e} is not positive",
                              diag)
    if det_is_zero:
        return Classification(GramClass.EUCLIDEAN, diagnostics=diag)
    return Classification(GramClass.HYPERBOLIC, diagnostics=diag)


# -- realization -----------------------------------------------------------


def _realize_spherical(a):
    n_mat = np.linalg.cholesky(a).T  # a = N^T N, columns are normals
    z = np.linalg.inv(n_mat.T)  # columns pair to delta_ij with normals
    z = z / np.linalg.norm(z, axis=0)
    return Simplex(Geometry.SPHERICAL, z.T)


def _realize_hyperbolic(a):
    w, q = np.linalg.eigh(a)
    if not (w[0] < 0 < w[1]):
        raise NumericalFailure("hyperbolic Gram does not have signature (n, 1)",
                               {"eigenvalues": w.tolist()})
    order = np.r_[1:len(w), 0]  # negative eigenvalue last
    w, q = w[order], q[:, order]
    n_mat = np.sqrt(np.abs(w))[:, None] * q.T  # a = N^T J N
    j = minkowski_form(len(w))
    z = np.linalg.inv(n_mat.T @ j)  # <n_i, z_j>_M = delta_ij
    norms = -np.einsum("ki,kl,li->i", z, j, z)
    if np.any(norms <= 0):
        raise NumericalFailure("dual vertex is not timelike")
    z = z / np.sqrt(norms)
    if np.all(z[-1] < 0):
        z = -z
    elif not np.all(z[-1] > 0):
        raise NumericalFailure("dual vertices lie on different sheets")
    return Simplex(Geometry.HYPERBOLIC, z.T)


def _realize_euclidean(a):
    w, q = np.linalg.eigh(a)
    keep = w[1:]
    normals = (np.sqrt(keep)[:, None] * q[:, 1:].T).T  # rows: unit normals in R^n
    size, n = normals.shape
    # faces tangent to the unit sphere: <x, n_i> = -1, interior <x, n_i> >= -1
    verts = []
    for j in range(size):
        rows = [i for i in range(size) if i != j]
        verts.append(solve_square(normals[rows], -np.ones(n)))
    return Simplex(Geometry.EUCLIDEAN, np.array(verts))


def realize(a, tol=DEFAULT_TOL):
    """A simplex whose Gram matrix is ``a``.

    Spherical and hyperbolic results are exact up to isometry; Euclidean
    results are normalized to inradius 1 around the origin.
    """
    if isinstance(a, GramMatrix):
        a = a.matrix
    cls = classify_gram(a, tol)
    a = symmetric_matrix(a, tol)
    if cls.kind is GramClass.NOT_A_GRAM:
        raise InputError(f"not a Gram matrix: {cls.reason}")
    if cls.kind is GramClass.SPHERICAL:
        return _realize_spherical(a)
    if cls.kind is GramClass.HYPERBOLIC:
        return _realize_hyperbolic(a)
    return _realize_euclidean(a)


def spherical_barycentric(simplex, point):
    """Coefficients ``beta`` (summing to 1) with ``point`` proportional to
    ``beta @ vertices``; all nonnegative iff ``point`` lies in the simplex."""
    if simplex.geometry is not Geometry.SPHERICAL:
        raise InputError("spherical_barycentric needs a spherical simplex")
    p = point.coords if isinstance(point, ModelPoint) else np.asarray(point, dtype=float)
    beta = solve_square(simplex.vertices.T, p)
    return beta / beta.sum()


def spherical_dual(simplex):
    """Dual spherical simplex: vertex ``i`` is the outward unit normal of face ``i``.

    Vertex distances satisfy ``d(v_i, v_j) = pi - sigma_ij``.
    """
    if simplex.geometry is not Geometry.SPHERICAL:
        raise InputError("spherical_dual needs a spherical simplex")
    normals = facet_normals(simplex).normals
    return Simplex(Geometry.SPHERICAL, -normals)


# -- partial order ---------------------------------------------------------


class Order(str, enum.Enum):
    EQUAL = "equal"
    STRICTLY_LESS = "strictly_less"
    LESS_OR_EQUAL_NOT_STRICT = "less_or_equal_not_strict"
    STRICTLY_GREATER = "strictly_greater"
    GREATER_OR_EQUAL_NOT_STRICT = "greater_or_equal_not_strict"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class OrderRelation:
    order: Order
    margins: np.ndarray = field(repr=False)  # b - a, zero diagonal

    @property
    def min_margin(self):
        """Smallest ``b_ij - a_ij`` over i < j."""
        return float(np.min(self.margins[np.triu_indices(len(self.margins), 1)]))

    @property
    def max_margin(self):
        return float(np.max(self.margins[np.triu_indices(len(self.margins), 1)]))


def compare(a, b, tol=DEFAULT_TOL, strict_gap=None):
    """Entrywise comparison of two angle tables.

    Differences within ``angle_eps`` count as equal. A pair is strict when
    it differs by more than ``strict_gap`` (default ``angle_eps``); a larger
    ``strict_gap`` makes the ``*_OR_EQUAL_NOT_STRICT`` outcomes reachable.
    """
    if a.size != b.size:
        raise InputError("angle tables have different sizes")
    eps = tol.angle_eps
    gap = eps if strict_gap is None else strict_gap
    margins = b.angles - a.angles
    np.fill_diagonal(margins, 0.0)
    d = margins[np.triu_indices(a.size, 1)]
    if np.all(np.abs(d) <= eps):
        order = Order.EQUAL
    elif np.all(d >= -eps):
        order = Order.STRICTLY_LESS if np.any(d > gap) else Order.LESS_OR_EQUAL_NOT_STRICT
    elif np.all(d <= eps):
        order = Order.STRICTLY_GREATER if np.any(d < -gap) else Order.GREATER_OR_EQUAL_NOT_STRICT
    else:
        order = Order.INCOMPARABLE
    return OrderRelation(order, margins)

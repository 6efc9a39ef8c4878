"""Constructive comparison of simplexes across the three geometries.

* :func:`m3_bracket` -- hyperbolic and spherical simplexes squeezing a
  Euclidean one (``H < E < S``) along straight paths of Gram matrices.
* :func:`m4_rigidity_witness` -- checks that two Euclidean Gram matrices
  cannot be strictly ordered.
* :func:`m2_euclidean_from_hyperbolic` -- Euclidean simplex circumscribed
  about the insphere of a hyperbolic one (``H < E``).
* :func:`m1_euclidean_from_spherical` -- Euclidean simplex obtained by
  pushing the dual of a spherical simplex out to an equator
  (``E < S``).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
import numpy as np

from .errors import DegenerateRay, DegenerateSimplex, InputError, NumericalFailure
from .models import (
    Geometry,
    Isometry,
    ModelPoint,
    SphericalBall,
    basepoint,
    lorentz_boost_to_basepoint,
    min_enclosing_spherical_ball,
    minkowski_form,
    spherical_ray_extend,
    translate_to_basepoint,
)
from .numeric import (
    DEFAULT_TOL,
    cofactor_matrix,
    hemisphere_witness,
    numerical_rank,
    positive_kernel,
    solve_square,
)
from .simplex import (
    DihedralAngles,
    GramClass,
    GramMatrix,
    Order,
    OrderRelation,
    Simplex,
    classify_gram,
    compare,
    dihedral_angles,
    facet_normals,
    gram_of,
    realize,
    spherical_barycentric,
    spherical_dual,
)

MAX_HALVINGS = 60


def _pairwise_sphere_distances(rows):
    rows = np.asarray(rows, dtype=float)
    return np.arccos(np.clip(rows @ rows.T, -1.0, 1.0))


def _off_diagonal(a):
    return a[np.triu_indices(a.shape[0], 1)]


def _tangent_plane_simplex(directions, tol=DEFAULT_TOL):
    """Euclidean simplex ``{x : <x, d_i> <= 1}`` bounded by the tangent planes
    of the unit sphere at the unit vectors ``d_i``."""
    d = np.asarray(directions, dtype=float)
    size, n = d.shape
    verts = []
    for j in range(size):
        rows = [i for i in range(size) if i != j]
        verts.append(solve_square(d[rows], np.ones(n), tol))
    return Simplex(Geometry.EUCLIDEAN, np.array(verts))


# -- bracketing a Euclidean simplex ------------------------------------------


def hyperbolic_target(size):
    """Unit diagonal, ``-1`` off the diagonal."""
    p = -np.ones((size, size))
    np.fill_diagonal(p, 1.0)
    return p


def spherical_target(gram, kind="mirror"):
    """Endpoint of the path used to push a Euclidean Gram into the spherical cone.

    ``"mirror"`` reflects the hyperbolic endpoint through ``gram``
    (off-diagonal ``1 + 2 g_ij``), so both branches move every entry by
    ``t (1 + g_ij)``. ``"ones"`` is the all-ones matrix.
    """
    g = np.asarray(gram, dtype=float)
    if kind == "mirror":
        return 2.0 * g - hyperbolic_target(g.shape[0])
    if kind == "ones":
        return np.ones_like(g)
    raise InputError(f"unknown spherical target {kind!r}")


def det_path_derivative(a, p):
    """``d/dt det((1 - t) a + t p)`` at ``t = 0`` via cofactors of ``a``."""
    a = np.asarray(a, dtype=float)
    return float(np.sum(cofactor_matrix(a) * (np.asarray(p, dtype=float) - a)))


@dataclass(frozen=True)
class BracketResult:
    gram: GramMatrix
    t_hyp: float
    t_sph: float
    gram_hyp: GramMatrix
    gram_sph: GramMatrix
    simplex_hyp: Simplex
    simplex_sph: Simplex
    hyp_vs_euc: OrderRelation = field(repr=False)
    sph_vs_euc: OrderRelation = field(repr=False)

    @property
    def min_margin(self):
        """Smallest strict gap over both branches (radians)."""
        return min(self.hyp_vs_euc.min_margin, -self.sph_vs_euc.max_margin)


def _walk_path(g, target, want, t_request, tol):
    angles_e = dihedral_angles(g)
    expected = Order.STRICTLY_LESS if want is GramClass.HYPERBOLIC else Order.STRICTLY_GREATER
    t = float(t_request)
    for _ in range(MAX_HALVINGS + 1):
        a = (1.0 - t) * g + t * target
        np.fill_diagonal(a, 1.0)
        if classify_gram(a, tol).kind is want:
            rel = compare(dihedral_angles(a), angles_e, tol)
            margin = rel.min_margin if want is GramClass.HYPERBOLIC else -rel.max_margin
            if rel.order is expected and margin > tol.angle_eps:
                return t, GramMatrix(a), rel
        t *= 0.5
    raise NumericalFailure(f"no valid {want.value} Gram found by halving",
                           {"t_request": t_request, "halvings": MAX_HALVINGS})


def m3_bracket(euclidean, t_request=0.1, tol=DEFAULT_TOL, spherical_endpoint="mirror"):
    """Hyperbolic and spherical simplexes with every dihedral angle strictly
    below, respectively above, those of ``euclidean``.

    Walks ``A(t) = (1 - t) G + t P`` from the Euclidean Gram ``G`` and takes
    the largest ``t`` of the form ``t_request / 2**k`` at which ``A(t)``
    classifies correctly and the angle order is strict.
    """
    if isinstance(euclidean, Simplex):
        if euclidean.geometry is not Geometry.EUCLIDEAN:
            raise InputError("m3_bracket needs a Euclidean simplex")
        gram = gram_of(euclidean)
    else:
        gram = euclidean if isinstance(euclidean, GramMatrix) else GramMatrix(euclidean)
        if classify_gram(gram, tol).kind is not GramClass.EUCLIDEAN:
            raise InputError("m3_bracket needs a Euclidean Gram matrix")
    if not 0.0 < t_request <= 1.0:
        raise InputError("t_request must lie in (0, 1]")
    g = np.array(gram.matrix)
    t_h, gram_h, rel_h = _walk_path(g, hyperbolic_target(len(g)), GramClass.HYPERBOLIC,
                                    t_request, tol)
    t_s, gram_s, rel_s = _walk_path(g, spherical_target(g, spherical_endpoint),
                                    GramClass.SPHERICAL, t_request, tol)
    return BracketResult(
        gram=gram,
        t_hyp=t_h,
        t_sph=t_s,
        gram_hyp=gram_h,
        gram_sph=gram_s,
        simplex_hyp=realize(gram_h, tol),
        simplex_sph=realize(gram_s, tol),
        hyp_vs_euc=rel_h,
        sph_vs_euc=rel_s,
    )


# -- rigidity ------------------------------------------------------------------


class Verdict(str, enum.Enum):
    CONSISTENT = "consistent"
    THEOREM_VIOLATION_SUSPECTED = "theorem_violation_suspected"


@dataclass(frozen=True)
class RigidityReport:
    premise_holds: bool
    strict_pair: tuple | None
    f_prime_at_1: float
    verdict: Verdict
    classes: tuple
    reason: str
    f_grid: np.ndarray = field(repr=False)
    diagnostics: dict = field(default_factory=dict, repr=False)


def m4_rigidity_witness(g1, g2, tol=DEFAULT_TOL, grid=21):
    """Examine ``f(t) = det((1 - t) G1 + t G2)`` for two Gram matrices.

    If both are Euclidean with ``G1 <= G2`` entrywise and some entry strictly
    smaller, ``f'(1) = sum_ij (g2 - g1)_ij c_ij(1) > 0`` while ``f(1) = 0``,
    so ``f`` would be negative just below 1 although ``A(t)`` is positive
    semidefinite. Such inputs cannot exist; reaching that branch returns
    ``THEOREM_VIOLATION_SUSPECTED``.
    """
    a = g1.matrix if isinstance(g1, GramMatrix) else np.asarray(g1, dtype=float)
    b = g2.matrix if isinstance(g2, GramMatrix) else np.asarray(g2, dtype=float)
    if a.shape != b.shape or a.shape[0] < 3:
        raise InputError("m4_rigidity_witness needs two Gram matrices of equal size >= 3")
    c1 = classify_gram(a, tol).kind
    c2 = classify_gram(b, tol).kind
    ts = np.linspace(0.0, 1.0, grid)
    f_grid = np.array([np.linalg.det((1 - t) * a + t * b) for t in ts])
    f_prime = 0.0 - det_path_derivative(b, a)  # derivative at t=1 along a -> b
    diff = b - a
    off = ~np.eye(a.shape[0], dtype=bool)
    dominated = bool(np.all(diff[off] >= -np.sin(tol.angle_eps)))
    both_euclidean = c1 is GramClass.EUCLIDEAN and c2 is GramClass.EUCLIDEAN
    premise = both_euclidean and dominated
    strict_pair = None
    if premise:
        ang = compare(dihedral_angles(a), dihedral_angles(b), tol)
        iu = np.triu_indices(a.shape[0], 1)
        k = int(np.argmax(ang.margins[iu]))
        if ang.margins[iu][k] > tol.angle_eps:
            strict_pair = (int(iu[0][k]), int(iu[1][k]))
    if not both_euclidean:
        reason = f"premise fails: classes are ({c1.value}, {c2.value})"
    elif not dominated:
        reason = "premise fails: G1 is not entrywise below G2"
    elif strict_pair is None:
        reason = "premise holds with no strict pair: angles coincide"
    else:
        reason = "both Euclidean with a strict pair: f'(1) > 0 contradicts f >= 0"
    verdict = Verdict.THEOREM_VIOLATION_SUSPECTED if strict_pair is not None else Verdict.CONSISTENT
    return RigidityReport(
        premise_holds=premise,
        strict_pair=strict_pair,
        f_prime_at_1=f_prime,
        verdict=verdict,
        classes=(c1, c2),
        reason=reason,
        f_grid=f_grid,
        diagnostics={"f_min": float(f_grid.min()), "max_entry_gap": float(np.max(diff[off]))},
    )


# -- hyperbolic insphere ---------------------------------------------------------


@dataclass(frozen=True)
class InsphereData:
    center: ModelPoint
    inradius: float
    tangency_dirs: np.ndarray  # rows u_i, unit vectors in R^n
    balance: np.ndarray  # lambda_i > 0, sum 1, sum lambda_i u_i = 0
    to_center: Isometry  # boost taking the center to the basepoint
    facet_residual: float

    @property
    def tangency_points_poincare(self):
        """Tangency points in the Poincare ball centered at the incenter."""
        return np.tanh(self.inradius / 2.0) * self.tangency_dirs


def hyperbolic_incenter(simplex, tol=DEFAULT_TOL):
    """Center and radius of the inscribed sphere of a hyperbolic simplex.

    The signed distance from ``x`` to facet ``i`` satisfies
    ``sinh d_i = <x, n_i>_M`` for inward unit normals, so the incenter is
    the normalization of the solution ``y`` of ``<y, n_i>_M = 1`` and
    ``sinh r = 1 / sqrt(-<y, y>_M)``.
    """
    if simplex.geometry is not Geometry.HYPERBOLIC:
        raise InputError("hyperbolic_incenter needs a hyperbolic simplex")
    normals = facet_normals(simplex).normals
    j = minkowski_form(normals.shape[1])
    y = solve_square(normals @ j, np.ones(len(normals)), tol)
    q = -(y[:-1] @ y[:-1] - y[-1] ** 2)
    if q <= 0 or y[-1] <= 0:
        raise DegenerateSimplex("no interior point equidistant from all facets")
    sinh_r = 1.0 / np.sqrt(q)
    x = y * sinh_r
    x = x / np.sqrt(-(x[:-1] @ x[:-1] - x[-1] ** 2))
    center = ModelPoint(Geometry.HYPERBOLIC, x)
    r = float(np.arcsinh(sinh_r))
    dists = np.arcsinh(normals @ j @ x)
    boost = Isometry(Geometry.HYPERBOLIC, lorentz_boost_to_basepoint(x))
    moved = normals @ boost.matrix.T
    spatial = moved[:, :-1]
    u = -spatial / np.linalg.norm(spatial, axis=1)[:, None]
    try:
        lam = positive_kernel(u, tol)
    except InputError as exc:
        raise DegenerateSimplex(f"tangency directions are not balanced: {exc}") from None
    return InsphereData(
        center=center,
        inradius=r,
        tangency_dirs=u,
        balance=lam,
        to_center=boost,
        facet_residual=float(np.max(np.abs(dists - r))),
    )


@dataclass(frozen=True)
class M2Result:
    """Unpacks as ``(euclidean, xi, eta)``; the insphere rides along."""

    euclidean: Simplex
    xi: DihedralAngles
    eta: DihedralAngles
    insphere: InsphereData = field(repr=False)

    def __iter__(self):
        return iter((self.euclidean, self.xi, self.eta))


def m2_euclidean_from_hyperbolic(simplex, tol=DEFAULT_TOL):
    """Euclidean simplex with the same insphere as a hyperbolic one.

    After moving the incenter to the origin, the Euclidean simplex is
    bounded by the hyperplanes tangent to the unit sphere at the tangency
    directions ``u_i``; its dihedral angles ``xi_ij = pi - angle(u_i, u_j)``
    strictly exceed the hyperbolic ones.
    """
    ins = hyperbolic_incenter(simplex, tol)
    u = ins.tangency_dirs
    if hemisphere_witness(u, "closed", tol) is not None:
        raise DegenerateSimplex("tangency directions lie in a closed hemisphere")
    euclid = _tangent_plane_simplex(u, tol)
    xi_table = np.pi - _pairwise_sphere_distances(u)
    np.fill_diagonal(xi_table, np.pi)
    xi = dihedral_angles(-np.cos(xi_table))
    eta = dihedral_angles(gram_of(simplex))
    gap = _off_diagonal(xi.angles - eta.angles)
    if np.min(gap) <= tol.angle_eps:
        raise NumericalFailure("hyperbolic angles not strictly below Euclidean ones",
                               {"min_gap": float(np.min(gap))})
    return M2Result(euclid, xi, eta, ins)


# -- Euclidean simplex from a spherical one ----------------------------------------


@dataclass(frozen=True)
class DualChain:
    """Intermediate data of :func:`m1_euclidean_from_spherical`.

    Vectors after ``dual`` and ``ball`` are expressed in the centered frame,
    where the ball center is the south pole ``(0, ..., 0, -1)``.
    """

    dual: Simplex
    ball: SphericalBall
    support: tuple
    to_south_pole: Isometry
    dual_centered: np.ndarray
    boundary_count: int
    t_hat: float
    extended: np.ndarray
    face: tuple | None = None
    delta: float = 0.0
    perturbed: np.ndarray | None = None
    coefficients: np.ndarray | None = None
    span_basis: np.ndarray | None = None
    barycentric: np.ndarray | None = None

    @property
    def face_dim(self):
        """Number of vertices of the smallest face of the dual containing the center."""
        return None if self.face is None else len(self.face)

    @property
    def dual_distances(self):
        return _pairwise_sphere_distances(self.dual_centered)

    @property
    def equator_residual(self):
        return float(np.max(np.abs(self.extended[list(self.support), -1])))


def extend_dual_to_equator(dual, ball, support=None, tol=DEFAULT_TOL):
    """Push the dual vertices along rays from the ball center until the
    boundary vertices reach the equator.

    With the center ``s`` rotated to the south pole, each vertex moves by
    ``t_hat = pi/2 - r`` along the geodesic from ``s`` through it, so the
    vertices on the ball boundary land on the equator and the others stay
    in the open southern hemisphere. Pairwise distances strictly increase.
    """
    if dual.geometry is not Geometry.SPHERICAL:
        raise InputError("extend_dual_to_equator needs a spherical simplex")
    rot = translate_to_basepoint(ball.center)
    v = dual.vertices @ rot.matrix.T
    s = basepoint(Geometry.SPHERICAL, dual.dim)
    if support is None:
        d_s = np.arccos(np.clip(-v[:, -1], -1.0, 1.0))
        support = tuple(int(i) for i in np.flatnonzero(d_s >= ball.radius - 1e-8))
    t_hat = np.pi / 2 - ball.radius
    if t_hat <= 0:
        raise InputError("ball radius must be below pi/2")
    u = []
    for i, row in enumerate(v):
        try:
            u.append(spherical_ray_extend(s, ModelPoint.spherical(row, normalize=True), t_hat).coords)
        except DegenerateRay:
            raise DegenerateRay(f"dual vertex {i} coincides with the ball center") from None
    u = np.array(u)
    before = _off_diagonal(_pairwise_sphere_distances(v))
    after = _off_diagonal(_pairwise_sphere_distances(u))
    if np.any(after <= before):
        raise NumericalFailure("extension did not increase every pairwise distance",
                               {"min_increase": float(np.min(after - before))})
    return DualChain(
        dual=dual,
        ball=ball,
        support=tuple(support),
        to_south_pole=rot,
        dual_centered=v,
        boundary_count=len(support),
        t_hat=float(t_hat),
        extended=u,
    )


def boundary_perturbation(u, face, delta):
    """Tilt the face vertices away from the others.

    Returns ``(w, b)`` with ``w_i = u_i - delta * sum_{k not in face} u_k``
    for ``i`` in ``face`` (``w_i = u_i`` otherwise) and the positive
    coefficients ``b`` with ``sum_i b_i w_i = 0``: ``b_i = a_i / sum(a)`` on
    the face, where ``sum_face a_i u_i = 0``, and ``b_i = delta`` off it.
    """
    u = np.asarray(u, dtype=float)
    face = list(face)
    rest = [k for k in range(len(u)) if k not in face]
    shift = u[rest].sum(axis=0) if rest else np.zeros(u.shape[1])
    w = u.copy()
    w[face] -= delta * shift
    a = positive_kernel(u[face])
    b = np.full(len(u), float(delta))
    b[face] = a / a.sum()
    return w, b


def _span_basis(vectors, tol):
    """Orthonormal basis (rows) of the span of ``vectors``; requires rank n."""
    _, sv, vt = np.linalg.svd(vectors)
    n = vectors.shape[1] - 1
    if sv[n] > 1e-8 * sv[0] or sv[n - 1] <= tol.eq_zero * sv[0]:
        raise NumericalFailure("extended dual vertices do not span a hyperplane",
                               {"singular_values": sv.tolist()})
    return vt[:n]


def _subsets_independent(rows, tol):
    n = rows.shape[1]
    return all(numerical_rank(rows[list(c)], tol) == n
               for c in itertools.combinations(range(len(rows)), n))


def perturb_off_closed_hemisphere(chain, tol=DEFAULT_TOL):
    """Move the extended vertices so that they lie in no closed hemisphere
    of their span, keeping every pairwise distance above the dual's.

    Nothing moves when the ball center is interior to the dual simplex.
    Otherwise the center lies inside a face with vertex set ``face``; the
    face vertices are tilted by ``delta`` (see :func:`boundary_perturbation`),
    starting from ``eps / (2 (n + 1))`` with
    ``eps = min_ij (d(u_i, u_j) - d(v_i, v_j)) / 2`` and halving until the
    result is verified.
    """
    u = chain.extended
    n = u.shape[1] - 1
    basis = _span_basis(u, tol)
    y = u @ basis.T
    y /= np.linalg.norm(y, axis=1)[:, None]
    dv = chain.dual_distances
    if hemisphere_witness(y, "closed", tol) is None:
        b = positive_kernel(y, tol)
        return replace(chain, perturbed=u.copy(), coefficients=b, delta=0.0, span_basis=basis)

    s = basepoint(Geometry.SPHERICAL, n).coords
    beta = spherical_barycentric(Simplex(Geometry.SPHERICAL, chain.dual_centered), s)
    face = tuple(int(i) for i in np.flatnonzero(beta > 1e-8))
    if len(face) >= n + 1 or len(face) < 2:
        raise NumericalFailure("closed-hemisphere witness found but the ball center "
                               "is not on a proper face of the dual",
                               {"barycentric": beta.tolist()})
    du = _pairwise_sphere_distances(u)
    eps = 0.5 * float(np.min(_off_diagonal(du - dv)))
    delta = eps / (2 * (n + 1))
    failures = {}
    for _ in range(MAX_HALVINGS):
        w_raw, b_raw = boundary_perturbation(u, face, delta)
        w = w_raw / np.linalg.norm(w_raw, axis=1)[:, None]
        yw = w @ basis.T
        off_span = float(np.max(np.abs(w - yw @ basis)))
        yw /= np.linalg.norm(yw, axis=1)[:, None]
        gap = _off_diagonal(_pairwise_sphere_distances(w) - dv)
        ok_indep = _subsets_independent(yw, tol)
        ok_hemi = ok_indep and hemisphere_witness(yw, "closed", tol) is None
        ok_dist = bool(np.min(gap) > tol.angle_eps)
        if ok_indep and ok_hemi and ok_dist and off_span < 1e-10:
            try:
                b = positive_kernel(w, tol)
            except InputError:
                b = None
            if b is not None:
                return replace(chain, face=face, delta=float(delta), perturbed=w,
                               coefficients=b, span_basis=basis, barycentric=beta)
        failures = {"independent": ok_indep, "no_hemisphere": ok_hemi, "distances": ok_dist,
                    "off_span": off_span}
        delta *= 0.5
    raise NumericalFailure("perturbation did not verify after repeated halving",
                           {"face": face, "eps": eps, **failures})


@dataclass(frozen=True)
class M1Result:
    """Unpacks as ``(euclidean, xi, chain)``."""

    euclidean: Simplex
    xi: DihedralAngles
    chain: DualChain = field(repr=False)
    sigma: DihedralAngles = field(repr=False)

    def __iter__(self):
        return iter((self.euclidean, self.xi, self.chain))


def m1_euclidean_from_spherical(simplex, tol=DEFAULT_TOL):
    """Euclidean simplex whose dihedral angles are all strictly smaller than
    those of the spherical ``simplex``.

    Pipeline: dual simplex, smallest enclosing ball of the dual vertices,
    extension to the equator, perturbation off closed hemispheres, and
    finally the Euclidean simplex bounded by the tangent planes at the
    perturbed points inside their n-dimensional span; its angles are
    ``xi_ij = pi - d(w_i, w_j)``.
    """
    if simplex.geometry is not Geometry.SPHERICAL:
        raise InputError("m1_euclidean_from_spherical needs a spherical simplex")
    sigma = dihedral_angles(gram_of(simplex))
    dual = spherical_dual(simplex)
    ball, support = min_enclosing_spherical_ball(dual.points, tol)
    chain = extend_dual_to_equator(dual, ball, support, tol)
    chain = perturb_off_closed_hemisphere(chain, tol)
    y = chain.perturbed @ chain.span_basis.T
    y /= np.linalg.norm(y, axis=1)[:, None]
    euclid = _tangent_plane_simplex(y, tol)
    xi_table = np.pi - _pairwise_sphere_distances(chain.perturbed)
    np.fill_diagonal(xi_table, np.pi)
    xi = dihedral_angles(-np.cos(xi_table))
    gap = _off_diagonal(sigma.angles - xi.angles)
    if np.min(gap) <= tol.angle_eps:
        raise NumericalFailure("Euclidean angles not strictly below spherical ones",
                               {"min_gap": float(np.min(gap))})
    return M1Result(euclid, xi, chain, sigma)

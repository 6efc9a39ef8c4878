"""Small dense linear algebra used throughout the package.

Everything here works on matrices of size at most 8 (simplex dimension
``n <= 7``), so cofactors are computed from minors directly and the
hemisphere feasibility problems are solved by exhaustive enumeration of
active sets instead of a general LP code.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, NumericalFailure, SingularSystem

MAX_DIM = 7
ENV_TOL = "SIMPLEX_ORDER_TOL"


@dataclass(frozen=True)
class TolerancePolicy:
    """Tolerances shared by every numerical decision in the package.

    eq_zero
        Scale-relative threshold for "equal to zero" (determinants,
        ranks, positive definiteness).
    strict_margin
        Minimum value that counts as strictly positive (cofactors,
        hemisphere margins).
    angle_eps
        Angle tolerance in radians used when comparing dihedral angles.
    """

    eq_zero: float = 1e-9
    strict_margin: float = 1e-12
    angle_eps: float = 1e-10

    def __post_init__(self):
        for name in ("eq_zero", "strict_margin", "angle_eps"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise InputError(f"tolerance {name} must be positive, got {value!r}")
        if not self.eq_zero > self.strict_margin:
            raise InputError("eq_zero must exceed strict_margin")

    @classmethod
    def from_env(cls, environ=None, **overrides):
        """Default policy with ``eq_zero`` taken from ``SIMPLEX_ORDER_TOL`` if set."""
        environ = os.environ if environ is None else environ
        raw = environ.get(ENV_TOL)
        kwargs = {}
        if raw is not None and raw.strip():
            try:
                kwargs["eq_zero"] = float(raw)
            except ValueError as exc:
                raise InputError(f"{ENV_TOL} is not a decimal number: {raw!r}") from exc
        kwargs.update(overrides)
        return cls(**kwargs)


DEFAULT_TOL = TolerancePolicy()


def symmetric_matrix(a, tol=DEFAULT_TOL):
    """Validate ``a`` as a real symmetric matrix of size >= 2.

    Returns a read-only float copy, exactly symmetrized. Asymmetry larger
    than ``eq_zero`` times the matrix scale is rejected.
    """
    arr = np.array(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise InputError("matrix size must be at least 2")
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(arr))))
    if np.max(np.abs(arr - arr.T)) > tol.eq_zero * scale:
        raise InputError("matrix is not symmetric")
    arr = 0.5 * (arr + arr.T)
    arr.setflags(write=False)
    return arr


def matrix_scale(a):
    return max(float(np.max(np.abs(a))), np.finfo(float).tiny)


def cofactor_matrix(a):
    """All cofactors ``c_ij = (-1)**(i+j) * det(a with row i, column j removed)``."""
    a = np.asarray(a, dtype=float)
    size = a.shape[0]
    cof = np.empty_like(a)
    idx = np.arange(size)
    # exactly singular minors make LAPACK warn before returning 0
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(size):
            rows = idx != i
            for j in range(size):
                minor = a[np.ix_(rows, idx != j)]
                cof[i, j] = (-1.0) ** (i + j) * np.linalg.det(minor)
    return cof


def min_eigenvalue(a):
    return float(np.linalg.eigvalsh(a)[0])


def is_positive_definite(a, tol=DEFAULT_TOL):
    """Smallest eigenvalue above ``eq_zero`` times the matrix scale."""
    a = np.asarray(a, dtype=float)
    return min_eigenvalue(a) > tol.eq_zero * matrix_scale(a)


@dataclass(frozen=True)
class MatrixDiagnostics:
    det: float
    leading_minor_mins: tuple
    cofactors: np.ndarray = field(repr=False)
    cofactors_all_positive: bool
    principal_block_mins: tuple
    principal_n_blocks_pd: bool

    @property
    def min_cofactor(self):
        return float(np.min(self.cofactors))


def gram_diagnostics(a, tol=DEFAULT_TOL):
    """Determinant, cofactors and principal-block definiteness of ``a``.

    ``principal_block_mins[k]`` is the smallest eigenvalue of ``a`` with row
    and column ``k`` deleted; a block counts as positive definite when that
    value exceeds ``eq_zero * scale``.
    """
    a = symmetric_matrix(a, tol)
    size = a.shape[0]
    cof = cofactor_matrix(a)
    # row expansion keeps det consistent with the cofactors (and exact on
    # small dyadic inputs such as the regular-triangle Gram)
    det = float(np.dot(a[0], cof[0]))
    leading = tuple(min_eigenvalue(a[:k, :k]) for k in range(1, size + 1))
    idx = np.arange(size)
    block_mins = tuple(min_eigenvalue(a[np.ix_(idx != k, idx != k)]) for k in range(size))
    threshold = tol.eq_zero * matrix_scale(a)
    cof.setflags(write=False)
    return MatrixDiagnostics(
        det=det,
        leading_minor_mins=leading,
        cofactors=cof,
        cofactors_all_positive=bool(np.all(cof > tol.strict_margin)),
        principal_block_mins=block_mins,
        principal_n_blocks_pd=all(m > threshold for m in block_mins),
    )


def solve_square(a, b, tol=DEFAULT_TOL):
    """Solve ``a x = b`` for square, well-conditioned ``a``.

    Raises SingularSystem when the reciprocal condition number is below
    ``eq_zero``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise InputError("right-hand side has the wrong length")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise InputError("non-finite entries in linear system")
    sv = np.linalg.svd(a, compute_uv=False)
    if sv[0] == 0 or sv[-1] / sv[0] < tol.eq_zero:
        raise SingularSystem("matrix is singular to tolerance", float(sv[-1]))
    x = np.linalg.solve(a, b)
    resid = np.max(np.abs(a @ x - b)) if b.size else 0.0
    bound = tol.eq_zero * max(float(np.max(np.abs(b))) if b.size else 0.0, np.finfo(float).tiny)
    if resid > bound:
        raise NumericalFailure("residual too large after solve", {"residual": float(resid)})
    return x


def numerical_rank(m, tol=DEFAULT_TOL):
    m = np.atleast_2d(np.asarray(m, dtype=float))
    sv = np.linalg.svd(m, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > tol.eq_zero * sv[0]))


def null_space(m, tol=DEFAULT_TOL):
    """Orthonormal basis (as columns) of the kernel of ``m``."""
    m = np.atleast_2d(np.asarray(m, dtype=float))
    _, sv, vt = np.linalg.svd(m)
    scale = sv[0] if sv.size and sv[0] > 0 else 1.0
    rank = int(np.sum(sv > tol.eq_zero * scale))
    return vt[rank:].T.copy()


def _canonical_sign(v):
    nz = np.flatnonzero(np.abs(v) > 1e-12)
    if nz.size and v[nz[0]] < 0:
        return -v
    return v


# -- hemisphere feasibility ------------------------------------------------


def _as_point_rows(points, tol):
    pts = np.array(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise InputError("point set must be a non-empty list of vectors")
    if pts.shape[1] < 1:
        raise InputError("points must have dimension >= 1")
    if not np.all(np.isfinite(pts)):
        raise InputError("points have non-finite coordinates")
    norms = np.linalg.norm(pts, axis=1)
    if np.max(np.abs(norms - 1.0)) > 1e-8:
        raise InputError("hemisphere_witness expects unit vectors")
    return pts


def min_norm_point(points, tol=DEFAULT_TOL):
    """Point of the convex hull of ``points`` closest to the origin.

    Returns ``(p, weights)`` with ``p = weights @ points``, ``weights >= 0``
    summing to one. Solved exactly by enumerating candidate supports: for
    each affinely independent subset the nearest point of its affine hull
    is computed and kept if it lies in the subset's hull and satisfies the
    optimality condition ``<p, x_j> >= |p|^2`` for every point.
    """
    pts = np.asarray(points, dtype=float)
    count, dim = pts.shape
    slack = 1e-12 * max(1.0, float(np.max(np.abs(pts))) ** 2)
    best = None
    best_violation = np.inf
    for size in range(1, min(count, dim + 1) + 1):
        for subset in itertools.combinations(range(count), size):
            sub = pts[list(subset)]
            kkt = np.zeros((size + 1, size + 1))
            kkt[:size, :size] = sub @ sub.T
            kkt[:size, size] = 1.0
            kkt[size, :size] = 1.0
            rhs = np.zeros(size + 1)
            rhs[size] = 1.0
            try:
                if np.linalg.cond(kkt) > 1e12:
                    continue
                sol = np.linalg.solve(kkt, rhs)
            except np.linalg.LinAlgError:
                continue
            lam = sol[:size]
            p = lam @ sub
            pp = float(p @ p)
            violation = max(0.0, -float(np.min(lam)), float(np.max(pp - pts @ p)))
            if violation <= slack:
                weights = np.zeros(count)
                weights[list(subset)] = np.clip(lam, 0.0, None)
                weights /= weights.sum()
                return weights @ pts, weights
            if violation < best_violation:
                best_violation = violation
                weights = np.zeros(count)
                weights[list(subset)] = np.clip(lam, 0.0, None)
                weights /= weights.sum()
                best = (weights @ pts, weights)
    if best is None or best_violation > 1e-8:
        raise NumericalFailure("min-norm point enumeration found no optimal support",
                               {"violation": float(best_violation)})
    return best


def hemisphere_margin(points, tol=DEFAULT_TOL):
    """``max_{|w| <= 1} min_i <w, x_i>`` and a maximizer (``None`` if the value is 0).

    The value equals the distance from the origin to the convex hull of the
    points; the maximizer is the normalized nearest point.
    """
    pts = _as_point_rows(points, tol)
    p, _ = min_norm_point(pts, tol)
    value = float(np.linalg.norm(p))
    if value <= 0.0:
        return 0.0, None
    return value, p / value


def hemisphere_witness(points, mode="closed", tol=DEFAULT_TOL):
    """Unit ``w`` with every ``<w, x_i>`` nonnegative (closed) or positive (open).

    Open mode returns a witness only when the optimal margin exceeds
    ``strict_margin``. Closed mode accepts inner products down to
    ``-eq_zero``; when no open witness exists it searches the extreme rays
    of the cone ``{w : <w, x_i> >= 0}``, each of which is cut out by
    ``k - 1`` linearly independent active constraints. Returns ``None``
    when no witness exists.
    """
    if mode not in ("open", "closed"):
        raise InputError(f"mode must be 'open' or 'closed', got {mode!r}")
    pts = _as_point_rows(points, tol)
    value, w = hemisphere_margin(pts, tol)
    if w is not None and value > tol.strict_margin:
        return w
    if mode == "open":
        return None

    count, dim = pts.shape
    if numerical_rank(pts, tol) < dim:
        ns = null_space(pts, tol)
        return _canonical_sign(ns[:, 0] / np.linalg.norm(ns[:, 0]))
    if dim == 1:
        for cand in (np.array([1.0]), np.array([-1.0])):
            if np.min(pts @ cand) >= -tol.eq_zero:
                return cand
        return None
    for subset in itertools.combinations(range(count), dim - 1):
        sub = pts[list(subset)]
        if numerical_rank(sub, tol) < dim - 1:
            continue
        ns = null_space(sub, tol)
        if ns.shape[1] != 1:
            continue
        ray = ns[:, 0] / np.linalg.norm(ns[:, 0])
        for cand in (ray, -ray):
            if np.min(pts @ cand) >= -tol.eq_zero:
                return cand
    return None


def positive_kernel(vectors, tol=DEFAULT_TOL):
    """Coefficients ``x > 0`` (summing to 1) with ``sum_i x_i v_i = 0``.

    ``vectors`` are rows. The kernel of the linear map ``x -> x @ vectors``
    must be one-dimensional and of constant sign; otherwise InputError is
    raised (callers usually translate it into a more specific error).
    """
    v = np.asarray(vectors, dtype=float)
    ns = null_space(v.T, tol)
    if ns.shape[1] != 1:
        raise InputError(f"kernel has dimension {ns.shape[1]}, expected 1")
    x = ns[:, 0]
    x = x / x.sum() if abs(x.sum()) > 0 else x
    if not np.all(x > 0):
        raise InputError("kernel vector has mixed signs")
    return x

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from simplexorder.errors import DegenerateSimplex, InputError
from simplexorder.models import Geometry, minkowski_form
from simplexorder.sampling import acceptable, random_simplex
from simplexorder.simplex import (
    DihedralAngles,
    GramClass,
    GramMatrix,
    Order,
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

GEOMETRIES = ("spherical", "euclidean", "hyperbolic")
seeds = st.integers(0, 10_000)
dims = st.integers(2, 5)


def angle_table(size, value):
    a = np.full((size, size), value)
    np.fill_diagonal(a, np.pi)
    return DihedralAngles(a)


def test_degenerate_spherical_triangle():
    with pytest.raises(DegenerateSimplex):
        Simplex("spherical", [[1, 0, 0], [0, 1, 0], [0.6, 0.8, 0]])


@pytest.mark.parametrize("verts", [
    [[0, 0], [1, 0]],                      # too few vertices
    [[0, 0, 0], [1, 0, 0], [0, 1, 0]],     # wrong ambient size
    [[0.0] * 8 for _ in range(9)],          # dimension 8
])
def test_simplex_shape_errors(verts):
    with pytest.raises(InputError):
        Simplex("euclidean", verts)


def test_orthant_gram_is_identity(orthant):
    assert np.allclose(gram_of(orthant).matrix, np.eye(3))
    assert np.allclose(dihedral_angles(gram_of(orthant)).pairs(), np.pi / 2)


def test_equilateral_euclidean_angles():
    tri = Simplex("euclidean", [[0, 0], [1, 0], [0.5, np.sqrt(3) / 2]])
    assert np.allclose(dihedral_angles(gram_of(tri)).pairs(), np.pi / 3)


def test_right_triangle_angles():
    # vertices z1=(0,0), z2=(1,0), z3=(0,1): zeta_ij is the angle at the
    # third vertex, between the facets opposite z_i and z_j
    tri = Simplex("euclidean", [[0, 0], [1, 0], [0, 1]])
    ang = dihedral_angles(gram_of(tri)).angles
    assert ang[0, 1] == pytest.approx(np.pi / 4)   # at z3
    assert ang[0, 2] == pytest.approx(np.pi / 4)   # at z2
    assert ang[1, 2] == pytest.approx(np.pi / 2)   # at z1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GEOMETRIES), dims, seeds)
def test_normals_are_inward_and_orthogonal(geometry, dim, seed):
    x = random_simplex(geometry, dim, seed)
    normals = facet_normals(x)
    form = normals.form()
    vals = normals.normals @ form @ x.vertices.T
    if geometry == "euclidean":
        # facet i is the level set through the other vertices
        vals = vals - vals[:, [(i + 1) % (dim + 1) for i in range(dim + 1)]].diagonal()[:, None]
    off = ~np.eye(dim + 1, dtype=bool)
    assert np.max(np.abs(vals[off])) < 1e-9
    assert np.all(np.diag(vals) > 0)
    assert np.allclose(np.diag(normals.gram()), 1.0)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GEOMETRIES), dims, seeds)
def test_classify_and_realize_roundtrip(geometry, dim, seed):
    x = random_simplex(geometry, dim, seed)
    g = gram_of(x)
    assert classify_gram(g).kind.value == geometry
    y = realize(g)
    assert y.geometry is x.geometry
    assert np.max(np.abs(gram_of(y).matrix - g.matrix)) < 1e-8


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GEOMETRIES), dims, seeds, st.randoms())
def test_relabeling_permutes_gram(geometry, dim, seed, rnd):
    x = random_simplex(geometry, dim, seed)
    perm = list(range(dim + 1))
    rnd.shuffle(perm)
    g = gram_of(x).matrix
    assert np.allclose(gram_of(x.permuted(perm)).matrix, g[np.ix_(perm, perm)], atol=1e-10)


def test_classify_examples(regular_triangle_gram):
    assert classify_gram(np.eye(3)).kind is GramClass.SPHERICAL
    assert classify_gram(regular_triangle_gram).kind is GramClass.EUCLIDEAN
    h = -np.cos(np.pi / 4) * np.ones((3, 3))
    np.fill_diagonal(h, 1.0)
    assert classify_gram(h).kind is GramClass.HYPERBOLIC
    c = classify_gram(np.ones((3, 3)))
    assert c.kind is GramClass.NOT_A_GRAM and c.reason


def test_classify_rejects_positive_det_indefinite():
    # two blocks with eigenvalues (2.5, -0.5): det > 0 but not PD
    block = np.array([[1.0, 1.5], [1.5, 1.0]])
    a = np.block([[block, np.zeros((2, 2))], [np.zeros((2, 2)), block]])
    assert np.linalg.det(a) > 0
    c = classify_gram(a)
    assert c.kind is GramClass.NOT_A_GRAM and "positive definite" in c.reason


def test_gram_matrix_validation():
    with pytest.raises(InputError):
        GramMatrix(np.array([[2.0, 0.0], [0.0, 1.0]]))
    with pytest.raises(InputError):
        GramMatrix(np.array([[1.0, 0.3], [0.2, 1.0]]))


def test_realize_regular_triangle_examples(regular_triangle_gram):
    e = realize(regular_triangle_gram)
    assert e.geometry is Geometry.EUCLIDEAN
    sides = [np.linalg.norm(e.vertices[i] - e.vertices[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
    assert np.allclose(sides, sides[0])
    h = -np.cos(np.pi / 4) * np.ones((3, 3))
    np.fill_diagonal(h, 1.0)
    hs = realize(h)
    j = minkowski_form(3)
    assert np.allclose(np.einsum("ij,jk,ik->i", hs.vertices, j, hs.vertices), -1)
    with pytest.raises(InputError):
        realize(np.ones((3, 3)))


@settings(max_examples=30, deadline=None)
@given(dims, seeds)
def test_dual_distances_are_supplements(dim, seed):
    s = random_simplex("spherical", dim, seed)
    sigma = dihedral_angles(gram_of(s)).angles
    d = spherical_dual(s).vertices
    dist = np.arccos(np.clip(d @ d.T, -1, 1))
    off = ~np.eye(dim + 1, dtype=bool)
    assert np.allclose(dist[off], np.pi - sigma[off], atol=1e-9)


def test_dual_of_orthant(orthant):
    assert np.allclose(spherical_dual(orthant).vertices, -np.eye(3))


def test_barycentric_of_centroid(orthant):
    b = spherical_barycentric(orthant, np.ones(3) / np.sqrt(3))
    assert np.allclose(b, np.ones(3) / 3)


def test_compare_orders():
    a = angle_table(3, 1.0)
    b = angle_table(3, 1.2)
    assert compare(a, b).order is Order.STRICTLY_LESS
    assert compare(b, a).order is Order.STRICTLY_GREATER
    assert compare(a, a).order is Order.EQUAL
    mixed = a.angles.copy()
    mixed[0, 1] = mixed[1, 0] = 1.2
    mixed[0, 2] = mixed[2, 0] = 0.8
    assert compare(a, DihedralAngles(mixed)).order is Order.INCOMPARABLE
    partial = a.angles.copy()
    partial[0, 1] = partial[1, 0] = 1.0 + 1e-6
    rel = compare(a, DihedralAngles(partial), strict_gap=1e-3)
    assert rel.order is Order.LESS_OR_EQUAL_NOT_STRICT
    with pytest.raises(InputError):
        compare(a, angle_table(4, 1.0))


def test_angle_table_validation():
    with pytest.raises(InputError):
        angle_table(3, 0.0)
    with pytest.raises(InputError):
        DihedralAngles(np.array([[np.pi, 1.0], [1.1, np.pi]]))


def test_sampler_is_deterministic_and_filtered():
    for geometry in GEOMETRIES:
        a = random_simplex(geometry, 3, 17)
        b = random_simplex(geometry, 3, 17)
        assert np.array_equal(a.vertices, b.vertices)
        assert acceptable(a)
    with pytest.raises(InputError):
        random_simplex("euclidean", 8, 0)


def test_hyperbolic_example_diagnostics():
    g = np.full((3, 3), -0.6)
    np.fill_diagonal(g, 1.0)
    c = classify_gram(g)
    assert c.kind is GramClass.HYPERBOLIC
    assert np.allclose(np.linalg.eigvalsh(g), [-0.2, 1.6, 1.6])
    cof = c.diagnostics.cofactors
    assert np.allclose(np.diag(cof), 0.64) and np.allclose(cof[0, 1], 0.96)
    tri = realize(g)
    ang = dihedral_angles(gram_of(tri)).pairs()
    assert np.allclose(ang, np.arccos(0.6)) and ang.sum() < np.pi


def test_dual_is_an_involution():
    for seed in range(100):
        s = random_simplex("spherical", 2 + seed % 4, seed)
        back = spherical_dual(spherical_dual(s))
        assert np.max(np.abs(gram_of(back).matrix - gram_of(s).matrix)) < 1e-8

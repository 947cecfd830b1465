import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from truncsm import geometry
from truncsm.geometry import (
    Box,
    ConvexPolytope,
    DimensionMismatchError,
    DisjointUnion,
    Euclidean,
    GeometryError,
    Halfspace,
    L1,
    Mahalanobis,
    MetricBall,
    OutsideDomainError,
    Polygon,
    UnsupportedPairingError,
    WeightSpec,
    bounding_box,
    contains,
    contains_batch,
    distance,
    distance_batch,
    hemi_l1_ball,
    load_halfspaces,
    load_polygon,
    scale_template,
    template_domain,
    unit_square,
)

from conftest import interior_points
from oracles import brute_polygon_distance, brute_polytope_distance

EUCL = WeightSpec(metric=Euclidean())


def random_convex_polytope_3d(seed, n_facets=12):
    """Random bounded polytope: tangent halfspaces of a ball, plus a box."""
    rng = np.random.default_rng(seed)
    hs = []
    for _ in range(n_facets - 6):
        a = rng.standard_normal(3)
        a /= np.linalg.norm(a)
        hs.append(Halfspace(a, -rng.uniform(1.0, 2.0)))
    for k in range(3):
        e = np.zeros(3)
        e[k] = 1.0
        hs.append(Halfspace(e, -2.5))
        hs.append(Halfspace(-e, -2.5))
    return ConvexPolytope(hs)


# ---------------------------------------------------------------------------
# constructors / validation


def test_halfspace_zero_normal_rejected():
    with pytest.raises(GeometryError):
        Halfspace(np.zeros(2), 1.0)


def test_polytope_needs_enough_facets():
    with pytest.raises(GeometryError):
        ConvexPolytope([Halfspace(np.array([1.0, 0.0]), -1.0),
                        Halfspace(np.array([-1.0, 0.0]), 0.0)])


def test_polygon_needs_three_vertices():
    with pytest.raises(GeometryError):
        Polygon([(0, 0), (1, 0)])


def test_polygon_self_intersection_rejected():
    with pytest.raises(GeometryError):
        Polygon([(0, 0), (1, 1), (1, 0), (0, 1)])  # bowtie


def test_polygon_orientation_normalized():
    cw = Polygon([(0, 0), (0, 1), (1, 1), (1, 0)])
    ccw = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert np.allclose(cw.vertices, ccw.vertices[::0 + 1]) or \
        set(map(tuple, cw.vertices)) == set(map(tuple, ccw.vertices))
    # both are CCW: positive signed area
    for poly in (cw, ccw):
        V = poly.vertices
        area2 = np.dot(V[:, 0], np.roll(V[:, 1], -1)) - np.dot(np.roll(V[:, 0], -1), V[:, 1])
        assert area2 > 0


def test_box_ordering_validated():
    with pytest.raises(GeometryError):
        Box([0.0, 1.0], [1.0, 0.5])


def test_mahalanobis_requires_spd():
    with pytest.raises(GeometryError):
        Mahalanobis(np.array([[1.0, 2.0], [2.0, 1.0]]))  # indefinite
    with pytest.raises(GeometryError):
        Mahalanobis(np.array([[1.0, 0.5], [0.4, 1.0]]))  # asymmetric


def test_weight_spec_cap_constant_exclusive():
    with pytest.raises(GeometryError):
        WeightSpec(cap=1.0, constant=True)
    with pytest.raises(GeometryError):
        WeightSpec(cap=-1.0)


def test_metric_ball_radius_positive():
    with pytest.raises(GeometryError):
        MetricBall(Euclidean(), 0.0, dim=2)


# ---------------------------------------------------------------------------
# membership


def test_contains_unit_square_center(square):
    assert contains(square, np.array([0.5, 0.5])) is True


def test_contains_unit_square_boundary_open(square):
    assert contains(square, np.array([1.0, 0.5])) is False


def test_contains_triangle_outside_hypotenuse():
    tri = Polygon([(0, 0), (1, 0), (0, 1)])
    assert contains(tri, np.array([0.9, 0.9])) is False
    assert contains(tri, np.array([0.2, 0.2])) is True


def test_contains_polygon_vertex_excluded():
    tri = Polygon([(0, 0), (1, 0), (0, 1)])
    assert contains(tri, np.array([0.0, 0.0])) is False
    assert contains(tri, np.array([0.5, 0.0])) is False  # on an edge


def test_contains_dimension_mismatch(square):
    with pytest.raises(DimensionMismatchError):
        contains(square, np.array([0.5, 0.5, 0.5]))


def test_contains_batch_matches_scalar(polygon_preset, rng):
    X = rng.uniform(-4, 4, size=(200, 2))
    batch = contains_batch(polygon_preset, X)
    single = np.array([contains(polygon_preset, x) for x in X])
    assert np.array_equal(batch, single)


def test_nonconvex_polygon_notch_membership(polygon_preset):
    # the notch cut into the top edge is outside
    assert not contains(polygon_preset, np.array([0.0, 2.9]))
    assert contains(polygon_preset, np.array([0.0, 0.0]))


# ---------------------------------------------------------------------------
# distance: pinned examples


def test_distance_unit_square_example(square):
    g, grad = distance(square, EUCL, np.array([0.1, 0.4]))
    assert g == pytest.approx(0.1, abs=1e-12)
    assert np.allclose(grad, [1.0, 0.0])


def test_distance_triangle_tie():
    tri = Polygon([(0, 0), (1, 0), (0, 1)])
    g, grad = distance(tri, EUCL, np.array([0.25, 0.25]))
    assert g == pytest.approx(0.25, abs=1e-12)
    # nearest is either the bottom or left edge; gradient points away from it
    assert np.allclose(grad, [0.0, 1.0]) or np.allclose(grad, [1.0, 0.0])


def test_distance_cap_saturated(square):
    # underlying g0 = 0.3 at x=(0.3, 0.5)... use x=(0.3, 0.4): g0=0.3
    spec = WeightSpec(metric=Euclidean(), cap=4.0)
    g, grad = distance(square, spec, np.array([0.3, 0.4]))
    assert g == 1.0
    assert np.all(grad == 0.0)


def test_distance_cap_unsaturated(square):
    spec = WeightSpec(metric=Euclidean(), cap=2.0)
    g, grad = distance(square, spec, np.array([0.1, 0.4]))
    assert g == pytest.approx(0.2, abs=1e-12)
    assert np.allclose(grad, [2.0, 0.0])


def test_distance_mahalanobis_identity_ball():
    ball = MetricBall(Mahalanobis(np.eye(2)), 1.0)
    g, grad = distance(ball, EUCL, np.array([0.3, 0.0]))
    assert g == pytest.approx(0.7, abs=1e-10)
    assert np.allclose(grad, [-1.0, 0.0], atol=1e-9)


def test_distance_outside_raises(square):
    with pytest.raises(OutsideDomainError):
        distance(square, EUCL, np.array([1.5, 0.5]))


def test_distance_constant_weight(square, rng):
    X = interior_points(square, 3)
    table = distance_batch(square, WeightSpec(constant=True), X)
    assert np.all(table.g == 1.0)
    assert np.all(table.dg == 0.0)
    assert table.eval_count == 1


def test_distance_batch_unit_gradients(square):
    X = interior_points(square, 3)
    table = distance_batch(square, EUCL, X)
    norms = np.linalg.norm(table.dg, axis=1)
    assert np.allclose(norms, 1.0, atol=1e-9)
    assert table.g.shape == X.shape and table.dg.shape == X.shape


def test_l1_unsupported_on_metric_ball():
    ball = MetricBall(Euclidean(), 1.0, dim=2)
    with pytest.raises(UnsupportedPairingError):
        distance_batch(ball, WeightSpec(metric=L1()), np.zeros((1, 2)))


def test_l1_distance_box():
    box = Box([0.0, 0.0], [1.0, 2.0])
    g, grad = distance(box, WeightSpec(metric=L1()), np.array([0.25, 1.0]))
    # nearest facet under l1 point-to-hyperplane distance is x=0
    assert g == pytest.approx(0.25, abs=1e-12)
    assert np.allclose(grad, [1.0, 0.0])


def test_mahalanobis_weight_on_square():
    # Mahalanobis with sigma = (1/4) I doubles all distances
    sq = unit_square()
    m = Mahalanobis(0.25 * np.eye(2))
    g, grad = distance(sq, WeightSpec(metric=m), np.array([0.1, 0.4]))
    assert g == pytest.approx(0.2, abs=1e-10)
    # chain rule: gradient magnitude is 2 along x
    assert np.allclose(grad, [2.0, 0.0], atol=1e-9)


# ---------------------------------------------------------------------------
# distance: brute-force oracles


def test_polygon_distance_vs_brute_oracle(polygon_preset):
    X = interior_points(polygon_preset, 25, seed=3)
    table = distance_batch(polygon_preset, EUCL, X)
    for x, g in zip(X, table.g[:, 0]):
        ref = brute_polygon_distance(polygon_preset.vertices, x, n_samples=120_000)
        assert abs(g - ref) < 1e-3


def test_polytope_distance_vs_brute_oracle():
    poly = random_convex_polytope_3d(7)
    X = interior_points(poly, 10, seed=11)
    table = distance_batch(poly, EUCL, X)
    rng = np.random.default_rng(5)
    ref = brute_polytope_distance(poly.A, poly.b, X, rng, n_per_facet=20_000)
    assert np.all(np.abs(table.g[:, 0] - ref) < 1e-3)


def test_ellipsoid_distance_vs_brute_oracle():
    Sigma = np.array([[1.0, -0.6], [-0.6, 1.0]])
    ball = MetricBall(Mahalanobis(Sigma), 1.0)
    X = interior_points(ball, 20, seed=2)
    table = distance_batch(ball, EUCL, X)
    # oracle: dense sampling of the ellipse boundary
    t = np.linspace(0, 2 * np.pi, 200_000, endpoint=False)
    L = np.linalg.cholesky(Sigma)
    boundary = (L @ np.vstack([np.cos(t), np.sin(t)])).T
    for x, g in zip(X, table.g[:, 0]):
        ref = np.linalg.norm(boundary - x, axis=1).min()
        assert abs(g - ref) < 1e-3


def test_distance_gradient_vs_fd(polygon_preset):
    from oracles import fd_gradient

    X = interior_points(polygon_preset, 10, seed=9)
    table = distance_batch(polygon_preset, EUCL, X)
    for x, grad in zip(X, table.dg):
        fd = fd_gradient(lambda z: distance(polygon_preset, EUCL, z)[0], x)
        if np.linalg.norm(fd - grad) > 1e-5:
            # near the medial axis FD straddles the kink; skip those points
            continue
        assert np.allclose(grad, fd, atol=1e-5)


# ---------------------------------------------------------------------------
# hypothesis properties


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_property_nonneg_lipschitz_unit_grad(seed):
    rng = np.random.default_rng(seed)
    sq = unit_square()
    X = rng.uniform(1e-6, 1 - 1e-6, size=(2, 2))
    table = distance_batch(sq, EUCL, X)
    g = table.g[:, 0]
    assert np.all(g >= 0.0)
    assert abs(g[0] - g[1]) <= np.linalg.norm(X[0] - X[1]) + 1e-12
    assert np.allclose(np.linalg.norm(table.dg, axis=1), 1.0, atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_property_boundary_approach(seed):
    rng = np.random.default_rng(seed)
    eps = rng.uniform(1e-6, 1e-3)
    sq = unit_square()
    x = np.array([eps, rng.uniform(0.2, 0.8)])
    g, _ = distance(sq, EUCL, x)
    assert g <= eps + 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_property_concavity_convex_domain(seed):
    rng = np.random.default_rng(seed)
    poly = random_convex_polytope_3d(17)
    X = interior_points(poly, 2, seed=seed)
    x, y = X
    gm, _ = distance(poly, EUCL, 0.5 * (x + y))
    gx, _ = distance(poly, EUCL, x)
    gy, _ = distance(poly, EUCL, y)
    assert gm >= 0.5 * (gx + gy) - 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000),
       st.floats(min_value=0.05, max_value=50.0))
def test_property_cap_consistency(seed, c):
    rng = np.random.default_rng(seed)
    sq = unit_square()
    X = rng.uniform(1e-6, 1 - 1e-6, size=(5, 2))
    raw = distance_batch(sq, EUCL, X)
    capped = distance_batch(sq, WeightSpec(metric=Euclidean(), cap=c), X)
    expect = np.minimum(1.0, c * raw.g)
    assert np.array_equal(capped.g, expect)  # bit-identical composition
    saturated = c * raw.g[:, 0] >= 1.0
    assert np.all(capped.dg[saturated] == 0.0)
    assert np.allclose(np.linalg.norm(capped.dg[~saturated], axis=1), c, atol=1e-9)


# ---------------------------------------------------------------------------
# bounding boxes, templates, file formats


def test_bounding_box_polygon_vertices():
    tri = Polygon([(0, 0), (1, 0), (0, 1)])
    box = bounding_box(tri)
    assert np.allclose(box.lower, [0, 0]) and np.allclose(box.upper, [1, 1])


def test_bounding_box_box_identity():
    b = Box([0.0, -1.0], [2.0, 3.0])
    out = bounding_box(b)
    assert np.allclose(out.lower, b.lower) and np.allclose(out.upper, b.upper)


def test_bounding_box_unit_ball():
    ball = MetricBall(Euclidean(), 1.0, dim=3)
    box = bounding_box(ball)
    assert np.allclose(box.lower, -1.0) and np.allclose(box.upper, 1.0)


def test_bounding_box_polytope_lp(square):
    box = bounding_box(square)
    assert np.allclose(box.lower, [0, 0], atol=1e-9)
    assert np.allclose(box.upper, [1, 1], atol=1e-9)


def test_bounding_box_unbounded_raises():
    hs = [Halfspace(np.array([1.0, 0.0]), -1.0),
          Halfspace(np.array([0.0, 1.0]), -1.0),
          Halfspace(np.array([0.0, -1.0]), 0.0)]
    with pytest.raises(GeometryError):
        bounding_box(ConvexPolytope(hs))


def test_square_template_b1():
    [verts] = scale_template("square", 1.0)
    assert set(map(tuple, verts)) == {(-1, -1), (-1, 1), (1, 1), (1, -1)}


def test_disjoint_template_first_rect():
    rect1, _ = scale_template("disjoint", 0.5)
    assert set(map(tuple, rect1)) == {(0.5, 0), (0.5, 0.5), (1.5, 0.5), (1.5, 0)}


def test_square_template_linearity():
    [v1] = scale_template("square", 1.3)
    [v2] = scale_template("square", 2.6)
    assert np.allclose(2 * np.abs(v1), np.abs(v2))


def test_template_domain_disjoint_distance():
    dom = template_domain("disjoint", 1.0)
    assert isinstance(dom, DisjointUnion)
    x = np.array([1.0, 0.25])  # inside the first rectangle
    g, grad = distance(dom, EUCL, x)
    assert g == pytest.approx(0.25, abs=1e-12)
    assert np.allclose(np.linalg.norm(grad), 1.0)


def test_load_polygon_roundtrip(tmp_path):
    p = tmp_path / "poly.txt"
    p.write_text("0,0\n1,0\n0,1\n")
    poly = load_polygon(p)
    assert poly.vertices.shape == (3, 2)


def test_load_halfspaces(tmp_path):
    p = tmp_path / "hs.txt"
    p.write_text("-1,0,0\n1,0,-1\n0,-1,0\n0,1,-1\n")
    poly = load_halfspaces(p)
    assert contains(poly, np.array([0.5, 0.5]))


def test_hemi_l1_ball_membership_and_facets():
    for d in (2, 3, 4):
        dom = hemi_l1_ball(d)
        assert len(dom.halfspaces) == 2 ** (d - 1) + 1
        x = np.zeros(d)
        x[-1] = 0.5
        assert contains(dom, x)
        assert not contains(dom, -x)
        assert not contains(dom, np.full(d, 0.6))
    with pytest.raises(GeometryError):
        hemi_l1_ball(13)


def test_weight_table_scaled():
    t = geometry.WeightTable(g=np.ones((2, 2)), dg=np.full((2, 2), 0.5))
    s = t.scaled(2.0)
    assert np.all(s.g == 2.0) and np.all(s.dg == 1.0)
    assert s.eval_count == t.eval_count

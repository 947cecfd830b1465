"""Truncation domains, membership tests and boundary-distance weight functions.

A domain V is an open bounded region of R^d.  The weight used by the
estimator is g0(x) = min_{z on the boundary} d(x, z) for a chosen metric,
optionally capped at 1 via g_c = min(1, c * g0).  Every domain object is
immutable after construction; distance evaluation is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import cholesky, eigh
from scipy.optimize import brentq, linprog


class GeometryError(ValueError):
    pass


class DimensionMismatchError(GeometryError):
    pass


class OutsideDomainError(GeometryError):
    pass


class UnsupportedPairingError(GeometryError):
    """Raised for metric/domain pairings with no exact algorithm."""


class UnboundedDomainError(GeometryError):
    pass


# ---------------------------------------------------------------------------
# metrics


@dataclass(frozen=True)
class Euclidean:
    pass


class Mahalanobis:
    """Metric d(x, y) = sqrt((x-y)^T sigma^{-1} (x-y)), sigma SPD."""

    def __init__(self, sigma):
        sigma = np.asarray(sigma, dtype=float)
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
            raise GeometryError("sigma must be a square matrix")
        if not np.allclose(sigma, sigma.T):
            raise GeometryError("sigma must be symmetric")
        try:
            # upper-triangular factor of sigma^{-1}; also validates SPD
            inv = np.linalg.inv(sigma)
            inv = 0.5 * (inv + inv.T)
            self._L = cholesky(inv, lower=False)
        except np.linalg.LinAlgError as exc:
            raise GeometryError("sigma must be positive definite") from exc
        self.sigma = sigma
        self.sigma.setflags(write=False)

    @property
    def transform(self):
        """Matrix L with L^T L = sigma^{-1}; d(x,y) = ||L(x-y)||."""
        return self._L


@dataclass(frozen=True)
class L1:
    pass


# ---------------------------------------------------------------------------
# domains


@dataclass(frozen=True)
class Halfspace:
    """Region <a, x> + b < 0."""

    a: np.ndarray
    b: float

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if np.linalg.norm(a) == 0.0:
            raise GeometryError("halfspace normal must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", float(self.b))


class ConvexPolytope:
    """Intersection of open halfspaces {x : A x + b < 0}."""

    def __init__(self, halfspaces: Sequence[Halfspace]):
        if not halfspaces:
            raise GeometryError("polytope needs at least one halfspace")
        self.halfspaces = tuple(halfspaces)
        self.A = np.array([h.a for h in halfspaces], dtype=float)
        self.b = np.array([h.b for h in halfspaces], dtype=float)
        self.dim = self.A.shape[1]
        if len(halfspaces) < self.dim + 1:
            raise GeometryError("bounded polytope needs at least d+1 facets")
        self.A.setflags(write=False)
        self.b.setflags(write=False)


class Polygon:
    """Simple closed polygon in the plane, normalized counterclockwise."""

    def __init__(self, vertices):
        V = np.asarray(vertices, dtype=float)
        if V.ndim != 2 or V.shape[1] != 2 or V.shape[0] < 3:
            raise GeometryError("polygon needs >= 3 two-dimensional vertices")
        area2 = _signed_area2(V)
        if area2 == 0.0:
            raise GeometryError("degenerate polygon")
        if area2 < 0.0:
            V = V[::-1].copy()
        _check_simple(V)
        self.vertices = V
        self.vertices.setflags(write=False)
        self.dim = 2


class Box:
    """Open axis-aligned box (lower, upper) componentwise."""

    def __init__(self, lower, upper):
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        if lower.shape != upper.shape or lower.ndim != 1:
            raise GeometryError("lower/upper must be vectors of equal length")
        if not np.all(lower < upper):
            raise GeometryError("box needs lower < upper componentwise")
        self.lower = lower
        self.upper = upper
        self.lower.setflags(write=False)
        self.upper.setflags(write=False)
        self.dim = lower.size


class MetricBall:
    """Open metric ball {x : ||x||_metric < radius}, optionally intersected
    with coordinate positivity constraints x_k > 0."""

    def __init__(self, metric, radius, positive_axes: Sequence[int] = (), dim: Optional[int] = None):
        if radius <= 0:
            raise GeometryError("radius must be positive")
        if isinstance(metric, Mahalanobis):
            dim = metric.sigma.shape[0]
        elif dim is None:
            raise GeometryError("dim required for Euclidean/L1 balls")
        self.metric = metric
        self.radius = float(radius)
        self.positive_axes = tuple(int(k) for k in positive_axes)
        self.dim = int(dim)


class DisjointUnion:
    """Union of pairwise-disjoint component domains (e.g. two rectangles)."""

    def __init__(self, components):
        if not components:
            raise GeometryError("union needs at least one component")
        dims = {c.dim for c in components}
        if len(dims) != 1:
            raise GeometryError("components must share a dimension")
        self.components = tuple(components)
        self.dim = dims.pop()


@dataclass(frozen=True)
class WeightSpec:
    """How to turn boundary distance into the per-coordinate weight.

    cap=c gives g = min(1, c*g0); constant=True gives g == 1 (naive SM).
    """

    metric: object = field(default_factory=Euclidean)
    cap: Optional[float] = None
    constant: bool = False

    def __post_init__(self):
        if self.cap is not None and self.constant:
            raise GeometryError("cap and constant are mutually exclusive")
        if self.cap is not None and self.cap <= 0:
            raise GeometryError("cap must be positive")


@dataclass
class WeightTable:
    """Precomputed per-sample weights g_k(x_i) and partials d_k g_k(x_i)."""

    g: np.ndarray   # (n, d)
    dg: np.ndarray  # (n, d)
    eval_count: int = 1

    def scaled(self, alpha: float) -> "WeightTable":
        return WeightTable(g=alpha * self.g, dg=alpha * self.dg,
                           eval_count=self.eval_count)


# ---------------------------------------------------------------------------
# polygon helpers


def _signed_area2(V):
    x, y = V[:, 0], V[:, 1]
    return float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _segments_intersect(p1, p2, q1, q2):
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return int(np.sign(v))

    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    return o1 != o2 and o3 != o4


def _check_simple(V):
    T = len(V)
    for i in range(T):
        p1, p2 = V[i], V[(i + 1) % T]
        for j in range(i + 1, T):
            if j == i or (j + 1) % T == i or (i + 1) % T == j:
                continue
            q1, q2 = V[j], V[(j + 1) % T]
            if _segments_intersect(p1, p2, q1, q2):
                raise GeometryError("polygon is self-intersecting")


# ---------------------------------------------------------------------------
# membership


def contains(domain, x) -> bool:
    x = np.asarray(x, dtype=float)
    if x.shape != (domain.dim,):
        raise DimensionMismatchError(
            f"point of dim {x.shape} vs domain dim {domain.dim}")
    return bool(contains_batch(domain, x[None, :])[0])


def contains_batch(domain, X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != domain.dim:
        raise DimensionMismatchError("points must be (n, d) matching domain")
    if isinstance(domain, ConvexPolytope):
        return np.all(X @ domain.A.T + domain.b < 0.0, axis=1)
    if isinstance(domain, Box):
        return np.all((X > domain.lower) & (X < domain.upper), axis=1)
    if isinstance(domain, Polygon):
        return _polygon_contains_batch(domain.vertices, X)
    if isinstance(domain, MetricBall):
        nrm = _metric_norm(domain.metric, X)
        inside = nrm < domain.radius
        for k in domain.positive_axes:
            inside &= X[:, k] > 0.0
        return inside
    if isinstance(domain, DisjointUnion):
        inside = np.zeros(len(X), dtype=bool)
        for comp in domain.components:
            inside |= contains_batch(comp, X)
        return inside
    raise GeometryError(f"unknown domain type {type(domain).__name__}")


def _metric_norm(metric, X):
    if isinstance(metric, Euclidean):
        return np.linalg.norm(X, axis=1)
    if isinstance(metric, Mahalanobis):
        return np.linalg.norm(X @ metric.transform.T, axis=1)
    if isinstance(metric, L1):
        return np.abs(X).sum(axis=1)
    raise GeometryError(f"unknown metric {type(metric).__name__}")


def _polygon_contains_batch(V, X):
    T = len(V)
    x, y = X[:, 0], X[:, 1]
    inside = np.zeros(len(X), dtype=bool)
    on_boundary = np.zeros(len(X), dtype=bool)
    j = T - 1
    for i in range(T):
        px, py = V[i]
        qx, qy = V[j]
        # exact on-segment test: open domain excludes the boundary
        cross = (qx - px) * (y - py) - (qy - py) * (x - px)
        dot = (x - px) * (qx - px) + (y - py) * (qy - py)
        seg2 = (qx - px) ** 2 + (qy - py) ** 2
        on_boundary |= (cross == 0.0) & (dot >= 0.0) & (dot <= seg2)
        crosses = ((py > y) != (qy > y))
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = (qx - px) * (y - py) / (qy - py) + px
        flip = crosses & (x < xint)
        inside ^= flip
        j = i
    return inside & ~on_boundary


# ---------------------------------------------------------------------------
# Euclidean boundary distance per domain (points assumed inside)


def _euclid_polytope(A, b, X):
    norms = np.linalg.norm(A, axis=1)
    resid = -(X @ A.T + b) / norms  # positive inside
    jstar = np.argmin(resid, axis=1)
    g = resid[np.arange(len(X)), jstar]
    grad = -A[jstar] / norms[jstar, None]
    return g, grad


def _euclid_polygon(V, X):
    P1 = V
    P2 = np.roll(V, -1, axis=0)
    edge = P1 - P2                       # (T, 2)
    len2 = (edge ** 2).sum(axis=1)       # (T,)
    diff = X[:, None, :] - P2[None, :, :]  # (n, T, 2)
    alpha = np.einsum("ntk,tk->nt", diff, edge) / len2
    alpha = np.clip(alpha, 0.0, 1.0)
    proj = alpha[:, :, None] * P1[None, :, :] + (1.0 - alpha)[:, :, None] * P2[None, :, :]
    dvec = X[:, None, :] - proj
    dist = np.linalg.norm(dvec, axis=2)
    tstar = np.argmin(dist, axis=1)
    idx = np.arange(len(X))
    g = dist[idx, tstar]
    n = dvec[idx, tstar]
    with np.errstate(invalid="ignore", divide="ignore"):
        grad = np.where(g[:, None] > 0.0, n / np.where(g[:, None] > 0, g[:, None], 1.0), 0.0)
    return g, grad


def _euclid_box(lower, upper, X):
    d = lower.size
    cand = np.concatenate([X - lower, upper - X], axis=1)  # (n, 2d)
    jstar = np.argmin(cand, axis=1)
    g = cand[np.arange(len(X)), jstar]
    grad = np.zeros_like(X)
    lower_side = jstar < d
    axis = np.where(lower_side, jstar, jstar - d)
    grad[np.arange(len(X)), axis] = np.where(lower_side, 1.0, -1.0)
    return g, grad


def _euclid_sphere(radius, X):
    nrm = np.linalg.norm(X, axis=1)
    g = radius - nrm
    grad = np.zeros_like(X)
    ok = nrm > 0.0
    grad[ok] = -X[ok] / nrm[ok, None]
    grad[~ok, 0] = -1.0  # center: any unit direction is a valid selection
    return g, grad


def _euclid_ellipsoid(M, radius, X):
    """Euclidean distance from interior points to {z : z^T M z = radius^2}.

    Solved per point by root finding on the Lagrange condition
    F(lam) = sum_i w_i y_i^2 / (1 + lam w_i)^2 = radius^2 in eigenbasis.
    """
    M = 0.5 * (M + M.T)
    w, Q = eigh(M)
    Y = X @ Q
    r2 = radius ** 2
    g = np.empty(len(X))
    grad = np.empty_like(X)
    for i in range(len(X)):
        y = Y[i]
        active = np.abs(y) > 1e-14
        if not np.any(active):
            # center of the ellipsoid: nearest point along the shortest axis
            jmax = int(np.argmax(w))
            g[i] = radius / math.sqrt(w[jmax])
            grad[i] = -Q[:, jmax]
            continue
        wa, ya = w[active], y[active]

        def F(lam):
            with np.errstate(divide="ignore", over="ignore"):
                return float(np.sum(wa * ya ** 2 / (1.0 + lam * wa) ** 2) - r2)

        # root lies in (lo, 0]; step away from the pole at lo until F is finite
        lo = -1.0 / wa.max()
        a = lo
        off = abs(lo) * 1e-18
        while True:
            a = lo + off
            fa = F(a)
            if math.isfinite(fa):
                break
            off *= 10.0
        if fa <= 0.0:
            lam = a
        else:
            lam = brentq(F, a, 0.0, xtol=1e-14, rtol=1e-15)
        z = y / (1.0 + lam * w)
        zx = Q @ z
        dvec = X[i] - zx
        dist = np.linalg.norm(dvec)
        g[i] = dist
        grad[i] = dvec / dist if dist > 0 else 0.0
    return g, grad


def _euclid_metric_ball(ball: MetricBall, X):
    if isinstance(ball.metric, Euclidean):
        g, grad = _euclid_sphere(ball.radius, X)
    elif isinstance(ball.metric, Mahalanobis):
        L = ball.metric.transform
        g, grad = _euclid_ellipsoid(L.T @ L, ball.radius, X)
    else:
        raise UnsupportedPairingError(
            "Euclidean distance to an L1 ball boundary is not implemented; "
            "represent the domain as a ConvexPolytope instead")
    for k in ball.positive_axes:
        closer = X[:, k] < g
        g = np.where(closer, X[:, k], g)
        ek = np.zeros(X.shape[1])
        ek[k] = 1.0
        grad = np.where(closer[:, None], ek[None, :], grad)
    return g, grad


def _euclid_distance_batch(domain, X):
    if isinstance(domain, ConvexPolytope):
        return _euclid_polytope(domain.A, domain.b, X)
    if isinstance(domain, Box):
        return _euclid_box(domain.lower, domain.upper, X)
    if isinstance(domain, Polygon):
        return _euclid_polygon(domain.vertices, X)
    if isinstance(domain, MetricBall):
        return _euclid_metric_ball(domain, X)
    if isinstance(domain, DisjointUnion):
        g = np.full(len(X), np.inf)
        grad = np.zeros_like(X)
        for comp in domain.components:
            mask = contains_batch(comp, X)
            if np.any(mask):
                gc, gr = _euclid_distance_batch(comp, X[mask])
                g[mask] = gc
                grad[mask] = gr
        return g, grad
    raise GeometryError(f"unknown domain type {type(domain).__name__}")


# ---------------------------------------------------------------------------
# metric dispatch


def _box_to_polytope(box: Box) -> ConvexPolytope:
    d = box.dim
    hs = []
    for k in range(d):
        a = np.zeros(d)
        a[k] = -1.0
        hs.append(Halfspace(a, box.lower[k]))       # -x_k + l_k < 0
        a2 = np.zeros(d)
        a2[k] = 1.0
        hs.append(Halfspace(a2, -box.upper[k]))     # x_k - u_k < 0
    return ConvexPolytope(hs)


def _transform_domain(domain, L):
    """Image of the domain under y = L x (L invertible)."""
    Linv = np.linalg.inv(L)
    if isinstance(domain, Box):
        domain = _box_to_polytope(domain)
    if isinstance(domain, ConvexPolytope):
        A = domain.A @ Linv
        return ConvexPolytope([Halfspace(A[j], domain.b[j]) for j in range(len(A))])
    if isinstance(domain, Polygon):
        return Polygon(domain.vertices @ L.T)
    if isinstance(domain, MetricBall):
        if domain.positive_axes:
            raise UnsupportedPairingError(
                "Mahalanobis weight on a positivity-constrained ball is not implemented")
        if isinstance(domain.metric, Euclidean):
            S = np.eye(domain.dim)
        elif isinstance(domain.metric, Mahalanobis):
            S = domain.metric.sigma
        else:
            raise UnsupportedPairingError("cannot transform an L1 ball")
        return MetricBall(Mahalanobis(L @ S @ L.T), domain.radius)
    if isinstance(domain, DisjointUnion):
        return DisjointUnion([_transform_domain(c, L) for c in domain.components])
    raise GeometryError(f"unknown domain type {type(domain).__name__}")


def _l1_distance_batch(domain, X):
    if isinstance(domain, Box):
        domain = _box_to_polytope(domain)
    if not isinstance(domain, ConvexPolytope):
        raise UnsupportedPairingError(
            "L1 metric distance is implemented for Box and ConvexPolytope only")
    norms = np.abs(domain.A).max(axis=1)  # dual norm of l1 is l-infinity
    resid = -(X @ domain.A.T + domain.b) / norms
    jstar = np.argmin(resid, axis=1)
    g = resid[np.arange(len(X)), jstar]
    grad = -domain.A[jstar] / norms[jstar, None]
    return g, grad


def _raw_distance_batch(domain, metric, X):
    if isinstance(metric, Euclidean):
        return _euclid_distance_batch(domain, X)
    if isinstance(metric, L1):
        return _l1_distance_batch(domain, X)
    if isinstance(metric, Mahalanobis):
        L = metric.transform
        dom_y = _transform_domain(domain, L)
        gy, grad_y = _euclid_distance_batch(dom_y, X @ L.T)
        return gy, grad_y @ L
    raise GeometryError(f"unknown metric {type(metric).__name__}")


def distance_batch(domain, weight: WeightSpec, X) -> WeightTable:
    """Weights and per-coordinate partials for every point, evaluated once.

    The scalar weight g(x) is broadcast to every coordinate k (g_k = g) and
    dg holds the gradient of g, so dg[:, k] = d_k g_k.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != domain.dim:
        raise DimensionMismatchError("points must be (n, d) matching domain")
    n, d = X.shape
    inside = contains_batch(domain, X)
    if not np.all(inside):
        bad = int(np.argmin(inside))
        raise OutsideDomainError(f"point {bad} is outside the domain")
    if weight.constant:
        return WeightTable(g=np.ones((n, d)), dg=np.zeros((n, d)), eval_count=1)
    g, grad = _raw_distance_batch(domain, weight.metric, X)
    if weight.cap is not None:
        c = weight.cap
        capped = c * g >= 1.0  # the kink itself takes the capped (zero-grad) branch
        g = np.where(capped, 1.0, c * g)
        grad = np.where(capped[:, None], 0.0, c * grad)
    return WeightTable(g=np.repeat(g[:, None], d, axis=1), dg=grad.copy(), eval_count=1)


def distance(domain, weight: WeightSpec, x):
    """Weight value and its gradient at a single interior point."""
    x = np.asarray(x, dtype=float)
    if x.shape != (domain.dim,):
        raise DimensionMismatchError(
            f"point of dim {x.shape} vs domain dim {domain.dim}")
    table = distance_batch(domain, weight, x[None, :])
    return float(table.g[0, 0]), table.dg[0]


# ---------------------------------------------------------------------------
# bounding boxes


def bounding_box(domain) -> Box:
    if isinstance(domain, Box):
        return Box(domain.lower.copy(), domain.upper.copy())
    if isinstance(domain, Polygon):
        V = domain.vertices
        return Box(V.min(axis=0), V.max(axis=0))
    if isinstance(domain, MetricBall):
        r = domain.radius
        if isinstance(domain.metric, Euclidean):
            half = np.full(domain.dim, r)
        elif isinstance(domain.metric, Mahalanobis):
            half = r * np.sqrt(np.diag(domain.metric.sigma))
        elif isinstance(domain.metric, L1):
            half = np.full(domain.dim, r)
        else:
            raise GeometryError("unknown metric")
        lower, upper = -half, half.copy()
        lower = lower.copy()
        for k in domain.positive_axes:
            lower[k] = 0.0
        return Box(lower, upper)
    if isinstance(domain, ConvexPolytope):
        return _polytope_bbox(domain)
    if isinstance(domain, DisjointUnion):
        boxes = [bounding_box(c) for c in domain.components]
        lower = np.min([b.lower for b in boxes], axis=0)
        upper = np.max([b.upper for b in boxes], axis=0)
        return Box(lower, upper)
    raise GeometryError(f"unknown domain type {type(domain).__name__}")


def _polytope_bbox(poly: ConvexPolytope) -> Box:
    d = poly.dim
    lower = np.empty(d)
    upper = np.empty(d)
    for k in range(d):
        c = np.zeros(d)
        c[k] = 1.0
        for sign, out in ((1.0, lower), (-1.0, upper)):
            res = linprog(sign * c, A_ub=poly.A, b_ub=-poly.b,
                          bounds=[(None, None)] * d, method="highs")
            if res.status == 3:
                raise UnboundedDomainError("polytope is unbounded")
            if not res.success:
                raise GeometryError(f"bounding-box LP failed: {res.message}")
            out[k] = sign * res.fun
    return Box(lower, upper)


# ---------------------------------------------------------------------------
# vertex templates for the boundary-scaling experiments


def scale_template(name: str, b: float):
    """Vertex sets for the scalable truncation regions.

    "square": one square with corners at +-b.
    "disjoint": two rectangles that stay separated by a fixed middle gap.
    Returns a list of vertex arrays (one per component).
    """
    if b <= 0:
        raise GeometryError("scale factor b must be positive")
    if name == "square":
        return [np.array([(-b, -b), (-b, b), (b, b), (b, -b)], dtype=float)]
    if name == "disjoint":
        rect1 = np.array([(1 - b, 0.5 - b), (1 - b, 0.5), (1 + b, 0.5), (1 + b, 0.5 - b)],
                         dtype=float)
        rect2 = np.array([(1 - b, 1.5), (1 - b, 1.5 + b), (1 + b, 1.5 + b), (1 + b, 1.5)],
                         dtype=float)
        return [rect1, rect2]
    raise GeometryError(f"unknown template {name!r}")


def template_domain(name: str, b: float):
    parts = [Polygon(v) for v in scale_template(name, b)]
    if len(parts) == 1:
        return parts[0]
    return DisjointUnion(parts)


# ---------------------------------------------------------------------------
# file formats: one vertex or halfspace per line


def load_polygon(path) -> Polygon:
    verts = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [float(p) for p in line.split(",")]
            if len(parts) != 2:
                raise GeometryError(f"polygon line needs 'x,y': {line!r}")
            verts.append(parts)
    return Polygon(np.array(verts))


def load_halfspaces(path) -> ConvexPolytope:
    hs = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [float(p) for p in line.split(",")]
            if len(parts) < 2:
                raise GeometryError(f"halfspace line needs 'a_1,..,a_d,b': {line!r}")
            hs.append(Halfspace(np.array(parts[:-1]), parts[-1]))
    return ConvexPolytope(hs)


def unit_square() -> ConvexPolytope:
    return ConvexPolytope([
        Halfspace(np.array([-1.0, 0.0]), 0.0),
        Halfspace(np.array([1.0, 0.0]), -1.0),
        Halfspace(np.array([0.0, -1.0]), 0.0),
        Halfspace(np.array([0.0, 1.0]), -1.0),
    ])


def hemi_l1_ball(d: int) -> ConvexPolytope:
    """{x : ||x||_1 < 1, x_d > 0} as a polytope with 2^(d-1)+1 facets."""
    if d > 12:
        raise GeometryError("facet count 2^(d-1)+1 is only accepted up to d=12")
    hs = []
    for bits in range(2 ** (d - 1)):
        s = np.ones(d)
        for i in range(d - 1):
            if bits >> i & 1:
                s[i] = -1.0
        hs.append(Halfspace(s, -1.0))  # <s, x> < 1
    a = np.zeros(d)
    a[d - 1] = -1.0
    hs.append(Halfspace(a, 0.0))       # x_d > 0
    return ConvexPolytope(hs)

"""Vertex-represented convex polytopes in R^n and the operations on them.

A :class:`Polytope` is stored as a list of *summands*: point arrays whose
Minkowski sum is the body.  A plain polytope has a single summand; Minkowski
sums and linear images stay exact without ever forming the (possibly huge)
vertex set of the sum.  The canonical vertex list is materialized on first
access to :attr:`Polytope.vertices` and cached.

Covectors are identified with vectors through the Euclidean inner product,
so the adjoint of a linear map is its transpose.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import ConvexHull, cKDTree
from scipy.spatial import QhullError

from .errors import DegenerateHull, DimensionError, EmptyBody, NumericalError

REL_TOL = 1e-9


def scale_of(*bodies) -> float:
    """``max(1, diameter)`` over the given bodies; used to scale tolerances."""
    return max([1.0] + [float(b.diameter) for b in bodies])


def _as_directions(xi, n):
    xi = np.asarray(xi, dtype=float)
    single = xi.ndim == 1
    xi = np.atleast_2d(xi)
    if xi.shape[1] != n:
        raise DimensionError(f"direction has dimension {xi.shape[1]}, body has {n}")
    return xi, single


# ---------------------------------------------------------------------------
# complex structure and linear maps


@dataclass(frozen=True)
class ComplexStructure:
    """Real matrix ``J`` with ``J @ J == -I``: multiplication by ``i``."""

    J: np.ndarray

    def __post_init__(self):
        J = np.array(self.J, dtype=float)
        n = J.shape[0]
        if J.shape != (n, n) or n % 2:
            raise DimensionError("complex structure needs an even square matrix")
        if not np.allclose(J @ J, -np.eye(n), rtol=0, atol=1e-12):
            raise ValueError("J @ J must equal -I")
        if not np.allclose(J.T @ J, np.eye(n), rtol=0, atol=1e-12):
            raise ValueError("J must be orthogonal")
        J.setflags(write=False)
        object.__setattr__(self, "J", J)

    @classmethod
    def standard(cls, n: int) -> "ComplexStructure":
        """Block-diagonal ``[[0,-1],[1,0]]``; coordinates ``(x1, y1, ..., xm, ym)``."""
        if n % 2:
            raise DimensionError(f"complex structure needs even dimension, got {n}")
        J = np.zeros((n, n))
        for k in range(0, n, 2):
            J[k + 1, k] = 1.0
            J[k, k + 1] = -1.0
        return cls(J)

    @property
    def dim(self) -> int:
        return self.J.shape[0]

    def scalar_matrix(self, alpha: complex) -> np.ndarray:
        """Real matrix of multiplication by the complex scalar ``alpha``."""
        alpha = complex(alpha)
        return alpha.real * np.eye(self.dim) + alpha.imag * self.J

    def pairing(self, xi, x) -> complex:
        """Complex-linear pairing with ``Re pairing(xi, x) == <xi, x>``."""
        xi = np.asarray(xi, dtype=float)
        x = np.asarray(x, dtype=float)
        # imaginary part <xi, -Jx> makes pairing(xi, Jx) == i * pairing(xi, x)
        return complex(xi @ x, -(xi @ (self.J @ x)))


def complex_to_real(A) -> np.ndarray:
    """Realify a complex ``m x m`` matrix in interleaved coordinates."""
    A = np.asarray(A, dtype=complex)
    m = A.shape[0]
    M = np.zeros((2 * m, 2 * m))
    M[0::2, 0::2] = A.real
    M[0::2, 1::2] = -A.imag
    M[1::2, 0::2] = A.imag
    M[1::2, 1::2] = A.real
    return M


def real_to_complex(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    return M[0::2, 0::2] + 1j * M[1::2, 0::2]


def vector_to_complex(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[0::2] + 1j * x[1::2]


def complex_to_vector(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    x = np.empty(2 * z.shape[0])
    x[0::2] = z.real
    x[1::2] = z.imag
    return x


@dataclass(frozen=True)
class LinearMap:
    """Real ``n x n`` matrix acting on R^n, optionally complex-linear."""

    M: np.ndarray
    structure: ComplexStructure | None = None

    def __post_init__(self):
        M = np.array(self.M, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionError("linear map must be a square matrix")
        M.setflags(write=False)
        object.__setattr__(self, "M", M)
        if self.structure is not None and self.structure.dim != M.shape[0]:
            raise DimensionError("structure and matrix dimensions differ")

    @classmethod
    def from_complex(cls, A) -> "LinearMap":
        M = complex_to_real(A)
        return cls(M, ComplexStructure.standard(M.shape[0]))

    @property
    def dim(self) -> int:
        return self.M.shape[0]

    @property
    def is_complex_linear(self) -> bool:
        if self.structure is None:
            return False
        J = self.structure.J
        return bool(np.allclose(self.M @ J, J @ self.M, rtol=0, atol=1e-10))

    @property
    def complex_det_modulus(self) -> float:
        """``|det_C|``, which is ``sqrt(det_R)`` for complex-linear maps."""
        d = float(np.linalg.det(self.M))
        return math.sqrt(max(d, 0.0))

    @property
    def is_special(self) -> bool:
        return self.is_complex_linear and abs(self.complex_det_modulus - 1.0) <= 1e-10

    @property
    def adjoint(self) -> np.ndarray:
        return self.M.T

    def inverse(self) -> "LinearMap":
        return LinearMap(np.linalg.inv(self.M), self.structure)


# ---------------------------------------------------------------------------
# hulls


def _dedupe(points: np.ndarray, tol: float) -> np.ndarray:
    if len(points) < 2 or tol <= 0:
        return points
    tree = cKDTree(points)
    pairs = tree.query_pairs(tol, output_type="ndarray")
    if len(pairs) == 0:
        return points
    keep = np.ones(len(points), dtype=bool)
    # drop the later index of each close pair, unless it was itself dropped first
    for i, j in pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]:
        if keep[i]:
            keep[j] = False
    return points[keep]


def _diameter(points: np.ndarray) -> float:
    if len(points) < 2:
        return 0.0
    if len(points) > 2000:
        # exact diameter is attained between hull vertices
        try:
            points = points[ConvexHull(points).vertices]
        except (QhullError, ValueError):
            pass
    d = 0.0
    for k in range(0, len(points), 512):
        block = points[k : k + 512]
        dist = np.sqrt(((block[:, None, :] - points[None, :, :]) ** 2).sum(-1))
        d = max(d, float(dist.max()))
    return d


def affine_frame(points, tol=REL_TOL):
    """Return ``(origin, basis, rank)`` for the affine hull of ``points``.

    ``basis`` has orthonormal rows spanning the affine hull's direction space.
    """
    points = np.asarray(points, dtype=float)
    origin = points.mean(axis=0)
    if len(points) < 2:
        return origin, np.zeros((0, points.shape[1])), 0
    _, s, vt = np.linalg.svd(points - origin, full_matrices=False)
    diam = _diameter(points)
    # RMS spread along each principal axis compared against the diameter
    spread = s / math.sqrt(len(points))
    rank = int(np.sum(spread > tol * max(diam, 1e-300)))
    return origin, vt[:rank], rank


def extreme_points(points, tol=REL_TOL) -> np.ndarray:
    """Extreme points of ``conv(points)``, lexicographically sorted."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or len(points) == 0:
        raise EmptyBody("no points")
    diam = _diameter(points)
    points = _dedupe(points, tol * diam)
    if len(points) == 1:
        return points.copy()
    origin, basis, rank = affine_frame(points, tol)
    if rank == 0:
        ext = points[:1]
    elif rank == 1:
        t = (points - origin) @ basis[0]
        ext = points[[int(np.argmin(t)), int(np.argmax(t))]]
    else:
        coords = (points - origin) @ basis.T
        try:
            idx = ConvexHull(coords).vertices
        except QhullError as exc:  # pragma: no cover - qhull precision failure
            raise NumericalError(f"hull failed: {exc}") from exc
        ext = points[np.sort(idx)]
    return _lexsorted(ext, diam)


def _lexsorted(points: np.ndarray, diam: float) -> np.ndarray:
    # quantize so coordinates that agree up to noise do not flip the order
    q = max(diam, 1.0) * 1e-9
    keys = np.round(points / q)
    order = np.lexsort(keys.T[::-1])
    return points[order]


@dataclass(frozen=True)
class Facet:
    normal: np.ndarray
    offset: float
    measure: float
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class HullResult:
    """Facets of a full-dimensional hull plus its volume.

    ``vertices`` indexes the extreme points inside ``points``; facet vertex
    indices refer to ``points`` as well.
    """

    points: np.ndarray
    vertices: np.ndarray
    facets: list[Facet]
    volume: float

    @property
    def normals(self) -> np.ndarray:
        return np.array([f.normal for f in self.facets])

    @property
    def offsets(self) -> np.ndarray:
        return np.array([f.offset for f in self.facets])

    @property
    def measures(self) -> np.ndarray:
        return np.array([f.measure for f in self.facets])


def simplex_measure(vertices) -> float:
    """k-dimensional volume of the simplex spanned by ``k+1`` vertices."""
    vertices = np.asarray(vertices, dtype=float)
    edges = vertices[1:] - vertices[0]
    k = len(edges)
    gram = edges @ edges.T
    det = float(np.linalg.det(gram)) if k else 1.0
    return math.sqrt(max(det, 0.0)) / math.factorial(k)


def convex_hull(points) -> HullResult:
    """Facet enumeration and volume of a full-dimensional point set.

    Raises :class:`DegenerateHull` (with the affine rank) if the points do
    not span R^n.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or len(points) == 0:
        raise EmptyBody("no points")
    n = points.shape[1]
    _, _, rank = affine_frame(points)
    if rank < n:
        raise DegenerateHull(f"points span an affine subspace of dimension {rank} < {n}", rank)
    try:
        hull = ConvexHull(points)
    except QhullError as exc:
        raise DegenerateHull(f"qhull rejected the input: {exc}", rank) from exc
    diam = _diameter(points[hull.vertices])
    center = points[hull.vertices].mean(axis=0)

    eqs = hull.equations
    normals, offsets = eqs[:, :n], -eqs[:, n]
    measures = np.array([simplex_measure(points[s]) for s in hull.simplices])
    # simplices of one facet share a hyperplane; group on a 1e-8 grid
    keys = np.round(np.column_stack([normals, offsets / max(diam, 1.0)]) * 1e8).astype(np.int64)
    _, labels = np.unique(keys, axis=0, return_inverse=True)
    labels = labels.reshape(-1)

    facets = []
    for g in range(labels.max() + 1):
        rows = np.flatnonzero(labels == g)
        u = normals[rows[0]]
        verts = np.unique(hull.simplices[rows])
        meas = float(measures[rows].sum())
        b = float(offsets[rows].mean())
        facets.append(Facet(u.copy(), b, meas, tuple(int(i) for i in verts)))
    # fan decomposition of the triangulated boundary from an interior point
    cones = points[hull.simplices] - center
    volume = float(np.abs(np.linalg.det(cones)).sum()) / math.factorial(n)
    return HullResult(points, np.sort(hull.vertices), facets, volume)


# ---------------------------------------------------------------------------
# polytopes


class Polytope:
    """Convex polytope given as a Minkowski sum of finite point sets.

    Construct with :meth:`from_points` for an ordinary vertex description.
    Instances are immutable.
    """

    def __init__(self, summands):
        summands = [np.array(s, dtype=float, ndmin=2) for s in summands]
        if not summands or any(s.size == 0 for s in summands):
            raise EmptyBody("polytope needs at least one point")
        n = summands[0].shape[1]
        if any(s.shape[1] != n for s in summands):
            raise DimensionError("summands live in different dimensions")
        if not all(np.isfinite(s).all() for s in summands):
            raise ValueError("non-finite coordinates")
        for s in summands:
            s.setflags(write=False)
        self._summands = tuple(summands)

    @classmethod
    def from_points(cls, points) -> "Polytope":
        return cls([points])

    @classmethod
    def point(cls, x) -> "Polytope":
        return cls([np.asarray(x, dtype=float)[None, :]])

    @property
    def summands(self) -> tuple[np.ndarray, ...]:
        return self._summands

    @property
    def dim(self) -> int:
        return self._summands[0].shape[1]

    def support(self, xi):
        """``max_{x in K} <xi, x>`` for one direction or an ``(N, n)`` batch."""
        xi, single = _as_directions(xi, self.dim)
        h = np.zeros(len(xi))
        for s in self._summands:
            h += (s @ xi.T).max(axis=0)
        return float(h[0]) if single else h

    def support_point(self, xi) -> np.ndarray:
        """A point of K attaining the support value in direction ``xi``."""
        xi = np.asarray(xi, dtype=float)
        return sum(s[int(np.argmax(s @ xi))] for s in self._summands)

    @cached_property
    def vertices(self) -> np.ndarray:
        if len(self._summands) == 1:
            v = extreme_points(self._summands[0])
        else:
            # fold the summands in one at a time, pruning to extreme points
            order = sorted(self._summands, key=len)
            v = extreme_points(order[0])
            for s in order[1:]:
                pts = (v[:, None, :] + extreme_points(s)[None, :, :]).reshape(-1, self.dim)
                v = extreme_points(pts)
        v.setflags(write=False)
        return v

    @cached_property
    def diameter(self) -> float:
        if len(self._summands) == 1:
            return _diameter(self._summands[0])
        if self.__dict__.get("vertices") is not None:
            return _diameter(self.vertices)
        # width is maximal along the diameter direction; sample widths
        dirs = _direction_sample(self.dim, 256)
        return float((self.support(dirs) + self.support(-dirs)).max())

    @property
    def canonical(self) -> "Polytope":
        return Polytope.from_points(self.vertices)

    def hull(self) -> HullResult:
        return convex_hull(self.vertices)

    @cached_property
    def volume(self) -> float:
        try:
            return self.hull().volume
        except DegenerateHull:
            return 0.0

    @cached_property
    def affine_rank(self) -> int:
        return affine_frame(self.vertices)[2]

    def equals(self, other: "Polytope", tol: float | None = None) -> bool:
        """Canonical vertex lists agree within ``tol`` (default ``1e-9*scale``)."""
        if self.dim != other.dim:
            return False
        if tol is None:
            tol = REL_TOL * scale_of(self, other)
        a, b = self.vertices, other.vertices
        if len(a) != len(b):
            return False
        if np.abs(a - b).max() <= tol:
            return True
        # ordering can differ when coordinates straddle a quantization step
        da, _ = cKDTree(b).query(a)
        db, _ = cKDTree(a).query(b)
        return bool(da.max() <= tol and db.max() <= tol)

    def __repr__(self):
        if len(self._summands) == 1:
            return f"Polytope(dim={self.dim}, points={len(self._summands[0])})"
        return f"Polytope(dim={self.dim}, summands={len(self._summands)})"


def _direction_sample(n: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(12345 + n)
    d = rng.standard_normal((count, n))
    d = np.vstack([np.eye(n), -np.eye(n), d])
    return d / np.linalg.norm(d, axis=1, keepdims=True)


def random_directions(n: int, count: int, rng) -> np.ndarray:
    d = rng.standard_normal((count, n))
    return d / np.linalg.norm(d, axis=1, keepdims=True)


class SupportEvaluator:
    """Body known only through its support function.

    ``func`` maps an ``(N, n)`` array of unit directions to ``N`` values; the
    evaluator extends it 1-homogeneously by normalizing its input.
    """

    def __init__(self, func, dim: int, label: str = ""):
        self._func = func
        self.dim = dim
        self.label = label

    def support(self, xi):
        xi, single = _as_directions(xi, self.dim)
        norms = np.linalg.norm(xi, axis=1)
        out = np.zeros(len(xi))
        nz = norms > 0
        if nz.any():
            out[nz] = norms[nz] * np.asarray(self._func(xi[nz] / norms[nz, None]), dtype=float)
        return float(out[0]) if single else out

    @cached_property
    def diameter(self) -> float:
        dirs = _direction_sample(self.dim, 256)
        return float(max(0.0, (self.support(dirs) + self.support(-dirs)).max()))

    def materialize(self, count: int = 500, seed: int = 0) -> Polytope:
        """Approximate the body by the touching points of sampled halfspaces.

        Each sampled direction contributes the point where its supporting
        hyperplane meets the neighbouring ones, estimated by a central
        difference of the (differentiable almost everywhere) support function.
        """
        rng = np.random.default_rng(seed)
        dirs = random_directions(self.dim, count, rng)
        eps = 1e-6
        pts = np.empty_like(dirs)
        h0 = self.support(dirs)
        grads = np.zeros_like(dirs)
        for k in range(self.dim):
            e = np.zeros(self.dim)
            e[k] = eps
            grads[:, k] = (self.support(dirs + e) - self.support(dirs - e)) / (2 * eps)
        # the gradient of h at xi is the touching point; keep the value exact
        pts = grads + (h0 - (grads * dirs).sum(1))[:, None] * dirs
        return Polytope.from_points(extreme_points(pts))

    def __repr__(self):
        return f"SupportEvaluator(dim={self.dim}, {self.label})"


# ---------------------------------------------------------------------------
# operations


def _check_dim(a, b):
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def support(K: Polytope, xi):
    return K.support(xi)


def minkowski_sum(K: Polytope, L: Polytope) -> Polytope:
    _check_dim(K, L)
    return Polytope(K.summands + L.summands)


def scale(t: float, K: Polytope) -> Polytope:
    return Polytope([t * s for s in K.summands])


def translate(K: Polytope, x) -> Polytope:
    x = np.asarray(x, dtype=float)
    if x.shape != (K.dim,):
        raise DimensionError(f"dimension mismatch: {K.dim} vs {x.shape}")
    first, *rest = K.summands
    return Polytope([first + x, *rest])


def reflect(K: Polytope) -> Polytope:
    return Polytope([-s for s in K.summands])


def apply_linear(g, K: Polytope) -> Polytope:
    M = g.M if isinstance(g, LinearMap) else np.asarray(g, dtype=float)
    if M.shape != (K.dim, K.dim):
        raise DimensionError(f"dimension mismatch: map {M.shape}, body {K.dim}")
    return Polytope([s @ M.T for s in K.summands])


def complex_scale(alpha: complex, K: Polytope, J: ComplexStructure | None = None) -> Polytope:
    """``alpha K`` for a complex scalar acting through ``J``."""
    if J is None:
        J = ComplexStructure.standard(K.dim)
    _check_dim(K, J)
    return apply_linear(J.scalar_matrix(alpha), K)


def segment(a, b) -> Polytope:
    return Polytope.from_points(np.array([a, b], dtype=float))


def cube(n: int) -> Polytope:
    grid = np.array(np.meshgrid(*[[0.0, 1.0]] * n, indexing="ij")).reshape(n, -1).T
    return Polytope.from_points(grid)


def simplex(n: int) -> Polytope:
    return Polytope.from_points(np.vstack([np.zeros(n), np.eye(n)]))


# ---------------------------------------------------------------------------
# nearest point and Hausdorff distance


def nearest_point(vertices, p, scale: float = 1.0, max_iter: int = 10_000):
    """Closest point of ``conv(vertices)`` to ``p``; returns ``(point, distance)``.

    Fully corrective Frank-Wolfe (Wolfe's minimum-norm-point method): each
    major step adds the vertex returned by the linear minimization oracle,
    then minor steps re-solve exactly over the active vertices, dropping
    those whose weight would turn negative.  Terminates once the
    Frank-Wolfe gap is at most ``1e-10 * scale`` times the distance.
    """
    P = np.asarray(vertices, dtype=float) - np.asarray(p, dtype=float)
    tol = 1e-10 * scale
    k0 = int(np.argmin((P * P).sum(1)))
    S = [k0]
    lam = np.ones(1)
    x = P[k0].copy()
    for _ in range(max_iter):
        dist = math.sqrt(float(x @ x))
        if dist <= 1e-12 * scale:
            break
        scores = P @ x
        j = int(np.argmin(scores))
        gap = float(x @ x - scores[j])
        if gap <= tol * max(dist, tol) or j in S:
            break
        S.append(j)
        lam = np.append(lam, 0.0)
        for _minor in range(len(P) + 1):
            Q = P[S]
            k = len(S)
            # affine minimizer of |sum a_i q_i| subject to sum a_i = 1
            M = np.zeros((k + 1, k + 1))
            M[:k, :k] = Q @ Q.T
            M[:k, k] = M[k, :k] = 1.0
            rhs = np.zeros(k + 1)
            rhs[k] = 1.0
            alpha = np.linalg.lstsq(M, rhs, rcond=None)[0][:k]
            if (alpha > 1e-14).all():
                lam = alpha
                break
            # walk from lam toward alpha until the first weight hits zero
            neg = alpha <= 1e-14
            theta = float(np.min(lam[neg] / (lam[neg] - alpha[neg]))) if neg.any() else 1.0
            lam = lam + theta * (alpha - lam)
            keep = lam > 1e-14
            S = [s for s, kk in zip(S, keep) if kk]
            lam = lam[keep] / lam[keep].sum()
        x = lam @ P[S]
    else:
        raise NumericalError(f"nearest-point iteration did not converge in {max_iter} steps")
    return x + np.asarray(p, dtype=float), math.sqrt(float(x @ x))


def point_distance(p, K: Polytope, scale: float | None = None) -> float:
    if scale is None:
        scale = scale_of(K)
    return nearest_point(K.vertices, p, scale)[1]


def hausdorff_distance(K: Polytope, L: Polytope) -> float:
    _check_dim(K, L)
    sc = scale_of(K, L)
    VK, VL = K.vertices, L.vertices
    d = 0.0
    for v in VK:
        d = max(d, nearest_point(VL, v, sc)[1])
    for v in VL:
        d = max(d, nearest_point(VK, v, sc)[1])
    return d


def support_distance(A, B, directions) -> float:
    """``max |h_A - h_B|`` over the given unit directions.

    A lower bound for the Hausdorff distance that needs only support queries.
    """
    directions = np.asarray(directions, dtype=float)
    return float(np.abs(A.support(directions) - B.support(directions)).max())

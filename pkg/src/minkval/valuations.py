"""Minkowski valuations on C^m = R^{2m}: difference bodies, complex
difference and projection bodies, and the two operators special to m = 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull

from .errors import DegenerateHull, DimensionError, UnsupportedDimension
from .geom import (
    ComplexStructure,
    Polytope,
    SupportEvaluator,
    affine_frame,
    convex_hull,
    minkowski_sum,
    reflect,
    scale,
)
from .planar import AreaMeasureS1, Polygon, area_measure, minkowski_reconstruct

KINDS = ("Difference", "ComplexDifference", "ComplexProjection", "Det2Contra", "Det2Cova")
KIND_ALIASES = {
    "D": "Difference",
    "DC": "ComplexDifference",
    "PiC": "ComplexProjection",
    "PIC": "ComplexProjection",
    "det2contra": "Det2Contra",
    "det2cova": "Det2Cova",
}


def _measure_of(C) -> AreaMeasureS1:
    if isinstance(C, AreaMeasureS1):
        return C
    return area_measure(C)


def _polygon_of(C) -> Polygon:
    if isinstance(C, Polygon):
        return C
    return minkowski_reconstruct(C)


def _structure(K, J):
    if J is None:
        return ComplexStructure.standard(K.dim)
    if J.dim != K.dim:
        raise DimensionError(f"dimension mismatch: structure {J.dim}, body {K.dim}")
    return J


def difference_body(K: Polytope) -> Polytope:
    """``K + (-K)``."""
    return minkowski_sum(K, reflect(K))


def complex_difference_body(C, K: Polytope, J: ComplexStructure | None = None) -> Polytope:
    """Sum of the rotated copies ``w_i * (alpha_i K)`` over the atoms of ``S(C, .)``.

    ``C`` may be a :class:`Polygon` or directly its area measure.
    """
    J = _structure(K, J)
    mu = _measure_of(C)
    if len(mu) == 0:
        return Polytope.point(np.zeros(K.dim))
    summands = []
    for theta, w in zip(mu.angles, mu.weights):
        A = w * J.scalar_matrix(complex(math.cos(theta), math.sin(theta)))
        summands.extend(s @ A.T for s in K.summands)
    return Polytope(summands)


# ---------------------------------------------------------------------------
# mixed volumes


@dataclass(frozen=True)
class FacetData:
    """Unit normals and (n-1)-measures of the facets of a body.

    For a body lying in a hyperplane the two sides of the hyperplane count
    as facets, each with the body's (n-1)-volume; lower-dimensional bodies
    have no facets.
    """

    normals: np.ndarray
    measures: np.ndarray
    dim: int


def facet_data(K: Polytope) -> FacetData:
    n = K.dim
    try:
        hull = convex_hull(K.vertices)
        return FacetData(hull.normals, hull.measures, n)
    except DegenerateHull as exc:
        if exc.rank < n - 1:
            return FacetData(np.zeros((0, n)), np.zeros(0), n)
    origin, basis, _ = affine_frame(K.vertices)
    coords = (K.vertices - origin) @ basis.T
    if n - 1 == 1:
        area = float(np.ptp(coords[:, 0]))
    else:
        area = float(ConvexHull(coords).volume)
    # the normal is the orthogonal complement of the hyperplane's basis
    _, _, vt = np.linalg.svd(basis)
    u = vt[-1]
    return FacetData(np.array([u, -u]), np.array([area, area]), n)


def _support_batch(L, dirs):
    if callable(L) and not hasattr(L, "support"):
        return np.asarray(L(dirs), dtype=float)
    return np.asarray(L.support(dirs), dtype=float)


def mixed_volume_top(K, L) -> float:
    """``V(K[n-1], L) = (1/n) sum_F h(L, u_F) |F|`` over the facets of ``K``.

    ``K`` is a :class:`Polytope` or precomputed :class:`FacetData`; ``L`` is
    anything with a ``support`` method (or a callable on direction arrays).
    """
    fd = K if isinstance(K, FacetData) else facet_data(K)
    if len(fd.measures) == 0:
        return 0.0
    return float(_support_batch(L, fd.normals) @ fd.measures) / fd.dim


def mixed_volume_polyfit(K: Polytope, L: Polytope) -> float:
    """Same quantity from the polynomial ``vol(K + tL)`` fitted at ``t = 0..n``."""
    n = K.dim
    ts = np.arange(n + 1, dtype=float)
    vols = np.array([minkowski_sum(K, scale(t, L)).canonical.volume if t else K.volume for t in ts])
    coeffs = np.linalg.solve(np.vander(ts, increasing=True), vols)
    return float(coeffs[1]) / n


def line_image(C: Polygon, w, J: ComplexStructure) -> Polytope:
    """``Cw = {(re c) w + (im c) Jw : c in C}``, a polygon in ``span{w, Jw}``."""
    w = np.asarray(w, dtype=float)
    Jw = J.J @ w
    return Polytope.from_points(np.outer(C.vertices[:, 0], w) + np.outer(C.vertices[:, 1], Jw))


def _line_support(Cverts, W, JW, normals):
    # h(Cw, u) = max_c re(c) <w,u> + im(c) <Jw,u>, for every (w, u) pair
    a = W @ normals.T
    b = JW @ normals.T
    vals = Cverts[:, 0][:, None, None] * a[None] + Cverts[:, 1][:, None, None] * b[None]
    return vals.max(axis=0)


def complex_projection_body(C, K: Polytope, J: ComplexStructure | None = None) -> SupportEvaluator:
    """Evaluator ``w -> V(K[2m-1], Cw)``."""
    J = _structure(K, J)
    C = _polygon_of(C)
    fd = facet_data(K)
    Cverts = C.vertices
    n = K.dim

    def h(W):
        if len(fd.measures) == 0:
            return np.zeros(len(W))
        return _line_support(Cverts, W, W @ J.J.T, fd.normals) @ fd.measures / n

    return SupportEvaluator(h, n, "complex projection body")


def _require_m2(K):
    if K.dim != 4:
        raise UnsupportedDimension(f"operator is defined for m = 2 (R^4), got R^{K.dim}")


def complex_det(k, w):
    """``det(k, w) = k1 w2 - k2 w1`` in the standard basis of C^2."""
    k = np.asarray(k, dtype=float)
    w = np.asarray(w, dtype=float)
    k1 = k[..., 0] + 1j * k[..., 1]
    k2 = k[..., 2] + 1j * k[..., 3]
    w1 = w[..., 0] + 1j * w[..., 1]
    w2 = w[..., 2] + 1j * w[..., 3]
    return k1 * w2 - k2 * w1


def det_covector_to_vector(xi) -> np.ndarray:
    """Inverse of ``u -> det(u, .)`` under the Euclidean pairing.

    ``det(u, x)`` has real part ``<xi, x>`` for ``xi = (-conj u2, conj u1)``,
    so ``u = (conj xi2, -conj xi1)``.
    """
    xi = np.asarray(xi, dtype=float)
    out = np.empty_like(xi)
    out[..., 0] = xi[..., 2]
    out[..., 1] = -xi[..., 3]
    out[..., 2] = -xi[..., 0]
    out[..., 3] = xi[..., 1]
    return out


def det2_contravariant(C, K: Polytope) -> SupportEvaluator:
    """Evaluator ``w -> sum_i w_i h(det(K, w), alpha_i)`` (m = 2)."""
    _require_m2(K)
    mu = _measure_of(C)
    alphas = mu.directions

    def h(W):
        out = np.zeros(len(W))
        if len(mu) == 0:
            return out
        for s in K.summands:
            z = complex_det(s[:, None, :], W[None, :, :])  # (points, N)
            proj = z.real[..., None] * alphas[:, 0] + z.imag[..., None] * alphas[:, 1]
            out += proj.max(axis=0) @ mu.weights
        return out

    return SupportEvaluator(h, 4, "det2 contravariant")


def det2_covariant(C, K: Polytope) -> SupportEvaluator:
    """Evaluator ``xi -> V(K, K, K, C w)`` with ``w`` the vector dual to ``xi`` under det."""
    _require_m2(K)
    C = _polygon_of(C)
    J = ComplexStructure.standard(4)
    fd = facet_data(K)
    Cverts = C.vertices

    def h(X):
        if len(fd.measures) == 0:
            return np.zeros(len(X))
        W = det_covector_to_vector(X)
        return _line_support(Cverts, W, W @ J.J.T, fd.normals) @ fd.measures / 4

    return SupportEvaluator(h, 4, "det2 covariant")


# ---------------------------------------------------------------------------
# operator descriptors


@dataclass(frozen=True, eq=False)
class ValuationOperator:
    """One of the classified operators together with its parameter body ``C``."""

    kind: str
    C: Polygon | AreaMeasureS1 | None = None
    m: int = 3

    def __post_init__(self):
        kind = KIND_ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind != "Difference" and self.C is None:
            raise ValueError(f"{kind} needs a parameter body C")
        if kind.startswith("Det2") and self.m != 2:
            raise UnsupportedDimension(f"{kind} requires m = 2, got m = {self.m}")
        if kind == "ComplexProjection" and self.m < 2:
            raise UnsupportedDimension("complex projection body requires m >= 2")

    @property
    def dim(self) -> int:
        return 2 * self.m

    @property
    def contravariant(self) -> bool:
        return self.kind in ("ComplexProjection", "Det2Contra")

    @property
    def degree(self) -> int:
        return {"ComplexProjection": 2 * self.m - 1, "Det2Cova": 3}.get(self.kind, 1)

    @property
    def exact(self) -> bool:
        """Whether the output is a polytope rather than a support evaluator."""
        return self.kind in ("Difference", "ComplexDifference")

    @property
    def lipschitz(self) -> float:
        if self.kind == "Difference":
            return 2.0
        if self.kind == "ComplexDifference":
            return _measure_of(self.C).mass
        return math.inf

    def __call__(self, K: Polytope):
        if K.dim != self.dim:
            raise DimensionError(f"dimension mismatch: operator acts on R^{self.dim}, body is in R^{K.dim}")
        if self.kind == "Difference":
            return difference_body(K)
        if self.kind == "ComplexDifference":
            return complex_difference_body(self.C, K)
        if self.kind == "ComplexProjection":
            return complex_projection_body(self.C, K)
        if self.kind == "Det2Contra":
            return det2_contravariant(self.C, K)
        return det2_covariant(self.C, K)

    def __repr__(self):
        return f"ValuationOperator({self.kind}, m={self.m})"

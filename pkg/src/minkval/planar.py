"""Convex polygons in C = R^2, their area measures, mixed areas and Steiner points."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyBody, NotClosable
from .geom import Polytope

TWO_PI = 2.0 * math.pi
ANGLE_MERGE_TOL = 1e-10


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _monotone_chain(points: np.ndarray, tol: float) -> np.ndarray:
    pts = sorted(map(tuple, points))
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= tol:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= tol:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


@dataclass(frozen=True, eq=False)
class Polygon:
    """Convex polygon with counterclockwise vertices.

    Starts at the lexicographically smallest vertex.  Two vertices mean a
    segment, one vertex a point.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float, ndmin=2)
        if v.size == 0:
            raise EmptyBody("polygon needs at least one vertex")
        if v.shape[1] != 2:
            raise ValueError("polygon vertices must be planar")
        start = min(range(len(v)), key=lambda k: (v[k, 0], v[k, 1]))
        v = np.roll(v, -start, axis=0)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_points(cls, points, tol: float = 1e-12) -> "Polygon":
        """Convex hull of planar points (collinear points dropped)."""
        pts = np.array(points, dtype=float, ndmin=2)
        if pts.size == 0:
            raise EmptyBody("no points")
        diam = float(np.ptp(pts, axis=0).max()) if len(pts) > 1 else 0.0
        if diam == 0.0:
            return cls(pts[:1])
        hull = _monotone_chain(pts, tol * diam * diam)
        if len(hull) < 1:
            hull = pts[:1]
        return cls(hull)

    @classmethod
    def from_polytope(cls, K: Polytope) -> "Polygon":
        if K.dim != 2:
            raise ValueError(f"polygon needs a planar body, got dimension {K.dim}")
        return cls.from_points(K.vertices)

    def to_polytope(self) -> Polytope:
        return Polytope.from_points(self.vertices)

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) < 3

    @property
    def dim(self) -> int:
        return 2

    @property
    def diameter(self) -> float:
        v = self.vertices
        if len(v) < 2:
            return 0.0
        return float(np.sqrt(((v[:, None] - v[None]) ** 2).sum(-1)).max())

    @property
    def area(self) -> float:
        if self.is_degenerate:
            return 0.0
        x, y = self.vertices.T
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    @property
    def perimeter(self) -> float:
        return float(self.area_measure().mass)

    def support(self, u):
        u = np.asarray(u, dtype=float)
        h = (self.vertices @ np.atleast_2d(u).T).max(axis=0)
        return float(h[0]) if u.ndim == 1 else h

    def translate(self, x) -> "Polygon":
        return Polygon(self.vertices + np.asarray(x, dtype=float))

    def scale(self, t: float) -> "Polygon":
        if t < 0:
            return Polygon.from_points(t * self.vertices)
        return Polygon(t * self.vertices)

    def rotate(self, phi: float) -> "Polygon":
        c, s = math.cos(phi), math.sin(phi)
        return Polygon(self.vertices @ np.array([[c, s], [-s, c]]))

    def conjugate(self) -> "Polygon":
        return Polygon.from_points(self.vertices * np.array([1.0, -1.0]))

    def area_measure(self) -> "AreaMeasureS1":
        return area_measure(self)

    def simplified(self, rel_tol: float = 1e-9) -> "Polygon":
        """Drop vertices within ``rel_tol * diameter`` of the chord through their neighbours."""
        v = [np.asarray(p) for p in self.vertices]
        tol = rel_tol * self.diameter
        changed = True
        while changed and len(v) > 2:
            changed = False
            for k in range(len(v)):
                a, p, b = v[k - 1], v[k], v[(k + 1) % len(v)]
                d = b - a
                L = float(np.hypot(*d))
                off = float(np.hypot(*(p - a))) if L == 0 else abs(d[0] * (p - a)[1] - d[1] * (p - a)[0]) / L
                if off <= tol:
                    del v[k]
                    changed = True
                    break
        if len(v) == 2 and np.hypot(*(v[1] - v[0])) <= tol:
            v = v[:1]
        return Polygon(np.array(v))

    def __repr__(self):
        return f"Polygon({len(self.vertices)} vertices)"


# named polygons -------------------------------------------------------------


def unit_square() -> Polygon:
    return Polygon([[0, 0], [1, 0], [1, 1], [0, 1]])


def regular_polygon(k: int, radius: float = 1.0, phase: float = 0.0) -> Polygon:
    t = phase + TWO_PI * np.arange(k) / k
    return Polygon(radius * np.column_stack([np.cos(t), np.sin(t)]))


def disc(k: int = 64, radius: float = 1.0) -> Polygon:
    """Unit disc discretized as an inscribed regular ``k``-gon."""
    return regular_polygon(k, radius)


def equilateral_triangle(side: float = 1.0) -> Polygon:
    return Polygon([[0, 0], [side, 0], [side / 2, side * math.sqrt(3) / 2]])


def segment2(a, b) -> Polygon:
    return Polygon.from_points([a, b])


# area measures ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AreaMeasureS1:
    """Finite positive measure on the unit circle with finitely many atoms."""

    angles: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=float).reshape(-1)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if a.shape != w.shape:
            raise ValueError("angles and weights differ in length")
        if (w < 0).any():
            raise ValueError("atom weights must be nonnegative")
        a, w = _merge_atoms(np.mod(a, TWO_PI), w)
        a.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "angles", a)
        object.__setattr__(self, "weights", w)

    @classmethod
    def empty(cls) -> "AreaMeasureS1":
        return cls(np.zeros(0), np.zeros(0))

    @property
    def directions(self) -> np.ndarray:
        return np.column_stack([np.cos(self.angles), np.sin(self.angles)])

    @property
    def mass(self) -> float:
        return float(self.weights.sum())

    @property
    def centroid(self) -> np.ndarray:
        if len(self.angles) == 0:
            return np.zeros(2)
        return self.weights @ self.directions

    def __len__(self):
        return len(self.angles)

    def integrate(self, func) -> float:
        """``sum_i w_i f(u_i)`` with ``func`` taking an ``(N, 2)`` direction array."""
        if len(self) == 0:
            return 0.0
        return float(self.weights @ np.asarray(func(self.directions), dtype=float))


def _merge_atoms(angles, weights):
    keep = weights > 0
    angles, weights = angles[keep], weights[keep]
    # angles within the merge tolerance of 2*pi wrap to 0
    angles = np.where(TWO_PI - angles < ANGLE_MERGE_TOL, 0.0, angles)
    order = np.argsort(angles, kind="stable")
    angles, weights = angles[order], weights[order]
    if len(angles) < 2:
        return angles.copy(), weights.copy()
    out_a, out_w = [angles[0]], [weights[0]]
    for a, w in zip(angles[1:], weights[1:]):
        if a - out_a[-1] <= ANGLE_MERGE_TOL:
            total = out_w[-1] + w
            out_a[-1] = (out_a[-1] * out_w[-1] + a * w) / total
            out_w[-1] = total
        else:
            out_a.append(a)
            out_w.append(w)
    return np.array(out_a), np.array(out_w)


def _normal_angle(edge) -> float:
    # outward normal of a counterclockwise edge: rotate by -pi/2
    return math.atan2(-edge[0], edge[1])


def area_measure(C: Polygon) -> AreaMeasureS1:
    """Edge normals weighted by edge lengths.

    A segment has two antipodal atoms, each weighted by its length; a point
    has the empty measure.
    """
    v = C.vertices
    if len(v) == 1:
        return AreaMeasureS1.empty()
    if len(v) == 2:
        e = v[1] - v[0]
        length = math.hypot(*e)
        a = _normal_angle(e)
        return AreaMeasureS1([a, a + math.pi], [length, length])
    edges = np.roll(v, -1, axis=0) - v
    angles = [_normal_angle(e) for e in edges]
    return AreaMeasureS1(angles, np.hypot(edges[:, 0], edges[:, 1]))


def minkowski_reconstruct(mu: AreaMeasureS1, tol: float = 1e-8) -> Polygon:
    """Polygon (unique up to translation) whose area measure is ``mu``.

    Raises :class:`NotClosable` if the centroid of ``mu`` is not zero within
    ``tol * mass``.
    """
    if len(mu) == 0:
        return Polygon([[0.0, 0.0]])
    c = mu.centroid
    if math.hypot(*c) > tol * mu.mass:
        raise NotClosable(f"measure centroid {c.tolist()} is not zero")
    u = mu.directions
    if len(mu) == 2 and abs(abs(mu.angles[1] - mu.angles[0]) - math.pi) <= ANGLE_MERGE_TOL:
        length = 0.5 * (mu.weights[0] + mu.weights[1])
        e = length * np.array([-u[0, 1], u[0, 0]])
        return Polygon(np.array([[0.0, 0.0], e]))
    edges = mu.weights[:, None] * np.column_stack([-u[:, 1], u[:, 0]])
    verts = np.vstack([np.zeros(2), np.cumsum(edges, axis=0)[:-1]])
    return Polygon(verts)


def mixed_area(K: Polygon, L: Polygon) -> float:
    """``V2(K, L) = 1/2 * sum_i w_i h(L, u_i)`` over the area measure of ``K``."""
    return 0.5 * area_measure(K).integrate(L.support)


def minkowski_sum2(K: Polygon, L: Polygon) -> Polygon:
    pts = (K.vertices[:, None, :] + L.vertices[None, :, :]).reshape(-1, 2)
    return Polygon.from_points(pts)


def _arc_second_moment(a: float, b: float) -> np.ndarray:
    """``int_a^b u u^T dtheta`` with ``u = (cos, sin)``."""
    d = b - a
    s = math.sin(2 * b) - math.sin(2 * a)
    c = math.cos(2 * b) - math.cos(2 * a)
    return np.array([[d / 2 + s / 4, -c / 4], [-c / 4, d / 2 - s / 4]])


def steiner_point(K: Polygon) -> np.ndarray:
    """``(1/pi) int h(K, u) u dtheta`` in closed form.

    On the normal-cone arc of each vertex ``v`` the integrand is
    ``u u^T v``, which integrates exactly.
    """
    v = K.vertices
    if len(v) > 2:
        # drop vertices that repeat their predecessor; their edge has no normal
        gap = np.linalg.norm(v - np.roll(v, 1, axis=0), axis=1)
        v = v[gap > 1e-12 * max(K.diameter, 1e-300)]
    if len(v) == 1:
        return v[0].copy()
    # a vertex's normal cone runs from its incoming to its outgoing edge normal
    if len(v) == 2:
        a0 = _normal_angle(v[1] - v[0])
        arcs = [(a0, a0 + math.pi, v[1]), (a0 + math.pi, a0 + TWO_PI, v[0])]
    else:
        edges = np.roll(v, -1, axis=0) - v
        out_normal = np.array([_normal_angle(e) for e in edges])
        in_normal = np.roll(out_normal, 1)
        arcs = []
        for k in range(len(v)):
            a = in_normal[k]
            d = (out_normal[k] - a) % TWO_PI
            if d > TWO_PI - 1e-9:
                # nearly collinear vertex: rounding wrapped a zero-width cone
                d = 0.0
            arcs.append((a, a + d, v[k]))
    s = np.zeros(2)
    for a, b, vert in arcs:
        s += _arc_second_moment(a, b) @ vert
    return s / math.pi


def steiner_center(K: Polygon) -> Polygon:
    return K.translate(-steiner_point(K))


def minkowski_inequality_gap(C1: Polygon, C2: Polygon) -> float:
    """``V2(C1,C2)^2 - V2(C1,C1) V2(C2,C2)``; nonnegative, zero iff homothetic."""
    v12 = mixed_area(C1, C2)
    return v12 * v12 - mixed_area(C1, C1) * mixed_area(C2, C2)


def random_polygon(rng, k: int | None = None, radius: float = 1.0) -> Polygon:
    """Hull of random points in an annulus; at least a triangle."""
    while True:
        count = k if k is not None else int(rng.integers(3, 13))
        t = np.sort(rng.uniform(0, TWO_PI, count))
        r = radius * rng.uniform(0.5, 1.0, count)
        P = Polygon.from_points(np.column_stack([r * np.cos(t), r * np.sin(t)]))
        if len(P.vertices) >= 3 and P.area > 1e-3 * radius * radius:
            return P

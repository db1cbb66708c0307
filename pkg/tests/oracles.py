"""Independent reference computations for the test suite.

Nothing here imports :mod:`minkval`.  Each oracle takes a different route
to the quantity it checks (quadrature instead of closed forms, brute-force
vertex sums instead of lazy sums, polynomial fits instead of facet
formulas).  Running this file regenerates ``data/frozen.json``; the tests
only read the frozen numbers.
"""
from __future__ import annotations

import itertools
import json
import math
from pathlib import Path

import numpy as np
from scipy.spatial import ConvexHull

FROZEN = Path(__file__).parent / "data" / "frozen.json"


def hull_volume(points) -> float:
    return float(ConvexHull(np.asarray(points, dtype=float)).volume)


def minkowski_vertices(A, B) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    return (A[:, None, :] + B[None, :, :]).reshape(-1, A.shape[1])


def polygon_area(points) -> float:
    return hull_volume(points)  # in 2D Qhull's "volume" is the area


def mixed_area_polyfit(K, L) -> float:
    """``V2(K, L)`` from ``area(K + tL)`` at ``t = 0, 1, 2``."""
    ts = np.array([0.0, 1.0, 2.0])
    areas = [polygon_area(K) if t == 0 else polygon_area(minkowski_vertices(K, t * np.asarray(L))) for t in ts]
    c = np.linalg.solve(np.vander(ts, increasing=True), areas)
    return float(c[1] / 2)


def mixed_volume_polyfit(K, L) -> float:
    """``V(K[n-1], L)`` from ``vol(K + tL)`` at ``t = 0..n``."""
    K = np.asarray(K, dtype=float)
    n = K.shape[1]
    ts = np.arange(n + 1, dtype=float)
    vols = [hull_volume(K) if t == 0 else hull_volume(minkowski_vertices(K, t * np.asarray(L))) for t in ts]
    c = np.linalg.solve(np.vander(ts, increasing=True), vols)
    return float(c[1] / n)


def steiner_quadrature(vertices, nodes: int = 100_000) -> list:
    """``(1/pi) int h(K, u) u dtheta`` by the trapezoid rule."""
    theta = np.linspace(0.0, 2 * np.pi, nodes + 1)[:-1]
    U = np.column_stack([np.cos(theta), np.sin(theta)])
    h = (U @ np.asarray(vertices, dtype=float).T).max(axis=1)
    return ((h[:, None] * U).sum(axis=0) * (2 * np.pi / nodes) / np.pi).tolist()


def projection_volume(vertices, w) -> float:
    """``vol_{n-1}`` of the orthogonal projection onto ``w^perp``."""
    V = np.asarray(vertices, dtype=float)
    w = np.asarray(w, dtype=float) / np.linalg.norm(w)
    # orthonormal basis of w^perp from the SVD of the projector
    P = np.eye(len(w)) - np.outer(w, w)
    U, s, _ = np.linalg.svd(P)
    basis = U[:, s > 0.5]
    return hull_volume(V @ basis)


def complex_det_values(vertices, w) -> np.ndarray:
    """``det(k, w) = k1 w2 - k2 w1`` for every vertex ``k`` (interleaved coordinates)."""
    V = np.asarray(vertices, dtype=float)
    k1 = V[:, 0] + 1j * V[:, 1]
    k2 = V[:, 2] + 1j * V[:, 3]
    w1 = w[0] + 1j * w[1]
    w2 = w[2] + 1j * w[3]
    return k1 * w2 - k2 * w1


def cube_vertices(n: int) -> np.ndarray:
    return np.array(list(itertools.product([0.0, 1.0], repeat=n)))


def line_polygon(C, w) -> np.ndarray:
    """Vertices of ``Cw = {re(c) w + im(c) J w}`` for the standard interleaved ``J``."""
    w = np.asarray(w, dtype=float)
    Jw = np.empty_like(w)
    Jw[0::2] = -w[1::2]
    Jw[1::2] = w[0::2]
    C = np.asarray(C, dtype=float)
    return np.outer(C[:, 0], w) + np.outer(C[:, 1], Jw)


def _random_sphere(rng, n, count):
    X = rng.standard_normal((count, n))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def build() -> dict:
    rng = np.random.default_rng(20241015)
    out = {}

    tri = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
    out["steiner_right_triangle"] = {"vertices": tri, "value": steiner_quadrature(tri)}

    sq = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    rot = sq @ np.array([[c, s], [-s, c]])
    out["mixed_area_square_rotated"] = {"K": sq.tolist(), "L": rot.tolist(), "value": mixed_area_polyfit(sq, rot)}

    pairs = []
    for n in (4, 6):
        for _ in range(2):
            K = _random_sphere(rng, n, n + 4)
            L = _random_sphere(rng, n, n + 3)
            pairs.append({"K": K.tolist(), "L": L.tolist(), "value": mixed_volume_polyfit(K, L)})
    out["mixed_volume_pairs"] = pairs

    for m in (2, 3):
        n = 2 * m
        out[f"cube_segment_mixed_volume_m{m}"] = mixed_volume_polyfit(cube_vertices(n), np.array([np.zeros(n), np.eye(n)[0]]))

    simplex4 = rng.standard_normal((5, 4))
    w = rng.standard_normal(4)
    out["projection_simplex"] = {
        "K": simplex4.tolist(),
        "w": w.tolist(),
        # h(Pi_[0,1] K, w) = |w| / (2m) * vol_{2m-1}(K | w^perp) with 2m = 4
        "value": float(np.linalg.norm(w) / 4 * projection_volume(simplex4, w)),
    }

    # det2 contravariant with C = [0, -i]: atoms at angles 0 and pi, weight 1,
    # so the value is the real width of det(K, w)
    z = complex_det_values(cube_vertices(4), np.eye(4)[0])
    out["det2_contra_cube_e1"] = float(z.real.max() - z.real.min())

    # det2 covariant: V(K, K, K, Cw) by fitting vol(K + t Cw), w dual to xi
    simplex4b = rng.standard_normal((5, 4))
    xi = rng.standard_normal(4)
    Ctri = np.array([[0.0, 0.0], [1.0, 0.2], [0.3, 0.8]])
    # w = (conj xi2, -conj xi1) in complex coordinates
    wv = np.array([xi[2], -xi[3], -xi[0], xi[1]])
    probe = rng.standard_normal((8, 4))
    # det(w, x) = -det(x, w); its real part must reproduce <xi, x>
    assert np.allclose(-complex_det_values(probe, wv).real, probe @ xi)
    out["det2_cova_simplex"] = {
        "K": simplex4b.tolist(),
        "xi": xi.tolist(),
        "C": Ctri.tolist(),
        "value": mixed_volume_polyfit(simplex4b, line_polygon(Ctri, wv)),
    }
    return out


if __name__ == "__main__":
    FROZEN.parent.mkdir(exist_ok=True)
    FROZEN.write_text(json.dumps(build(), indent=1) + "\n")
    print(f"wrote {FROZEN}")

"""Property checks for Minkowski valuations and recovery of ``C`` from ``D_C``.

Every check compares support functions on a sample of unit directions.  A
``Z`` here is any callable taking a :class:`~minkval.geom.Polytope` and
returning an object with a ``support`` method; an optional attribute
``contravariant`` selects which equivariance law is tested.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls as _scipy_nnls

from .errors import (
    DegenerateHull,
    InvalidGroupElement,
    NoSplit,
    NumericalError,
    RecoveryFailed,
)
from .geom import (
    ComplexStructure,
    LinearMap,
    Polytope,
    apply_linear,
    convex_hull,
    extreme_points,
    hausdorff_distance,
    random_directions,
    scale,
    scale_of,
    support_distance,
    translate,
)
from .planar import (
    AreaMeasureS1,
    Polygon,
    mixed_area,
    minkowski_reconstruct,
    steiner_center,
)
from .valuations import complex_difference_body


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckReport:
    check: str
    tolerance: float
    max_violation: float
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.max_violation <= self.tolerance)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "tolerance": self.tolerance,
            # an errored case has no finite violation; JSON has no infinity
            "max_violation": self.max_violation if math.isfinite(self.max_violation) else None,
            "pass": self.passed,
            "cases": self.cases,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.check}: max violation {self.max_violation:.3e} (tolerance {self.tolerance:.3e})"


def summarize(reports) -> dict:
    """Ordered summary of several reports; ``pass`` only if every one passed."""
    reports = list(reports)
    return {"pass": all(r.passed for r in reports), "reports": [r.to_dict() for r in reports]}


# ---------------------------------------------------------------------------
# random inputs


def random_polytope(n: int, count: int, seed: int) -> Polytope:
    """Hull of ``count`` points drawn uniformly on the unit sphere in R^n."""
    if count < n + 1:
        raise ValueError(f"need at least {n + 1} vertices in R^{n}, got {count}")
    rng = np.random.default_rng(seed)
    for _ in range(10):
        pts = random_directions(n, count, rng)
        try:
            hull = convex_hull(pts)
        except DegenerateHull:
            continue
        if hull.volume > 0:
            return Polytope.from_points(pts[hull.vertices])
    raise DegenerateHull("could not sample a full-dimensional polytope", 0)


def random_sl(m: int, seed: int) -> LinearMap:
    """Well-conditioned random element of SL(m, C), realified."""
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    Q, _ = np.linalg.qr(Z)
    T = np.triu(0.3 * (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))), 1)
    T += np.diag(rng.uniform(0.6, 1.6, m) * np.exp(1j * rng.uniform(0, 2 * np.pi, m)))
    A = Q @ T
    A = A / np.linalg.det(A) ** (1.0 / m)
    return LinearMap.from_complex(A)


def complex_rotation(thetas) -> LinearMap:
    return LinearMap.from_complex(np.diag(np.exp(1j * np.asarray(thetas, dtype=float))))


@dataclass
class ProbeSuite:
    bodies: list
    directions: np.ndarray
    group: list
    seed: int

    @classmethod
    def generate(cls, m: int, seed: int, n_bodies: int = 3, n_dirs: int = 100,
                 n_group: int = 3, vertices: int | None = None) -> "ProbeSuite":
        n = 2 * m
        rng = np.random.default_rng(seed)
        count = vertices or n + 6
        bodies = [random_polytope(n, count, int(rng.integers(2**31))) for _ in range(n_bodies)]
        dirs = random_directions(n, n_dirs, rng)
        group = [random_sl(m, int(rng.integers(2**31))) for _ in range(n_group)]
        return cls(bodies, dirs, group, seed)


# ---------------------------------------------------------------------------
# valuation property


def split_polytope(P: Polytope, hyperplane):
    """Cut ``P`` by ``<u, x> = b`` into ``(K, L, slice)``.

    ``K`` is the part with ``<u, x> <= b``.  Crossing points are taken over
    all vertex pairs on opposite sides, a superset of the edge crossings with
    the same hull.
    """
    u, b = hyperplane
    u = np.asarray(u, dtype=float)
    V = P.vertices
    s = V @ u - b
    eps = 1e-12 * scale_of(P)
    below, above = V[s < -eps], V[s > eps]
    if len(below) == 0 or len(above) == 0:
        raise NoSplit("hyperplane does not cross the interior")
    on = V[np.abs(s) <= eps]
    sb, sa = s[s < -eps], s[s > eps]
    t = sb[:, None] / (sb[:, None] - sa[None, :])
    cross = below[:, None, :] + t[..., None] * (above[None, :, :] - below[:, None, :])
    cross = np.vstack([cross.reshape(-1, P.dim), on])
    K = Polytope.from_points(extreme_points(np.vstack([below, cross])))
    L = Polytope.from_points(extreme_points(np.vstack([above, cross])))
    S = Polytope.from_points(extreme_points(cross))
    return K, L, S


def _body_scale(*bodies):
    return scale_of(*bodies)


def check_valuation_property(Z, P: Polytope, hyperplane, directions, tol: float = 1e-7) -> CheckReport:
    """``h(Z(K u L)) + h(Z(K n L)) == h(ZK) + h(ZL)`` on each direction."""
    K, L, S = split_polytope(P, hyperplane)
    ZP, ZK, ZL, ZS = Z(P), Z(K), Z(L), Z(S)
    lhs = ZP.support(directions) + ZS.support(directions)
    rhs = ZK.support(directions) + ZL.support(directions)
    viol = np.abs(lhs - rhs)
    sc = _body_scale(P, ZP)
    cases = [{"direction": int(k), "violation": float(v)} for k, v in enumerate(viol)]
    return CheckReport("valuation", tol * sc, float(viol.max()), cases)


def check_translation_invariance(Z, K: Polytope, translations, directions, tol: float = 1e-7) -> CheckReport:
    ZK = Z(K)
    sc = _body_scale(K, ZK)
    cases = []
    worst = 0.0
    for x in translations:
        Kx = translate(K, x)
        v = support_distance(Z(Kx), ZK, directions)
        sc = max(sc, _body_scale(Kx))
        cases.append({"translation": [float(c) for c in x], "violation": v})
        worst = max(worst, v)
    return CheckReport("translation_invariance", tol * sc, worst, cases)


def check_equivariance(Z, K: Polytope, group, directions, tol: float = 1e-6, strict: bool = True) -> CheckReport:
    """Covariance ``Z(gK) = g Z(K)`` or contravariance ``Z(gK) = g^{-*} Z(K)``.

    Under the Euclidean pairing the laws read ``h(Z(gK), xi) = h(ZK, g^T xi)``
    and ``h(Z(gK), w) = h(ZK, g^{-1} w)``.  With ``strict`` every ``g`` must
    lie in SL(W, C).
    """
    contra = bool(getattr(Z, "contravariant", False))
    ZK = Z(K)
    sc = _body_scale(K, ZK)
    cases = []
    worst = 0.0
    for g in group:
        if strict and not g.is_special:
            raise InvalidGroupElement("group element is not in SL(W, C)")
        gK = apply_linear(g, K)
        ZgK = Z(gK)
        pulled = directions @ (np.linalg.inv(g.M).T if contra else g.M)
        viol = np.abs(ZgK.support(directions) - ZK.support(pulled))
        sc = max(sc, _body_scale(gK, ZgK))
        worst = max(worst, float(viol.max()))
        cases.append({"complex_det_modulus": g.complex_det_modulus, "violation": float(viol.max())})
    name = "contravariance" if contra else "covariance"
    return CheckReport(name, tol * sc, worst, cases)


def check_continuity(Z, K: Polytope, perturbed, directions, lipschitz: float, tol: float = 1e-7) -> CheckReport:
    """Lipschitz probe ``d(ZK, ZK') <= L d(K, K')`` with the support sup-norm on the left."""
    ZK = Z(K)
    sc = _body_scale(K, ZK)
    cases = []
    worst = 0.0
    for Kp in perturbed:
        lhs = support_distance(Z(Kp), ZK, directions)
        rhs = lipschitz * hausdorff_distance(K, Kp)
        v = max(0.0, lhs - rhs)
        worst = max(worst, v)
        cases.append({"lhs": lhs, "bound": rhs, "violation": v})
    return CheckReport("continuity", tol * sc, worst, cases)


# ---------------------------------------------------------------------------
# homogeneity


@dataclass
class HomogeneityProfile:
    degrees: set
    coefficients: dict

    def to_dict(self) -> dict:
        return {"degrees": sorted(self.degrees), "coefficients": {str(k): v for k, v in self.coefficients.items()}}


def estimate_homogeneity(Z, K: Polytope, xi, t_grid=None, threshold: float = 1e-6) -> HomogeneityProfile:
    """Fit ``h(Z(tK), xi)`` by a polynomial of degree ``<= n`` in ``t``."""
    n = K.dim
    if t_grid is None:
        t_grid = np.linspace(0.5, 2.0, n + 1)
    t_grid = np.asarray(t_grid, dtype=float)
    if len(np.unique(t_grid)) < n + 1 or (t_grid <= 0).any():
        raise ValueError(f"need at least {n + 1} distinct positive grid values")
    V = np.vander(t_grid, n + 1, increasing=True)
    if np.linalg.cond(V) > 1e12:
        raise NumericalError("Vandermonde system is ill-conditioned")
    bodies = [Z(scale(t, K)) for t in t_grid]
    values = np.array([b.support(xi) for b in bodies])
    coeffs, *_ = np.linalg.lstsq(V, values, rcond=None)
    sc = _body_scale(K, bodies[-1] if t_grid[-1] <= 1 else Z(K))
    coefficients = {k: float(c) for k, c in enumerate(coeffs)}
    degrees = {k for k, c in coefficients.items() if abs(c) > threshold * sc}
    return HomogeneityProfile(degrees, coefficients)


def check_homogeneity(Z, K: Polytope, xi, expected: int, t_grid=None, threshold: float = 1e-6) -> CheckReport:
    """Every fitted coefficient outside degree ``expected`` must vanish.

    The zero operator passes with an empty degree set.
    """
    prof = estimate_homogeneity(Z, K, xi, t_grid, threshold)
    sc = _body_scale(K, Z(K))
    stray = [abs(c) for k, c in prof.coefficients.items() if k != expected]
    cases = [{"expected_degree": expected, **prof.to_dict()}]
    return CheckReport("homogeneity", threshold * sc, max(stray, default=0.0), cases)


# ---------------------------------------------------------------------------
# nonnegative least squares


def nnls(A, y, lam: float = 0.0, method: str = "active-set", tol: float = 1e-10, max_iter: int = 50_000):
    """``argmin ||A w - y||^2 + lam ||w||^2`` over ``w >= 0``.

    ``method="active-set"`` runs Lawson-Hanson on the ridge-augmented system;
    ``method="pg"`` runs accelerated projected gradient with restarts, which
    stops once the projected gradient is below ``tol * max(1, ||A^T y||)``.
    Returns ``(w, iterations)``.
    """
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    G = A.shape[1]
    if method == "active-set":
        Aa = np.vstack([A, math.sqrt(lam) * np.eye(G)]) if lam > 0 else A
        ya = np.concatenate([y, np.zeros(G)]) if lam > 0 else y
        try:
            w, _ = _scipy_nnls(Aa, ya, maxiter=max_iter)
        except RuntimeError as exc:
            raise NumericalError(f"nonnegative least squares did not converge: {exc}") from exc
        return w, 0
    if method != "pg":
        raise ValueError(f"unknown method {method!r}")
    return _nnls_pg(A, y, lam, tol, max_iter)


def _nnls_pg(A, y, lam, tol, max_iter):
    AtA = A.T @ A + lam * np.eye(A.shape[1])
    Aty = A.T @ y
    L = float(np.linalg.eigvalsh(AtA)[-1])
    if L <= 0:
        return np.zeros(A.shape[1]), 0
    stop = tol * max(1.0, float(np.linalg.norm(Aty)))

    def f(w):
        return 0.5 * w @ AtA @ w - Aty @ w

    w = np.zeros(A.shape[1])
    z = w.copy()
    t = 1.0
    fw = f(w)
    restarted = False
    for it in range(1, max_iter + 1):
        grad = AtA @ z - Aty
        w_new = np.maximum(z - grad / L, 0.0)
        f_new = f(w_new)
        if f_new > fw and not restarted:
            # restart momentum from the last accepted point; the plain
            # projected step that follows is a descent step up to rounding
            z = w.copy()
            t = 1.0
            restarted = True
            continue
        restarted = False
        t_new = 0.5 * (1 + math.sqrt(1 + 4 * t * t))
        z = w_new + ((t - 1) / t_new) * (w_new - w)
        w, fw, t = w_new, f_new, t_new
        g = AtA @ w - Aty
        pg = np.where(w > 0, g, np.minimum(g, 0.0))
        if np.linalg.norm(pg) <= stop:
            return w, it
    raise NumericalError(f"nonnegative least squares did not converge in {max_iter} iterations")


# ---------------------------------------------------------------------------
# recovery of C


@dataclass
class RecoveryResult:
    polygon: Polygon
    measure: AreaMeasureS1
    residual: float
    iterations: int

    def to_dict(self) -> dict:
        return {
            "residual": self.residual,
            "iterations": self.iterations,
            "atoms": [{"angle": float(a), "weight": float(w)} for a, w in zip(self.measure.angles, self.measure.weights)],
        }


DEFAULT_TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.3, 0.7]])


def _embed(points2, u, Ju):
    points2 = np.asarray(points2, dtype=float)
    return Polytope.from_points(np.outer(points2[:, 0], u) + np.outer(points2[:, 1], Ju))


def probe_bodies(P: int, triangle=DEFAULT_TRIANGLE):
    """Rotated unit segments and rotated copies of an asymmetric triangle in C."""
    probes = []
    for phi in 2 * np.pi * np.arange(P) / P:
        c, s = math.cos(phi), math.sin(phi)
        R = np.array([[c, s], [-s, c]])
        probes.append(np.array([[0.0, 0.0], [c, s]]))
        probes.append(np.asarray(triangle) @ R)
    return probes


def _merge_bins(angles, weights, G, width=1.5, max_run=3):
    """Merge runs of up to ``max_run`` adjacent nonzero bins into single atoms."""
    nz = np.flatnonzero(weights > 0)
    if len(nz) == 0:
        return np.zeros(0), np.zeros(0)
    step = 2 * np.pi / G
    # runs on the circle; rotate so that a gap starts the sequence
    idx = list(nz)
    gaps = [(idx[(k + 1) % len(idx)] - idx[k]) % G for k in range(len(idx))]
    if all(g * step <= width * step for g in gaps):
        start = 0
    else:
        start = (int(np.argmax(gaps)) + 1) % len(idx)
    idx = idx[start:] + idx[:start]
    runs = [[idx[0]]]
    for a, b in zip(idx, idx[1:]):
        if ((b - a) % G) * step <= width * step:
            runs[-1].append(b)
        else:
            runs.append([b])
    out_a, out_w = [], []
    for run in runs:
        w = weights[run]
        # unwrap the run so that its mean angle is taken on one branch
        ang = angles[run[0]] + step * np.cumsum([0] + [((b - a) % G) for a, b in zip(run, run[1:])])
        if len(run) > max_run:
            # a long run discretizes a spread-out measure; keep its bins
            out_a.extend(ang)
            out_w.extend(w)
            continue
        out_a.append(float(w @ ang / w.sum()))
        out_w.append(float(w.sum()))
    return np.array(out_a), np.array(out_w)


def _close(angles, weights):
    """Add one atom cancelling the centroid, so the measure is closable."""
    if len(angles) == 0:
        return angles, weights
    c = weights @ np.column_stack([np.cos(angles), np.sin(angles)])
    r = math.hypot(*c)
    if r == 0.0:
        return angles, weights
    return np.append(angles, math.atan2(-c[1], -c[0])), np.append(weights, r)


def _check_black_box(Z, m, seed, tol=1e-6):
    n = 2 * m
    K0 = random_polytope(n, n + 4, seed)
    rng = np.random.default_rng(seed + 1)
    dirs = random_directions(n, 20, rng)
    g = random_sl(m, seed + 2)
    ZK = Z(K0)
    sc = _body_scale(K0, ZK)
    cov = check_equivariance(_Covariant(Z), K0, [g], dirs)
    if not cov.passed:
        raise RecoveryFailed(f"operator is not SL(W,C)-covariant (violation {cov.max_violation:.3e})")
    deg = float(np.abs(Z(scale(2.0, K0)).support(dirs) - 2.0 * ZK.support(dirs)).max())
    if deg > tol * sc:
        raise RecoveryFailed(f"operator is not homogeneous of degree 1 (violation {deg:.3e})")
    x = rng.standard_normal(n)
    tr = support_distance(Z(translate(K0, x)), ZK, dirs)
    if tr > tol * sc:
        raise RecoveryFailed(f"operator is not translation invariant (violation {tr:.3e})")


class _Covariant:
    """Wrap ``Z`` so its covariance (not contravariance) is tested."""

    contravariant = False

    def __init__(self, Z):
        self._Z = Z

    def __call__(self, K):
        return self._Z(K)


def recover_C(Z, m: int, u=None, xi=None, G: int = 72, P: int = 48, lam: float = 1e-8,
              residual_threshold: float = 5e-2, seed: int = 0, verify: bool = True,
              method: str = "active-set") -> RecoveryResult:
    """Recover the Steiner-centered ``C`` from a black-box ``Z = D_C``.

    Probes lie in the complex line through ``u``; ``xi`` must satisfy
    ``<xi, u> = 1`` and ``<xi, Ju> = 0``.  The area measure of ``C`` is fitted
    on a ``G``-bin angular grid by nonnegative least squares.
    """
    n = 2 * m
    J = ComplexStructure.standard(n)
    u = np.eye(n)[0] if u is None else np.asarray(u, dtype=float)
    xi = np.eye(n)[0] if xi is None else np.asarray(xi, dtype=float)
    pairing = J.pairing(xi, u)
    if abs(pairing - 1) > 1e-10:
        raise ValueError(f"need xi(u) = 1 in the complex pairing, got {pairing}")
    if verify:
        _check_black_box(Z, m, seed)
    Ju = J.J @ u

    y = np.array([Z(_embed(p, u, Ju)).support(xi) for p in probe_bodies(P)])
    return recover_from_values(y, P, G, lam, residual_threshold, method)


def recover_from_values(y, P: int = 48, G: int = 72, lam: float = 1e-8,
                        residual_threshold: float = 5e-2, method: str = "active-set") -> RecoveryResult:
    """Fit ``S(C, .)`` to precomputed values ``y[k] = h(Z(probe_k u), xi)``.

    The probes are :func:`probe_bodies` ``(P)`` in order.
    """
    y = np.asarray(y, dtype=float)
    probes = probe_bodies(P)
    if len(y) != len(probes):
        raise ValueError(f"expected {len(probes)} probe values for P = {P}, got {len(y)}")
    theta = 2 * np.pi * np.arange(G) / G
    alpha = np.column_stack([np.cos(theta), np.sin(theta)])
    # h(alpha_j p u, xi) = max_p re(alpha_j p)
    A = np.array([
        (p[:, 0, None] * alpha[:, 0] - p[:, 1, None] * alpha[:, 1]).max(axis=0) for p in probes
    ])
    ynorm = float(np.linalg.norm(y))
    if ynorm <= 1e-12:
        return RecoveryResult(Polygon([[0.0, 0.0]]), AreaMeasureS1.empty(), 0.0, 0)
    w, iters = nnls(A, y, lam, method=method)
    residual = float(np.linalg.norm(A @ w - y)) / ynorm
    if residual > residual_threshold:
        raise RecoveryFailed(f"fit residual {residual:.3e} exceeds {residual_threshold:.1e}", residual)
    w = np.where(w > 1e-9 * w.sum(), w, 0.0)
    angles, weights = _merge_bins(theta, w, G)
    angles, weights = _close(angles, weights)
    mu = AreaMeasureS1(angles, weights)
    # edges of relative length 1e-6 are fit noise, far below the recovery tolerance
    C = steiner_center(minkowski_reconstruct(mu).simplified(1e-6))
    return RecoveryResult(C, mu, residual, iters)


# ---------------------------------------------------------------------------
# uniqueness


def polygon_hausdorff(A: Polygon, B: Polygon) -> float:
    return hausdorff_distance(A.to_polytope(), B.to_polytope())


def uniqueness_identity_check(C1: Polygon, C2: Polygon, m: int = 2, seed: int = 0,
                              agree_tol: float = 1e-8, identity_tol: float = 1e-8,
                              body_tol: float = 1e-7) -> CheckReport:
    """If ``D_{C1}`` and ``D_{C2}`` agree on the probes, ``C1`` and ``C2`` agree up to translation.

    The probes include the bodies ``conj(C_j) u``, on which
    ``h(D_{C_i}(conj(C_j) u), xi) = 2 V2(C_i, C_j)``.
    """
    n = 2 * m
    J = ComplexStructure.standard(n)
    suite = ProbeSuite.generate(m, seed, n_bodies=3, n_dirs=50, n_group=0)
    u = np.eye(n)[0]
    xi = np.eye(n)[0]
    sc = max(scale_of(C1, C2), *(scale_of(K) for K in suite.bodies))
    Cs = (C1, C2)
    device = [_embed(C.conjugate().vertices, u, J.J @ u) for C in Cs]

    diff = 0.0
    for K in suite.bodies + device:
        a = complex_difference_body(C1, K, J)
        b = complex_difference_body(C2, K, J)
        diff = max(diff, support_distance(a, b, suite.directions))
    V = np.array([[mixed_area(Ci, Cj) for Cj in Cs] for Ci in Cs])
    cases = [{"operator_sup_difference": diff}]
    worst_device = 0.0
    for i, Ci in enumerate(Cs):
        for j in range(2):
            val = complex_difference_body(Ci, device[j], J).support(xi)
            worst_device = max(worst_device, abs(val - 2 * V[i, j]))
    cases.append({"mixed_area_device_error": worst_device})

    centered = polygon_hausdorff(steiner_center(C1), steiner_center(C2))
    cases.append({"centered_hausdorff": centered, "mixed_areas": V.tolist()})
    agree = diff <= agree_tol * sc
    # normalized violations: each condition divided by its own tolerance
    viol = worst_device / (identity_tol * sc * sc)
    if agree:
        spread = max(abs(V[0, 0] - V[0, 1]), abs(V[1, 1] - V[0, 1]), abs(V[0, 1] - V[1, 0]))
        viol = max(viol, spread / (identity_tol * sc * sc), centered / (body_tol * sc))
    elif centered <= body_tol * sc:
        # equal centered bodies must give equal operators
        viol = max(viol, diff / (agree_tol * sc))
    cases.append({"operators_agree": bool(agree)})
    return CheckReport("uniqueness_identity", 1.0, float(viol), cases)


# ---------------------------------------------------------------------------
# control operators (negative controls for the check suites)


class ControlOperator:
    """Deliberately wrong operators that the suites must reject."""

    contravariant = False
    exact = True

    def __init__(self, name: str, m: int, C: Polygon | None = None):
        if name not in ("identity", "nonvaluation", "volpoint", "volroot_dc"):
            raise ValueError(f"unknown control operator {name!r}")
        self.name = name
        self.m = m
        self.dim = 2 * m
        self.C = C
        self.lipschitz = math.inf

    @property
    def kind(self) -> str:
        return self.name

    @property
    def degree(self) -> int:
        # nominal degree; the non-valuation is not homogeneous at all
        return {"volpoint": self.dim, "volroot_dc": 2}.get(self.name, 1)

    def __call__(self, K: Polytope):
        n = self.dim
        if self.name == "identity":
            return K
        if self.name == "nonvaluation":
            # conv(K u (K + sqrt(vol K) e1))
            shift = math.sqrt(K.volume) * np.eye(n)[0]
            return Polytope.from_points(np.vstack([K.vertices, K.vertices + shift]))
        if self.name == "volpoint":
            return Polytope.point(K.volume * np.ones(n) / math.sqrt(n))
        # degree-2 candidate vol^{1/n} * D_C K: covariant, invariant, not additive
        C = self.C if self.C is not None else Polygon([[0, 0], [1, 0], [1, 1], [0, 1]])
        return scale(K.volume ** (1.0 / n), complex_difference_body(C, K))

    def __repr__(self):
        return f"ControlOperator({self.name}, m={self.m})"


# ---------------------------------------------------------------------------
# theorem suite


def theorem_suite(Z, m: int, seed: int, n_dirs: int = 100, n_translations: int = 5,
                  tol_scale: float = 1.0, strict: bool = True, group=None,
                  continuity: bool = True) -> list[CheckReport]:
    """Valuation, translation, equivariance and (for finite Lipschitz constant) continuity."""
    n = 2 * m
    rng = np.random.default_rng(seed)
    K = random_polytope(n, n + 6, int(rng.integers(2**31)))
    dirs = random_directions(n, n_dirs, rng)
    normal = random_directions(n, 1, rng)[0]
    offset = float(K.vertices.mean(axis=0) @ normal)
    if group is None:
        group = [random_sl(m, int(rng.integers(2**31)))]
    xs = rng.standard_normal((n_translations, n))
    reports = [
        check_valuation_property(Z, K, (normal, offset), dirs, tol=1e-7 * tol_scale),
        check_translation_invariance(Z, K, xs, dirs, tol=1e-7 * tol_scale),
        check_equivariance(Z, K, group, dirs, tol=1e-6 * tol_scale, strict=strict),
    ]
    lip = getattr(Z, "lipschitz", math.inf)
    if continuity and math.isfinite(lip):
        perturbed = [Polytope.from_points(K.vertices + 0.05 * rng.standard_normal(K.vertices.shape)) for _ in range(3)]
        reports.append(check_continuity(Z, K, perturbed, dirs, lip, tol=1e-7 * tol_scale))
    return reports

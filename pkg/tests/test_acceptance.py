"""Acceptance criteria 1-8 at their stated tolerances.

Each ``criterion_*`` function returns ``(passed, detail)``; the pytest
wrappers print one PASS/FAIL line per criterion and assert.  Running the
file directly prints the same lines without pytest:

    python3 tests/test_acceptance.py
"""
from __future__ import annotations

import json
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402

from minkval.cli import EXIT_FAIL, main  # noqa: E402
from minkval.errors import NotClosable  # noqa: E402
from minkval.geom import ComplexStructure, Polytope, cube, random_directions, scale_of, segment, translate  # noqa: E402
from minkval.harness import (  # noqa: E402
    check_equivariance,
    check_translation_invariance,
    check_valuation_property,
    estimate_homogeneity,
    polygon_hausdorff,
    random_polytope,
    random_sl,
    recover_C,
    uniqueness_identity_check,
)
from minkval.planar import (  # noqa: E402
    AreaMeasureS1,
    Polygon,
    area_measure,
    disc,
    equilateral_triangle,
    minkowski_reconstruct,
    mixed_area,
    random_polygon,
    regular_polygon,
    segment2,
    steiner_center,
    unit_square,
)
from minkval.valuations import (  # noqa: E402
    ValuationOperator,
    complex_difference_body,
    complex_projection_body,
    difference_body,
    mixed_volume_polyfit,
    mixed_volume_top,
)


def _shapes_c1():
    return {"square": unit_square(), "triangle": equilateral_triangle(),
            "segment": segment2([0.0, 0.0], [1.0, 0.0]), "disc64": disc(64)}


# 1 ---------------------------------------------------------------------------


def criterion_1():
    """D_C: valuation, translation invariance and SL covariance at 1e-6 * scale."""
    worst = 0.0
    count = 0
    for m in (2, 3):
        n = 2 * m
        for name, C in _shapes_c1().items():
            Z = ValuationOperator("DC", C, m=m)
            for seed in range(20):
                rng = np.random.default_rng(1000 * m + seed)
                K = random_polytope(n, n + 6, int(rng.integers(2**31)))
                g = random_sl(m, int(rng.integers(2**31)))
                dirs = random_directions(n, 100, rng)
                normal = random_directions(n, 1, rng)[0]
                plane = (normal, float(K.vertices.mean(axis=0) @ normal))
                xs = rng.standard_normal((5, n))
                for rep in (check_valuation_property(Z, K, plane, dirs, tol=1e-6),
                            check_translation_invariance(Z, K, xs, dirs, tol=1e-6),
                            check_equivariance(Z, K, [g], dirs, tol=1e-6)):
                    worst = max(worst, rep.max_violation / rep.tolerance)
                count += 1
    return worst <= 1.0, f"{count} triples, worst violation/tolerance {worst:.2e}"


# 2 ---------------------------------------------------------------------------


def criterion_2():
    """Fitted degrees are exactly {1} for D_C and {2m-1} for Pi_C."""
    bad = []
    for m in (2, 3):
        n = 2 * m
        for seed in range(3):
            rng = np.random.default_rng(seed)
            K = random_polytope(n, n + 5, 50 + seed)
            xi = random_directions(n, 1, rng)[0]
            for C in (unit_square(), equilateral_triangle()):
                d = estimate_homogeneity(ValuationOperator("DC", C, m=m), K, xi, threshold=1e-6).degrees
                p = estimate_homogeneity(ValuationOperator("PiC", C, m=m), K, xi, threshold=1e-6).degrees
                if d != {1}:
                    bad.append(("DC", m, seed, sorted(d)))
                if p != {2 * m - 1}:
                    bad.append(("PiC", m, seed, sorted(p)))
    return not bad, "all degree sets exact" if not bad else f"mismatches {bad}"


# 3 ---------------------------------------------------------------------------


def criterion_3():
    """Facet formula against polynomial fit: 20 pairs in R^4, 5 in R^6, 1e-6 relative."""
    worst = 0.0
    for n, count in ((4, 20), (6, 5)):
        for seed in range(count):
            rng = np.random.default_rng(300 + 10 * n + seed)
            K = Polytope.from_points(rng.standard_normal((n + 4, n)))
            L = Polytope.from_points(rng.standard_normal((n + 2, n)))
            a = mixed_volume_top(K, L)
            b = mixed_volume_polyfit(K, L)
            worst = max(worst, abs(a - b) / abs(b))
    return worst <= 1e-6, f"25 pairs, worst relative gap {worst:.2e}"


# 4 ---------------------------------------------------------------------------


def criterion_4():
    """[0,-i] gives the difference body; [0,1] gives the classical projection body."""
    notes = []
    ok = True
    for m in (2, 3):
        n = 2 * m
        K = random_polytope(n, n + 4, 40 + m)
        if not complex_difference_body(segment2([0, 0], [0, -1]), K).canonical.equals(difference_body(K).canonical):
            ok = False
            notes.append(f"D_[0,-i] != D at m={m}")
        # h(Pi_[0,1] K, w) = |w| / (2m) vol_{2m-1}(K | w^perp), against an independent hull
        S = Polytope.from_points(np.random.default_rng(m).standard_normal((n + 1, n)))
        rel = 0.0
        for w in np.random.default_rng(10 + m).standard_normal((5, n)):
            want = np.linalg.norm(w) / n * oracles.projection_volume(S.vertices, w)
            got = complex_projection_body(segment2([0, 0], [1, 0]), S).support(w)
            rel = max(rel, abs(got - want) / want)
        ok &= rel <= 1e-6
        notes.append(f"m={m} simplex rel {rel:.1e}")
        cube_val = complex_projection_body(segment2([0, 0], [1, 0]), cube(n)).support(np.eye(n)[0])
        err = abs(cube_val - 1 / n)
        ok &= err <= 1e-9
        notes.append(f"cube err {err:.1e}")
    return bool(ok), "; ".join(notes)


# 5 ---------------------------------------------------------------------------


def criterion_5():
    """Planar Minkowski problem round trip on 50 polygons; open measures rejected."""
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(50):
        P = random_polygon(rng, radius=float(rng.uniform(0.1, 10.0)))
        R = minkowski_reconstruct(area_measure(P))
        # align by Steiner points, which commute with translation
        d = polygon_hausdorff(steiner_center(R), steiner_center(P))
        worst = max(worst, d / scale_of(P))
    rejected = 0
    for k in range(10):
        mu = area_measure(random_polygon(rng))
        w = mu.weights.copy()
        w[k % len(w)] *= 1.5
        try:
            minkowski_reconstruct(AreaMeasureS1(mu.angles, w))
        except NotClosable:
            rejected += 1
    ok = worst <= 1e-8 and rejected == 10
    return ok, f"worst Hausdorff/scale {worst:.2e}, rejected {rejected}/10 open measures"


# 6 ---------------------------------------------------------------------------


def criterion_6():
    """Recovery within 0.05 diam, and the mixed-area identity for agreeing operators."""
    shapes = {"square": unit_square(), "triangle": equilateral_triangle(),
              "segment": segment2([0.0, 0.0], [1.0, 0.0]), "8-gon": regular_polygon(8)}
    notes = []
    ok = True
    for name, C in shapes.items():
        res = recover_C(ValuationOperator("DC", C, m=2), 2, G=72, P=48)
        r = polygon_hausdorff(res.polygon, steiner_center(C)) / C.diameter
        ok &= r <= 0.05
        notes.append(f"{name} {r:.1e}")
    rng = np.random.default_rng(6)
    worst = 0.0
    for C in shapes.values():
        C2 = C.translate(rng.standard_normal(2))
        rep = uniqueness_identity_check(C, C2, identity_tol=1e-8)
        assert rep.cases[-1]["operators_agree"]
        sc = scale_of(C, C2)
        V = [[mixed_area(a, b) for b in (C, C2)] for a in (C, C2)]
        spread = max(abs(V[0][0] - V[0][1]), abs(V[1][1] - V[0][1]))
        worst = max(worst, spread / sc**2)
        ok &= rep.passed
    ok &= worst <= 1e-8
    notes.append(f"identity spread/scale^2 {worst:.1e}")
    return bool(ok), ", ".join(notes)


# 7 ---------------------------------------------------------------------------


def criterion_7():
    """h(D_C K, xi) = 2 |re(i conj(z1) z)| for C = [-z1, z1], K = [-zu, zu], xi(u) = 1."""
    J = ComplexStructure.standard(4)
    u = xi = np.eye(4)[0]
    rng = np.random.default_rng(7)
    worst = other = 0.0
    for _ in range(50):
        z1, z = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        zu = z.real * u + z.imag * (J.J @ u)
        C = segment2([-z1.real, -z1.imag], [z1.real, z1.imag])
        K = segment(-zu, zu)
        h = complex_difference_body(C, K, J).support(xi)
        target = 2 * abs((1j * z1.conjugate() * z).real)
        sc = max(1.0, scale_of(K), C.diameter)
        worst = max(worst, abs(h - target) / sc)
        # diagnostic only: the value the construction actually produces
        other = max(other, abs(h - 4 * abs((1j * z1 * z).real)) / sc)
    return worst <= 1e-9, f"50 pairs, worst error/scale {worst:.2e} (vs 4|re(i z1 z)|: {other:.1e})"


# 8 ---------------------------------------------------------------------------


def criterion_8(tmp: Path):
    """The suites reject the identity, a non-SL scaling and a non-valuation with exit 1."""
    sq = tmp / "square.json"
    main(["gen", "--shape", "square", "--out", str(sq)])
    runs = {
        "identity/translation_invariance": (["--op", "identity", "--suites", "translation"], "translation_invariance"),
        "2Id/contravariance": (["--op", "PiC", "--C", str(sq), "--group", "scaling", "--suites", "equivariance"],
                               "contravariance"),
        "nonvaluation/valuation": (["--op", "nonvaluation", "--suites", "valuation"], "valuation"),
    }
    notes = []
    ok = True
    for label, (args, check) in runs.items():
        out = tmp / (label.replace("/", "_") + ".json")
        rc = main(["check", *args, "--out", str(out)])
        failed = {r["check"] for r in json.loads(out.read_text())["reports"] if not r["pass"]}
        hit = rc == EXIT_FAIL and check in failed
        ok &= hit
        notes.append(f"{label} exit {rc}")
    return bool(ok), ", ".join(notes)


# ---------------------------------------------------------------------------


def _line(n, ok, detail, secs):
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {detail}"


def _run(n, fn, *args):
    t0 = time.perf_counter()
    ok, detail = fn(*args)
    return ok, _line(n, ok, detail, time.perf_counter() - t0)


@pytest.fixture
def announce(capsys):
    def say(text):
        with capsys.disabled():
            print("\n" + text)
    return say


@pytest.mark.parametrize("n, fn", [
    (1, criterion_1), (2, criterion_2), (3, criterion_3), (4, criterion_4),
    (5, criterion_5), (6, criterion_6), (7, criterion_7),
], ids=["c1_dc_theorem_properties", "c2_homogeneity", "c3_mixed_volume_methods", "c4_classical_reductions",
        "c5_minkowski_round_trip", "c6_recovery_uniqueness", "c7_segment_formula_literal"])
def test_criterion(n, fn, announce):
    ok, line = _run(n, fn)
    announce(line)
    assert ok, line


def test_criterion_8_negative_controls(tmp_path, announce):
    ok, line = _run(8, criterion_8, tmp_path)
    announce(line)
    assert ok, line


if __name__ == "__main__":
    import tempfile

    results = []
    for n, fn in enumerate([criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7], start=1):
        ok, line = _run(n, fn)
        results.append(ok)
        print(line)
    with tempfile.TemporaryDirectory() as d:
        ok, line = _run(8, criterion_8, Path(d))
    results.append(ok)
    print(line)
    sys.exit(0 if all(results) else 1)

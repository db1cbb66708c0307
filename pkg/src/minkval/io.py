"""File formats: JSON for bodies, measures, operators and reports; CSV for
support samples; static SVG for planar bodies and measures.

All floats are written as 17-significant-digit decimals, which round-trips
IEEE doubles exactly.  Output is deterministic: keys keep insertion order
and no timestamps are recorded.
"""
from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import UnsupportedDimension
from .geom import Polytope, extreme_points
from .planar import AreaMeasureS1, Polygon, area_measure
from .valuations import KIND_ALIASES, KINDS, ValuationOperator

CONTROL_KINDS = ("identity", "nonvaluation", "volpoint", "volroot_dc")


def fmt(x: float) -> str:
    """17 significant digits, always re-readable as the same double."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x}")
    if x == 0.0:
        return "0.0"
    s = format(x, ".17g")
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 1, _level: int = 0) -> str:
    """JSON text with fixed float formatting.

    Lists of scalars stay on one line so vertex arrays remain readable.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(dumps(v) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in seq) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    return json.dumps(obj)


def write_text(path, text: str) -> None:
    """Write ``text`` to ``path``, or to stdout when ``path`` is ``None`` or ``-``."""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text)


def write_json(path, obj) -> None:
    write_text(path, dumps(obj) + "\n")


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# bodies and measures


def body_to_dict(K) -> dict:
    """``{"dim": n, "vertices": [...]}``; polygons keep their cyclic order."""
    if isinstance(K, Polygon):
        return {"dim": 2, "vertices": K.vertices.tolist()}
    return {"dim": K.dim, "vertices": K.vertices.tolist()}


def body_from_dict(d) -> Polytope:
    if "polygon" in d:
        d = d["polygon"]
    dim = int(d["dim"])
    V = np.array(d["vertices"], dtype=float, ndmin=2)
    if V.shape[1] != dim:
        raise ValueError(f"vertices have {V.shape[1]} coordinates, dim says {dim}")
    return Polytope.from_points(V)


def polygon_from_dict(d) -> Polygon:
    if "polygon" in d:
        d = d["polygon"]
    if int(d["dim"]) != 2:
        raise UnsupportedDimension(f"expected a planar body, got dimension {d['dim']}")
    return Polygon.from_points(d["vertices"])


def measure_to_dict(mu: AreaMeasureS1) -> dict:
    return {"atoms": [{"angle": float(a), "weight": float(w)} for a, w in zip(mu.angles, mu.weights)]}


def measure_from_dict(d) -> AreaMeasureS1:
    atoms = d["atoms"]
    if not atoms:
        return AreaMeasureS1.empty()
    return AreaMeasureS1([a["angle"] for a in atoms], [a["weight"] for a in atoms])


def parameter_from_dict(d):
    """Planar parameter body: a polygon JSON or a measure JSON."""
    if "atoms" in d:
        return measure_from_dict(d)
    return polygon_from_dict(d)


def parameter_to_dict(C) -> dict:
    if isinstance(C, AreaMeasureS1):
        return measure_to_dict(C)
    return body_to_dict(C)


def load_body(path) -> Polytope:
    return body_from_dict(read_json(path))


def load_parameter(path):
    return parameter_from_dict(read_json(path))


# ---------------------------------------------------------------------------
# operators


def canonical_kind(kind: str) -> str:
    k = KIND_ALIASES.get(kind, kind)
    if k not in KINDS and k not in CONTROL_KINDS:
        raise ValueError(f"unknown operator kind {kind!r}")
    return k


def operator_to_dict(kind: str, C, m: int) -> dict:
    return {"kind": canonical_kind(kind), "C": None if C is None else parameter_to_dict(C), "m": int(m)}


def operator_from_dict(d):
    """Build a callable operator from its descriptor."""
    from .harness import ControlOperator

    kind = canonical_kind(d["kind"])
    C = None if d.get("C") is None else parameter_from_dict(d["C"])
    m = int(d["m"])
    if kind in CONTROL_KINDS:
        return ControlOperator(kind, m, C)
    return ValuationOperator(kind, C, m)


# ---------------------------------------------------------------------------
# support samples


def support_csv(directions, values) -> str:
    directions = np.asarray(directions, dtype=float)
    n = directions.shape[1]
    header = ",".join([f"x{k}" for k in range(n)] + ["support"])
    rows = [",".join(fmt(c) for c in d) + "," + fmt(v) for d, v in zip(directions, values)]
    return header + "\n" + "\n".join(rows) + "\n"


def read_support_csv(text: str):
    lines = [ln for ln in text.strip().splitlines()[1:] if ln]
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines])
    return data[:, :-1], data[:, -1]


# ---------------------------------------------------------------------------
# SVG


SVG_SIZE = 512


def _frame(points, pad_frac=0.08):
    """Affine map from data coordinates to the fixed viewBox, y pointing up."""
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1]))
    if span == 0.0:
        span = 1.0
    pad = pad_frac * SVG_SIZE
    s = (SVG_SIZE - 2 * pad) / span
    mid = (lo + hi) / 2

    def to_svg(p):
        p = np.asarray(p, dtype=float)
        return SVG_SIZE / 2 + s * (p[..., 0] - mid[0]), SVG_SIZE / 2 - s * (p[..., 1] - mid[1])

    return to_svg


def _num(x: float) -> str:
    return f"{x:.4f}"


def _svg(body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}" '
        f'width="{SVG_SIZE}" height="{SVG_SIZE}">'
    )
    return "\n".join([head, f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>', *body, "</svg>"]) + "\n"


def project_polygon(K: Polytope, axes) -> Polygon:
    """Shadow of ``K`` on the coordinate plane spanned by ``axes``."""
    i, j = axes
    return Polygon.from_points(extreme_points(K.vertices[:, [i, j]]))


def polygon_svg(P) -> str:
    """Filled outline of a planar body; segments and points are drawn as strokes and dots."""
    if not isinstance(P, Polygon):
        if P.dim != 2:
            raise UnsupportedDimension(
                f"SVG rendering needs a planar body, got dimension {P.dim}; use --project i,j"
            )
        P = Polygon.from_polytope(P)
    v = P.vertices
    to_svg = _frame(v)
    x, y = to_svg(v)
    if len(v) == 1:
        shape = f'<circle cx="{_num(x[0])}" cy="{_num(y[0])}" r="4" fill="black"/>'
    elif len(v) == 2:
        shape = (f'<line x1="{_num(x[0])}" y1="{_num(y[0])}" x2="{_num(x[1])}" y2="{_num(y[1])}" '
                 'stroke="black" stroke-width="2"/>')
    else:
        pts = " ".join(f"{_num(a)},{_num(b)}" for a, b in zip(x, y))
        shape = f'<polygon points="{pts}" fill="#cfe0f3" stroke="black" stroke-width="2"/>'
    return _svg([shape])


def measure_svg(mu) -> str:
    """Rose diagram: one spoke per atom, length proportional to its weight."""
    if isinstance(mu, Polygon):
        mu = area_measure(mu)
    c = SVG_SIZE / 2
    body = [f'<circle cx="{_num(c)}" cy="{_num(c)}" r="3" fill="black"/>']
    if len(mu):
        r = 0.42 * SVG_SIZE / float(mu.weights.max())
        for a, w in zip(mu.angles, mu.weights):
            x = c + r * w * math.cos(a)
            y = c - r * w * math.sin(a)
            body.append(f'<line x1="{_num(c)}" y1="{_num(c)}" x2="{_num(x)}" y2="{_num(y)}" '
                        'stroke="#b03030" stroke-width="3"/>')
    return _svg(body)

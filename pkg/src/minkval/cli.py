"""Command-line front end.

Subcommands ``gen``, ``apply``, ``check``, ``recover`` and ``report``.
Exit codes: 0 pass, 1 property failure, 2 suite or input error,
3 recovery failure, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field, fields

import numpy as np

from . import io
from .errors import GeometryError, RecoveryFailed
from .geom import LinearMap, Polytope, cube, random_directions, simplex
from .harness import (
    CheckReport,
    check_homogeneity,
    random_polytope,
    recover_C,
    recover_from_values,
    summarize,
    theorem_suite,
    uniqueness_identity_check,
)
from .planar import (
    Polygon,
    area_measure,
    disc,
    equilateral_triangle,
    minkowski_reconstruct,
    regular_polygon,
    segment2,
    unit_square,
)

EXIT_PASS, EXIT_FAIL, EXIT_ERROR, EXIT_RECOVERY, EXIT_USAGE = 0, 1, 2, 3, 64
CONFIG_ENV = "MINKVAL_CONFIG"
SHAPES = ("square", "triangle", "disc", "kgon", "segment", "point", "cube", "simplex")
SUITES = ("valuation", "translation", "equivariance", "continuity", "homogeneity", "uniqueness")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Resolved settings for one command (flags over config file over defaults)."""

    command: str
    m: int | None = None
    seed: int = 0
    out: str | None = None
    tol_scale: float = 1.0
    dirs: str = "100"
    G: int = 72
    P: int = 48
    lam: float = 1e-8
    op: str | None = None
    operator: str | None = None
    C: str | None = None
    K: str | None = None
    shape: str | None = None
    k: int = 64
    dim: int = 2
    random: bool = False
    vertices: int | None = None
    points: str | None = None
    measure_out: bool = False
    group: str = "sl"
    suites: str = ",".join(SUITES)
    values: str | None = None
    report: str | None = None
    body: str | None = None
    measure: str | None = None
    project: str | None = None
    csv: str | None = None
    extra: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    shared.add_argument("--m", type=int, default=S, help="complex dimension (bodies live in R^{2m})")
    shared.add_argument("--seed", type=int, default=S)
    shared.add_argument("--out", default=S, help="output path (default: stdout)")
    shared.add_argument("--tol-scale", dest="tol_scale", type=float, default=S,
                        help="multiplier applied to every check tolerance")
    shared.add_argument("--dirs", default=S, help="direction sample size, or 'axes'")
    shared.add_argument("--config", default=S, help="JSON config file")

    def op_flags(p, C=True):
        p.add_argument("--op", default=S, help="operator kind: D, DC, PiC, det2contra, det2cova or a control")
        p.add_argument("--operator", default=S, help="operator descriptor JSON")
        if C:
            p.add_argument("--C", default=S, help="parameter polygon or measure JSON")

    parser = _Parser(prog="minkval", description="Complex Minkowski valuations: bodies, operators, checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[shared], help="write bodies, measures or operator descriptors")
    g.add_argument("--shape", choices=SHAPES, default=S)
    g.add_argument("--k", type=int, default=S, help="vertex count for disc and kgon")
    g.add_argument("--dim", type=int, default=S)
    g.add_argument("--random", action="store_true", default=S)
    g.add_argument("--vertices", type=int, default=S)
    g.add_argument("--points", default=S, help="explicit planar points 'x,y;x,y;...'")
    g.add_argument("--measure", dest="measure_out", action="store_true", default=S,
                   help="write the area measure of the planar body instead")
    op_flags(g)

    a = sub.add_parser("apply", parents=[shared], help="apply an operator to a body")
    op_flags(a)
    a.add_argument("--K", default=S, help="body JSON")

    c = sub.add_parser("check", parents=[shared], help="run the property suites")
    op_flags(c)
    c.add_argument("--group", choices=("sl", "scaling"), default=S,
                   help="'scaling' tests against 2*Id, which is not in SL")
    c.add_argument("--suites", default=S, help="comma-separated subset of " + ",".join(SUITES))

    r = sub.add_parser("recover", parents=[shared], help="recover C from a black-box operator")
    op_flags(r)
    r.add_argument("--values", default=S, help="JSON {'P': int, 'values': [...]} of precomputed probe values")
    r.add_argument("--G", type=int, default=S)
    r.add_argument("--P", type=int, default=S)
    r.add_argument("--lam", type=float, default=S)
    r.add_argument("--report", default=S, help="residual report JSON path")

    p = sub.add_parser("report", parents=[shared], help="SVG and CSV renderings")
    p.add_argument("--body", default=S)
    p.add_argument("--measure", default=S)
    p.add_argument("--project", default=S, help="coordinate axes 'i,j' for non-planar bodies")
    p.add_argument("--csv", default=S, help="also write support samples to this path")
    return parser


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    flags = vars(ns).copy()
    path = flags.pop("config", None) or os.environ.get(CONFIG_ENV)
    file_cfg = {}
    if path:
        try:
            file_cfg = io.read_json(path)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        file_cfg = {k.replace("-", "_"): v for k, v in file_cfg.items()}
    names = {f.name for f in fields(RunConfig)}
    merged = {k: v for k, v in file_cfg.items() if k in names}
    extra = {k: v for k, v in file_cfg.items() if k not in names}
    merged.update(flags)
    return RunConfig(**merged, extra=extra)


# ---------------------------------------------------------------------------
# helpers


def _directions(cfg: RunConfig, n: int, rng) -> np.ndarray:
    if str(cfg.dirs) == "axes":
        eye = np.eye(n)
        return np.vstack([eye, -eye])
    try:
        count = int(cfg.dirs)
    except ValueError as exc:
        raise UsageError(f"--dirs expects an integer or 'axes', got {cfg.dirs!r}") from exc
    if count < 1:
        raise UsageError("--dirs must be positive")
    return random_directions(n, count, rng)


def _parse_points(text: str) -> np.ndarray:
    try:
        pts = [[float(c) for c in pair.split(",")] for pair in text.split(";") if pair.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse points {text!r}") from exc
    return np.array(pts)


def _load_operator(cfg: RunConfig):
    """Returns ``(operator, descriptor dict)``."""
    if cfg.operator:
        d = io.read_json(cfg.operator)
        if cfg.m is not None:
            d["m"] = cfg.m
    else:
        if not cfg.op:
            raise UsageError("need --op or --operator")
        C = io.load_parameter(cfg.C) if cfg.C else None
        m = cfg.m if cfg.m is not None else 2
        try:
            d = io.operator_to_dict(cfg.op, C, m)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if d["m"] > 3:
        print(f"warning: m = {d['m']} > 3, hull computations get expensive", file=sys.stderr)
    try:
        return io.operator_from_dict(d), d
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _named_shape(cfg: RunConfig):
    shape = cfg.shape
    if shape == "square":
        return unit_square()
    if shape == "triangle":
        return equilateral_triangle()
    if shape == "disc":
        return disc(cfg.k)
    if shape == "kgon":
        return regular_polygon(cfg.k)
    if shape == "segment":
        return segment2([0.0, 0.0], [1.0, 0.0])
    if shape == "point":
        return Polygon([[0.0, 0.0]])
    if shape == "cube":
        return cube(cfg.dim)
    return simplex(cfg.dim)


# ---------------------------------------------------------------------------
# commands


def cmd_gen(cfg: RunConfig) -> int:
    if cfg.op or cfg.operator:
        _, d = _load_operator(cfg)
        io.write_json(cfg.out, d)
        return EXIT_PASS
    if cfg.random:
        count = cfg.vertices or cfg.dim + 1
        body = random_polytope(cfg.dim, count, cfg.seed)
    elif cfg.points:
        body = Polygon.from_points(_parse_points(cfg.points))
    elif cfg.shape:
        body = _named_shape(cfg)
    else:
        raise UsageError("gen needs --shape, --random, --points or --op")
    if cfg.measure_out:
        if not isinstance(body, Polygon):
            raise UsageError("--measure needs a planar body")
        io.write_json(cfg.out, io.measure_to_dict(area_measure(body)))
    else:
        io.write_json(cfg.out, io.body_to_dict(body))
    return EXIT_PASS


def cmd_apply(cfg: RunConfig) -> int:
    if not cfg.K:
        raise UsageError("apply needs --K")
    K = io.load_body(cfg.K)
    if cfg.m is None and not cfg.operator:
        cfg.m = max(K.dim // 2, 1)
    Z, _ = _load_operator(cfg)
    out = Z(K)
    if isinstance(out, Polytope):
        io.write_json(cfg.out, io.body_to_dict(out.canonical))
        return EXIT_PASS
    dirs = _directions(cfg, K.dim, np.random.default_rng(cfg.seed))
    io.write_text(cfg.out, io.support_csv(dirs, out.support(dirs)))
    return EXIT_PASS


def _error_report(name: str, exc: Exception) -> CheckReport:
    return CheckReport(name, 0.0, math.inf, [{"error": f"{type(exc).__name__}: {exc}"}])


def _uniqueness_parameter(Z):
    if getattr(Z, "kind", None) == "Difference":
        return segment2([0.0, 0.0], [0.0, -1.0])
    if getattr(Z, "kind", None) == "ComplexDifference":
        C = Z.C
        return C if isinstance(C, Polygon) else minkowski_reconstruct(C)
    return None


def run_checks(Z, m: int, cfg: RunConfig):
    """All selected suites; returns ``(reports, errored)``."""
    selected = [s.strip() for s in cfg.suites.split(",") if s.strip()]
    unknown = set(selected) - set(SUITES)
    if unknown:
        raise UsageError(f"unknown suites {sorted(unknown)}")
    n = 2 * m
    rng = np.random.default_rng(cfg.seed)
    n_dirs = 2 * n if str(cfg.dirs) == "axes" else int(cfg.dirs)
    if cfg.group == "scaling":
        group, strict = [LinearMap.from_complex(2.0 * np.eye(m))], False
    else:
        group, strict = None, True

    reports, errored = [], False
    core = [s for s in selected if s in ("valuation", "translation", "equivariance", "continuity")]
    if core:
        try:
            got = theorem_suite(Z, m, cfg.seed, n_dirs=n_dirs, tol_scale=cfg.tol_scale, strict=strict,
                                group=group, continuity="continuity" in core)
            names = {"valuation": "valuation", "translation_invariance": "translation",
                     "covariance": "equivariance", "contravariance": "equivariance", "continuity": "continuity"}
            reports.extend(r for r in got if names[r.check] in core)
        except (GeometryError, ValueError, np.linalg.LinAlgError) as exc:
            reports.append(_error_report("theorem_suite", exc))
            errored = True
    if "homogeneity" in selected:
        try:
            K = random_polytope(n, n + 6, int(rng.integers(2**31)))
            xi = random_directions(n, 1, rng)[0]
            reports.append(check_homogeneity(Z, K, xi, getattr(Z, "degree", 1), threshold=1e-6 * cfg.tol_scale))
        except (GeometryError, ValueError, np.linalg.LinAlgError) as exc:
            reports.append(_error_report("homogeneity", exc))
            errored = True
    C = _uniqueness_parameter(Z)
    if "uniqueness" in selected and C is not None:
        try:
            shift = rng.standard_normal(2)
            tol = 1e-8 * cfg.tol_scale
            reports.append(uniqueness_identity_check(C, C.translate(shift), m=m, seed=cfg.seed,
                                                     agree_tol=tol, identity_tol=tol, body_tol=10 * tol))
        except (GeometryError, ValueError, np.linalg.LinAlgError) as exc:
            reports.append(_error_report("uniqueness_identity", exc))
            errored = True
    return reports, errored


def cmd_check(cfg: RunConfig) -> int:
    Z, d = _load_operator(cfg)
    reports, errored = run_checks(Z, d["m"], cfg)
    for r in reports:
        print(r.line(), file=sys.stderr)
    summary = summarize(reports)
    summary["operator"] = d
    io.write_json(cfg.out, summary)
    if errored:
        return EXIT_ERROR
    return EXIT_PASS if summary["pass"] else EXIT_FAIL


def cmd_recover(cfg: RunConfig) -> int:
    try:
        if cfg.values:
            data = io.read_json(cfg.values)
            res = recover_from_values(data["values"], int(data.get("P", cfg.P)), cfg.G, cfg.lam)
        else:
            Z, d = _load_operator(cfg)
            res = recover_C(Z, d["m"], G=cfg.G, P=cfg.P, lam=cfg.lam, seed=cfg.seed)
    except RecoveryFailed as exc:
        report = {"pass": False, "error": str(exc), "residual": exc.residual if math.isfinite(exc.residual) else None}
        if cfg.report:
            io.write_json(cfg.report, report)
        print(f"recovery failed: {exc}", file=sys.stderr)
        return EXIT_RECOVERY
    report = {"pass": True, **res.to_dict()}
    io.write_json(cfg.out, io.body_to_dict(res.polygon))
    if cfg.report:
        io.write_json(cfg.report, report)
    else:
        print(f"recovered {len(res.polygon.vertices)} vertices, residual {res.residual:.3e}", file=sys.stderr)
    return EXIT_PASS


def cmd_report(cfg: RunConfig) -> int:
    if cfg.measure:
        mu = io.load_parameter(cfg.measure)
        io.write_text(cfg.out, io.measure_svg(mu))
        return EXIT_PASS
    if not cfg.body:
        raise UsageError("report needs --body or --measure")
    K = io.load_body(cfg.body)
    if cfg.project:
        try:
            axes = [int(a) for a in cfg.project.split(",")]
        except ValueError as exc:
            raise UsageError(f"--project expects 'i,j', got {cfg.project!r}") from exc
        if len(axes) != 2 or not all(0 <= a < K.dim for a in axes):
            raise UsageError(f"--project needs two axes in 0..{K.dim - 1}")
        shown = io.project_polygon(K, axes)
    else:
        shown = K
    io.write_text(cfg.out, io.polygon_svg(shown))
    if cfg.csv:
        dirs = _directions(cfg, K.dim, np.random.default_rng(cfg.seed))
        io.write_text(cfg.csv, io.support_csv(dirs, K.support(dirs)))
    return EXIT_PASS


COMMANDS = {"gen": cmd_gen, "apply": cmd_apply, "check": cmd_check, "recover": cmd_recover, "report": cmd_report}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = resolve_config(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"minkval: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GeometryError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"minkval: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

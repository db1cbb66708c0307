import json

import numpy as np
import pytest

from minkval.cli import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, EXIT_RECOVERY, EXIT_USAGE, main
from minkval.io import read_support_csv
from minkval.planar import Polygon, steiner_center, unit_square
from minkval.harness import polygon_hausdorff


@pytest.fixture
def files(tmp_path):
    """Writes the usual inputs with ``gen`` and returns their paths."""
    def gen(name, *args):
        path = tmp_path / name
        assert main(["gen", *args, "--out", str(path)]) == EXIT_PASS
        return str(path)

    return {
        "square": gen("square.json", "--shape", "square", "--dim", "2"),
        "triangle": gen("triangle.json", "--shape", "triangle"),
        "point": gen("point.json", "--shape", "point"),
        "seg01": gen("seg01.json", "--points", "0,0;1,0"),
        "cube6": gen("cube6.json", "--shape", "cube", "--dim", "6"),
        "sqmeasure": gen("sq-measure.json", "--shape", "square", "--measure"),
        "dir": tmp_path,
    }


def load(path):
    return json.loads(open(path).read())


# gen -------------------------------------------------------------------------


def test_gen_square(files):
    d = load(files["square"])
    assert d["dim"] == 2 and sorted(map(tuple, d["vertices"])) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_gen_random_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["gen", "--random", "--dim", "6", "--vertices", "20", "--seed", "7", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert load(a)["dim"] == 6


def test_gen_disc(tmp_path):
    p = tmp_path / "disc.json"
    assert main(["gen", "--shape", "disc", "--k", "64", "--out", str(p)]) == 0
    assert len(load(p)["vertices"]) == 64


def test_gen_operator_descriptor(files, tmp_path):
    p = tmp_path / "op.json"
    assert main(["gen", "--op", "DC", "--C", files["square"], "--m", "3", "--out", str(p)]) == 0
    d = load(p)
    assert d["kind"] == "ComplexDifference" and d["m"] == 3


def test_gen_measure(files):
    atoms = load(files["sqmeasure"])["atoms"]
    assert len(atoms) == 4 and all(a["weight"] == pytest.approx(1.0) for a in atoms)


# apply -----------------------------------------------------------------------


def test_apply_dc_gives_polytope(files, tmp_path):
    p = tmp_path / "out.json"
    assert main(["apply", "--op", "DC", "--C", files["square"], "--K", files["cube6"], "--out", str(p)]) == 0
    d = load(p)
    assert d["dim"] == 6 and len(d["vertices"]) > 0


def test_apply_projection_on_cube_axes(files, tmp_path):
    p = tmp_path / "out.csv"
    rc = main(["apply", "--op", "PiC", "--C", files["seg01"], "--K", files["cube6"], "--dirs", "axes", "--out", str(p)])
    assert rc == 0
    dirs, vals = read_support_csv(p.read_text())
    assert np.array_equal(dirs[0], np.eye(6)[0])
    assert abs(vals[0] - 1 / 6) <= 1e-9


def test_apply_difference_body_of_triangle(files, tmp_path):
    p = tmp_path / "out.json"
    assert main(["apply", "--op", "D", "--K", files["triangle"], "--m", "1", "--out", str(p)]) == 0
    assert len(load(p)["vertices"]) == 6


def test_apply_dimension_mismatch_is_error(files, tmp_path):
    rc = main(["apply", "--op", "DC", "--C", files["square"], "--K", files["cube6"], "--m", "2",
               "--out", str(tmp_path / "x.json")])
    assert rc == EXIT_ERROR


# check -----------------------------------------------------------------------


def test_check_dc_passes(files, tmp_path):
    p = tmp_path / "rep.json"
    assert main(["check", "--op", "DC", "--C", files["square"], "--m", "3", "--seed", "1", "--out", str(p)]) == EXIT_PASS
    rep = load(p)
    assert rep["pass"] is True
    checks = {r["check"] for r in rep["reports"]}
    assert {"valuation", "translation_invariance", "covariance", "homogeneity", "uniqueness_identity"} <= checks


def test_check_identity_fails_translation(tmp_path):
    p = tmp_path / "rep.json"
    assert main(["check", "--op", "identity", "--out", str(p)]) == EXIT_FAIL
    failed = {r["check"] for r in load(p)["reports"] if not r["pass"]}
    assert "translation_invariance" in failed


def test_check_zero_operator_passes(files, tmp_path):
    assert main(["check", "--op", "DC", "--C", files["point"], "--out", str(tmp_path / "r.json")]) == EXIT_PASS


def test_check_nonvaluation_fails(tmp_path):
    p = tmp_path / "rep.json"
    assert main(["check", "--op", "nonvaluation", "--suites", "valuation", "--out", str(p)]) == EXIT_FAIL


def test_check_projection_body_under_scaling_fails(files, tmp_path):
    p = tmp_path / "rep.json"
    rc = main(["check", "--op", "PiC", "--C", files["square"], "--group", "scaling",
               "--suites", "equivariance", "--out", str(p)])
    assert rc == EXIT_FAIL
    assert not load(p)["reports"][0]["pass"]


def test_check_is_byte_identical(files, tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        p = tmp_path / name
        main(["check", "--op", "DC", "--C", files["triangle"], "--seed", "4", "--dirs", "40", "--out", str(p)])
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_check_unknown_suite_is_usage_error(files):
    assert main(["check", "--op", "DC", "--C", files["square"], "--suites", "bogus"]) == EXIT_USAGE


# recover ---------------------------------------------------------------------


def test_recover_square(files, tmp_path):
    p, r = tmp_path / "C.json", tmp_path / "rep.json"
    assert main(["recover", "--op", "DC", "--C", files["square"], "--out", str(p), "--report", str(r)]) == 0
    got = Polygon.from_points(load(p)["vertices"])
    assert polygon_hausdorff(got, steiner_center(unit_square())) <= 0.05 * unit_square().diameter
    assert load(r)["pass"] is True


def test_recover_difference_body(tmp_path):
    p = tmp_path / "C.json"
    assert main(["recover", "--op", "D", "--out", str(p)]) == 0
    got = Polygon.from_points(load(p)["vertices"])
    assert polygon_hausdorff(got, Polygon([[0, -0.5], [0, 0.5]])) <= 1e-6


def test_recover_projection_body_fails(files, tmp_path):
    r = tmp_path / "rep.json"
    assert main(["recover", "--op", "PiC", "--C", files["square"], "--report", str(r)]) == EXIT_RECOVERY
    assert load(r)["pass"] is False


def test_recover_from_values(files, tmp_path):
    from minkval.harness import probe_bodies, _embed  # noqa: F401
    from minkval.valuations import ValuationOperator
    from minkval.geom import ComplexStructure

    Z = ValuationOperator("DC", unit_square(), m=2)
    J = ComplexStructure.standard(4)
    u = np.eye(4)[0]
    vals = [Z(_embed(T, u, J.J @ u)).support(u) for T in probe_bodies(48)]
    src = tmp_path / "vals.json"
    src.write_text(json.dumps({"P": 48, "values": [float(v) for v in vals]}))
    p = tmp_path / "C.json"
    assert main(["recover", "--values", str(src), "--out", str(p)]) == 0
    got = Polygon.from_points(load(p)["vertices"])
    assert polygon_hausdorff(got, steiner_center(unit_square())) <= 0.05


# report ----------------------------------------------------------------------


def test_report_square(files, tmp_path):
    p = tmp_path / "sq.svg"
    assert main(["report", "--body", files["square"], "--out", str(p)]) == 0
    assert "<polygon" in p.read_text()


def test_report_measure(files, tmp_path):
    p = tmp_path / "m.svg"
    assert main(["report", "--measure", files["sqmeasure"], "--out", str(p)]) == 0
    assert p.read_text().count("<line") == 4


def test_report_projection_and_csv(files, tmp_path):
    p, c = tmp_path / "c.svg", tmp_path / "c.csv"
    assert main(["report", "--body", files["cube6"], "--project", "0,1", "--csv", str(c), "--out", str(p)]) == 0
    assert "<polygon" in p.read_text()
    assert c.read_text().startswith("x0,x1,x2,x3,x4,x5,support")


def test_report_non_planar_without_projection(files, tmp_path, capsys):
    assert main(["report", "--body", files["cube6"], "--out", str(tmp_path / "c.svg")]) == EXIT_ERROR
    assert "--project" in capsys.readouterr().err


# usage and config ------------------------------------------------------------


def test_unknown_operator_is_usage_error():
    assert main(["check", "--op", "bogus"]) == EXIT_USAGE


def test_missing_parameter_is_usage_error():
    assert main(["check", "--op", "DC"]) == EXIT_USAGE


def test_bad_flag_is_usage_error():
    assert main(["gen", "--no-such-flag"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE


def test_config_file_and_flag_precedence(files, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"shape": "disc", "k": 12}))
    p = tmp_path / "out.json"
    assert main(["gen", "--config", str(cfg), "--out", str(p)]) == 0
    assert len(load(p)["vertices"]) == 12
    assert main(["gen", "--config", str(cfg), "--k", "20", "--out", str(p)]) == 0
    assert len(load(p)["vertices"]) == 20


def test_unreadable_config_is_usage_error(tmp_path):
    assert main(["gen", "--config", str(tmp_path / "missing.json")]) == EXIT_USAGE


def test_suite_error_exits_two(tmp_path, monkeypatch):
    import minkval.cli as cli

    def boom(*a, **k):
        raise ValueError("synthetic failure")

    monkeypatch.setattr(cli, "theorem_suite", boom)
    p = tmp_path / "rep.json"
    assert main(["check", "--op", "D", "--suites", "valuation", "--out", str(p)]) == EXIT_ERROR
    rep = load(p)
    assert rep["pass"] is False and rep["reports"][0]["max_violation"] is None
    assert "synthetic failure" in rep["reports"][0]["cases"][0]["error"]

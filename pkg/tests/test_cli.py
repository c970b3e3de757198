import json
import random

import pytest

from conftest import FERMAT4_POINTS, random_points
from eigenscheme_kit.cli import SCHEMA, main
from eigenscheme_kit.constructions import fermat
from eigenscheme_kit.eigen import GeneratorTriple, generators
from eigenscheme_kit.points import PointSet
from eigenscheme_kit.poly import parse_poly, proportional
from eigenscheme_kit.reconstruct import RecognitionReport, normalize_triple
from eigenscheme_kit.solve import NumericPoint

EX45_CUBIC = "x0*x2^2+x0^2*x2-2*x0*x1*x2+x0^3+x0^2*x1-x0*x1^2-x1^3"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    stream = out if out.strip() else err
    try:
        payload = json.loads(stream)
    except json.JSONDecodeError:
        payload = stream
    return code, payload


@pytest.fixture
def fermat4_file(tmp_path):
    path = tmp_path / "fermat4.json"
    path.write_text(json.dumps(PointSet(FERMAT4_POINTS).to_json()))
    return str(path)


def test_gen_round_trip(capsys):
    code, out = run(capsys, "gen", "-f", "x0^3+x1^3+x2^3", "--convention", "alternating")
    assert code == 0 and out["schema"] == SCHEMA
    t = GeneratorTriple.from_json(out["triple"])
    assert t == generators(parse_poly("x0^3+x1^3+x2^3"), "alternating")


def test_verify(capsys, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps(["x0", "x1", "x2"]))
    code, out = run(capsys, "verify", "-t", str(path))
    assert code == 1 and out["koszul_identity"] is False


def test_recognize_fermat(capsys, fermat4_file):
    code, out = run(capsys, "recognize", "--points", fermat4_file, "-d", "4", "--symmetric")
    assert code == 0
    rep = RecognitionReport.from_json(out["report"])
    assert rep.is_eigenscheme and rep.kernel_dim == 1
    assert normalize_triple(generators(rep.symmetric_f)) == normalize_triple(generators(fermat(4)))


def test_recognize_random_points(capsys, tmp_path):
    path = tmp_path / "random13.json"
    path.write_text(json.dumps(PointSet(random_points(random.Random(1), 13, 40)).to_json()))
    code, out = run(capsys, "recognize", "--points", str(path), "-d", "4")
    assert code == 1 and out["report"]["failure_stage"] == "IdealDim"


def test_character_and_preconditions(capsys, fermat4_file):
    code, out = run(capsys, "character", "--points", fermat4_file)
    assert code == 0 and out["character"] == [6, 5, 4, 4] and out["connected"]
    code, out = run(capsys, "preconditions", "--points", fermat4_file, "-d", "4", "--threads", "2")
    assert code == 0 and out["report"]["all_pass"]


def test_jacobian(capsys):
    code, out = run(capsys, "jacobian", "-f", EX45_CUBIC)
    assert code == 0 and out["degree"] == 6
    J = parse_poly(out["jacobian"])
    assert J.coefficient((6, 0, 0)) != 0


def test_fiber_and_solve(capsys):
    code, out = run(capsys, "fiber", "-f", "x0^3+x1^3+x2^3", "--at", "0:0:1")
    assert code == 0 and out["fiber"]["kind"] == "ContractedLine"
    code, out = run(capsys, "fiber", "-f", "x0^4+x1^4+x2^4+x0*x1*x2^2", "--at", "1:2.5:-3")
    assert code == 0 and len(out["fiber"]["points"]) == 3
    code, out = run(capsys, "solve", "-f", "x0^3+x1^3+x2^3", "--lines")
    assert code == 0 and out["count"] == 7 and len(out["contracted_lines"]) == 6
    pts = [NumericPoint.from_json(p) for p in out["points"]]
    assert sum(p.multiplicity for p in pts) == 7


def test_solve_batch(capsys, tmp_path):
    path = tmp_path / "batch.json"
    path.write_text(json.dumps(["x0^3+x1^3+x2^3", "x0^4+x1^4+x2^4"]))
    code, out = run(capsys, "solve", "--batch", str(path), "--threads", "2")
    assert code == 0 and [r["count"] for r in out["results"]] == [7, 13]


def test_fermat(capsys):
    code, out = run(capsys, "fermat", "-d", "4", "--points")
    assert code == 0 and PointSet.from_json(out["points"]) == PointSet(FERMAT4_POINTS)
    code, out = run(capsys, "fermat", "-d", "5", "--points")
    assert code == 3 and out["error"] == "RootsNotInFieldError"


def test_tangent(capsys):
    code, out = run(capsys, "tangent", "--P", "1:i:0", "--Q", "3i:-4i:5", "--mu=-i", "--mu", "2", "--with-line")
    assert code == 0
    assert out["eigenstructure"]["curve_degree"] == 4
    assert out["eigenstructure"]["point"] == ["1", "i", "-4/5-3/5*i"]


def test_hilbert(capsys):
    code, out = run(capsys, "hilbert", "-f", "x0^4+x1^4+x2^4")
    assert code == 0 and out["matches"] and out["stable_value"] == 13
    code, out = run(capsys, "hilbert", "-f", "x0^3+x0*x1^2+x0*x2^2")  # q * x0
    assert code == 1 and not out["matches"]


def test_reconstruct(capsys, tmp_path):
    f = parse_poly("x0^3-2*x1^2*x2+x0*x1*x2")
    path = tmp_path / "t.json"
    path.write_text(json.dumps(generators(f).to_json()))
    code, out = run(capsys, "reconstruct", "-t", str(path))
    assert code == 0 and proportional(parse_poly(out["symmetric_f"]), f) is not None


def test_tensor_components(capsys):
    code, out = run(capsys, "gen", "-g", "x1^2", "-g", "x2^2", "-g", "x0^2")
    assert code == 0


def test_usage_errors(capsys, tmp_path):
    assert main(["nope"]) == 2
    capsys.readouterr()
    code, out = run(capsys, "jacobian", "-f", "x0^2+x1^^2")
    assert code == 2 and out["message"].startswith("<argument>:1:9")
    bad = tmp_path / "bad.json"
    bad.write_text('[["1", "0", "0"],\n ["1", "1" "1"]]')
    code, out = run(capsys, "character", "--points", str(bad))
    assert code == 2 and f"{bad}:2:12" in out["message"]
    bad.write_text('[["1", "0", "0"],\n ["1/0", "1", "1"]]')
    code, out = run(capsys, "character", "--points", str(bad))
    assert code == 2 and ":2:" in out["message"]
    code, out = run(capsys, "character", "--points", str(tmp_path / "missing.json"))
    assert code == 2
    code, out = run(capsys, "recognize", "--points", str(bad))
    assert code == 2


def test_float_points_refused(capsys, tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps([[1.0, 0, 0], [0, 1, 0], [0, 0, 1]]))
    code, out = run(capsys, "character", "--points", str(path))
    assert code == 2 and out["error"] == "FloatEntriesError"


def test_poly_from_file(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("x0^3 +\n x1^3 + x2^^3\n")
    code, out = run(capsys, "gen", "-f", f"@{path}")
    assert code == 2 and f"{path}:2:" in out["message"]
    path.write_text(json.dumps(parse_poly("x0^3+x1^3").to_json()))
    code, out = run(capsys, "gen", "-f", f"@{path}")
    assert code == 0


def test_pretty_output(capsys, fermat4_file):
    assert main(["--pretty", "character", "--points", fermat4_file]) == 0
    assert "connected" in capsys.readouterr().out


def test_exit_codes_are_deterministic(capsys, fermat4_file):
    a = run(capsys, "solve", "-f", "x0^4+x1^4+x2^4")
    b = run(capsys, "solve", "-f", "x0^4+x1^4+x2^4")
    assert a == b


def test_points_accept_at_prefix(capsys, fermat4_file):
    code, out = run(capsys, "character", "--points", "@" + fermat4_file)
    assert code == 0
    code2, out2 = run(capsys, "character", "--points", fermat4_file)
    assert out == out2

import json

import pytest

from thompson_ore import cli
from thompson_ore.linalg import SparseMatrix


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,expected", [
    (["normalize", "x1*x0"], "x0*x2"),
    (["mul", "x1", "x0", "x3"], "x0*x2*x3"),
    (["lcm", "x0", "x1"], "x0*x2"),
    (["count", "--set", "S:4:10"], "2002"),
    (["count", "--set", "S:4:7/1:1:4/2:1:4"], str(48 - 2 * 5)),
])
def test_simple_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == cli.EXIT_OK and out.strip() == expected


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--set", "S:2:4")
    assert out.split() == ["x0^2", "x0*x1", "x0*x2", "x1^2", "x1*x2"]


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "normalize", "x1*y0")
    assert code == cli.EXIT_INPUT
    assert "position 3" in err and "^" in err


def test_bad_field(capsys):
    code, _, _ = run(capsys, "count", "--set", "S:2:4", "--field", "fp:10")
    assert code == cli.EXIT_INPUT


def test_no_solution_exit_code(capsys):
    code, out, _ = run(capsys, "solve-pair", "--a", "x0", "--b", "x1", "--set", "S:2:4")
    assert code == cli.EXIT_NONE and "no solution" in out


def test_solve_pair_json_round_trip(capsys, tmp_path):
    path = tmp_path / "sol.json"
    code, _, _ = run(capsys, "solve-pair", "--a", "x0", "--b", "x1", "--set", "x2",
                     "--set-v", "x0", "--format", "json", "-o", str(path))
    assert code == cli.EXIT_OK
    doc = json.loads(path.read_text())
    assert doc["verified"] and doc["basis_size"] == 1
    code, out, _ = run(capsys, "verify", str(path))
    assert code == cli.EXIT_OK and "verified: True" in out


def test_verify_rejects_tampered(capsys, tmp_path):
    path = tmp_path / "sol.json"
    run(capsys, "basic-solution", "--alpha", "2", "--beta", "3", "--format", "json", "-o", str(path))
    doc = json.loads(path.read_text())
    doc["solution"][0]["terms"][0]["coef"] = "7"
    path.write_text(json.dumps(doc))
    code, _, _ = run(capsys, "verify", str(path))
    assert code == cli.EXIT_NONE


def test_dump_matrix(capsys, tmp_path):
    path = tmp_path / "m.txt"
    run(capsys, "solve-pair", "--a", "x0 + x1", "--b", "x1", "--set", "S:2:4",
        "--field", "fp:101", "--dump-matrix", str(path))
    text = path.read_text()
    assert text.splitlines()[0].split()[2] == "fp:101"
    m = SparseMatrix.loads(text)
    assert m.ncols == 10 and m.dumps() == text


@pytest.mark.parametrize("field", ["q", "fp:101", "generic:5"])
def test_basic_solution_fields(capsys, field):
    args = ["basic-solution", "--field", field]
    if field == "generic:5":
        code, out, _ = run(capsys, *args, "--alpha", "a", "--beta", "b")
    else:
        code, out, _ = run(capsys, *args, "--alpha", "2", "--beta", "3")
    assert code == cli.EXIT_OK and "verified: True" in out


def test_construct_deg1(capsys):
    code, out, _ = run(capsys, "construct-deg1", "--m", "1", "--alpha", "1,2", "--beta", "3,5")
    assert code == 0 and "u0 = 3*x0 + 5*x2" in out and "u1 = x0 + 2*x2" in out


def test_family_json_verifies(capsys, tmp_path):
    path = tmp_path / "f.json"
    code, _, _ = run(capsys, "family", "--alpha", "2", "--beta", "3", "--degree", "4",
                     "--seed", "1", "--format", "json", "-o", str(path))
    assert code == 0
    assert run(capsys, "verify", str(path))[0] == 0


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--a", "2 + x0", "--b", "1 + x0*x1", "--field", "fp:101")
    assert code == 0 and "verified: True" in out


def test_qk(capsys):
    code, out, _ = run(capsys, "qk", "--pairs", "1:2,3:5")
    assert code == 0 and "x0 + 2*x2" in out


def test_census_xm_csv(capsys):
    code, out, _ = run(capsys, "census-xm", "--m", "1", "--n-from", "4", "--n-to", "5",
                       "--format", "csv")
    assert out.splitlines() == ["n,Y,SY,ratio_num,ratio_den,bound_holds",
                                "4,3,5,5,3,True", "5,9,14,14,9,True"]


def test_census_s24_formula(capsys):
    code, out, _ = run(capsys, "census-s24", "--n-from", "44", "--n-to", "45",
                       "--formula-only", "--format", "json")
    assert code == 0
    assert "45" in out


def test_census_donnelly(capsys):
    code, out, _ = run(capsys, "census-donnelly", "--n-from", "5", "--n-to", "7", "--format", "csv")
    assert code == 0 and out.splitlines()[:2] == ["n,Y,formula,match", "5,2,2,True"]


def test_min_n_none_found(capsys):
    code, out, _ = run(capsys, "min-n", "--n-from", "5", "--n-to", "6", "--seeds", "2")
    assert code == cli.EXIT_NONE and "seed0" in out


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "qk,basic")
    assert code == 0 and out.count("PASS") == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == cli.EXIT_INPUT


def test_deterministic_output(capsys):
    argv = ["family", "--alpha", "2", "--beta", "3", "--degree", "3", "--seed", "4",
            "--format", "json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_solve_system(capsys, tmp_path):
    path = tmp_path / "sys.json"
    path.write_text(json.dumps({"coeffs": [["x0", "-x1"]], "supports": ["x2", "x0"]}))
    code, out, _ = run(capsys, "solve-system", str(path))
    assert code == 0 and "verified: True" in out

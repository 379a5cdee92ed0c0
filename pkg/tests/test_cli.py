import io
import json
import subprocess
import sys

from planeaut.cli import run


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def test_verify_example():
    code, out, _ = call("verify", "--field", "Q", "y+(x+y)^2", "x+y")
    assert code == 0
    assert json.loads(out) == {"factors": [{"alpha": "1", "beta": ["1"]}],
                               "lambda": ["1", "0", "0", "0", "1", "0"]}


def test_verify_negative():
    code, out, _ = call("verify", "x+y", "x+y^2")
    assert code == 1 and "not an automorphism" in out


def test_dim():
    assert call("dim", "--n", "12")[1] == "18\n"
    assert call("dim", "--n", "5", "--upto")[1] == "11\n"
    assert call("dim", "--n", "1")[1] == "6\n"
    assert call("dim", "--n", "7", "--coordinates")[1] == "10\n"
    assert call("dim", "--n", "1", "--coordinates")[1] == "3\n"


def test_census():
    code, out, _ = call("census", "--n", "2", "--q", "2", "--bruteforce")
    assert code == 0
    assert "formula=72" in out and "bruteforce=72" in out
    code, out, _ = call("census", "--n", "2", "--q", "2", "--coordinates", "--bruteforce", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "2,2,12,12,5,5"
    code, out, _ = call("census", "--n", "3", "--q", "2", "--format", "json")
    assert json.loads(out)["count_formula"] == 144
    assert call("census", "--n", "2", "--q", "4")[0] == 2
    assert call("census", "--n", "3", "--q", "3", "--bruteforce")[0] == 2


def test_count():
    assert call("count", "--n", "2", "--q", "3")[1] == "3456\n"
    code, out, _ = call("count", "--n", "4", "--symbolic")
    assert code == 0
    assert json.loads(out.splitlines()[0]) == [0, 0, 0, 0, 1, -3, 0, 6, -3, -3, 2]
    assert call("count", "--n", "2")[0] == 2


def test_series_and_catalan():
    code, out, _ = call("series", "--T", "4", "--eps", "1")
    assert out == "c: [0, 1, 1, 2, 5]\nd: [0, 7, 8, 10, 15]\n"
    assert call("catalan", "--n", "12")[1] == "58786\n"
    assert call("series", "--T", "2", "--format", "csv")[1].startswith("n,c_n,partial_sum")


def test_factorizations_and_ncdim():
    assert call("factorizations", "--n", "4")[1] == "4\n2 2\n"
    assert json.loads(call("factorizations", "--n", "6", "--format", "json")[1]) == [[6], [2, 3], [3, 2]]
    assert call("ncdim", "--n", "5")[1] == "126\n"


def test_compose_invert():
    code, out, _ = call("compose", "x+y^2", "y", "y", "x", "--format", "text")
    assert (code, out) == (0, "y\ny^2 + x\n")
    code, out, _ = call("invert", "y", "x+y", "--format", "text")
    assert out == "-x + y\nx\n"
    assert call("invert", "x^2", "y")[0] == 1


def test_roundtrip_via_stdin():
    _, nf, _ = call("decompose", "--field", "F5", "x+2*y^3+1", "3*y+x+2*y^3")
    code, out, _ = call("recompose", "--field", "F5", "--format", "text", "-", stdin=nf)
    assert code == 0
    assert out == "2*y^3 + x + 1\n2*y^3 + x + 3*y\n"


def test_endo_json_input(tmp_path):
    _, js, _ = call("compose", "x", "y", "x+y^2", "y")
    path = tmp_path / "phi.json"
    path.write_text(js)
    code, out, _ = call("verify", str(path))
    assert code == 0
    code, out, _ = call("verify", "-", stdin=js)
    assert code == 0


def test_nc_commands():
    assert call("verify-nc", "x", "y+x*x") == (0, "a = 1\n", "")
    assert call("verify-nc", "y", "x")[1] == "a = -1\n"
    assert call("verify-nc", "x+x*y-y*x", "y")[0] == 1
    code, out, _ = call("lift", "y+(x+y)^2", "x+y")
    assert code == 0
    assert call("verify-nc", "-", stdin=out) == (0, "a = -1\n", "")


def test_usage_errors():
    assert call()[0] == 2
    assert call("bogus")[0] == 2
    assert call("verify", "x+", "y")[0] == 2
    assert call("verify", "--field", "F4", "x", "y")[0] == 2
    assert call("verify", "x")[0] == 2
    assert call("recompose", "-", stdin="{bad")[0] == 2
    assert call("verify", "x^100", "y", "--max-degree", "10")[0] == 2


def test_sample_deterministic():
    a = call("sample", "--seed", "7", "--field", "Q")
    b = call("sample", "--seed", "7", "--field", "Q")
    assert a == b and a[0] == 0
    assert call("sample", "--seed", "8")[1] != a[1]


def test_subprocess_entry():
    args = [sys.executable, "-m", "planeaut", "dim", "--n", "12"]
    r1 = subprocess.run(args, capture_output=True, text=True)
    r2 = subprocess.run(args, capture_output=True, text=True)
    assert r1.returncode == 0 and r1.stdout == r2.stdout == "18\n"

import json

import pytest

from thompsonv.cli import run

X0 = "10100:11000:1,2,3"


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_v_commands(capsys):
    assert call(capsys, "v", "mul", X0, X0)[:2] == (0, "1010100:1110000:1,2,3,4")
    assert call(capsys, "v", "slope", X0, "0")[:2] == (0, "-1")
    assert call(capsys, "v", "apply", X0, "1/2")[1] == "1/2^2"
    assert call(capsys, "v", "inv", X0)[1] == "11000:10100:1,2,3"
    assert call(capsys, "v", "classify", "100:100:2,1")[1] == "T\\F"
    code, out, _ = call(capsys, "--format", "json", "v", "ell", X0)
    assert json.loads(out)["pieces"][0] == {"interval": "00", "label": -1}
    code, out, _ = call(capsys, "v", "parse", "100:100:1,2", "--format", "json")
    assert json.loads(out) == {"element": "0:0:1"}


def test_input_errors_exit_2(capsys):
    assert call(capsys, "v", "parse", "11:0:1")[0] == 2
    assert call(capsys, "v", "slope", X0, "1/3")[0] == 2
    assert call(capsys, "v", "frobnicate", X0)[0] == 2
    assert call(capsys, "limg", "--group", "Z5", "--alpha", "id")[0] == 2
    assert call(capsys, "cocycle", "decompose")[0] == 2


def test_group_commands(capsys, tmp_path):
    path = tmp_path / "z3.txt"
    path.write_text("order 3\n0 1 2\n1 2 0\n2 0 1\n")
    code, out, _ = call(capsys, "--format", "json", "group", "check", str(path))
    assert json.loads(out) == {"valid": True, "order": 3, "abelian": True}
    assert call(capsys, "group", "center", "S3")[1] == "e"
    assert len(call(capsys, "group", "aut", "Z4")[1].splitlines()) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("order 2\n0 1\n1 1\n")
    assert call(capsys, "group", "check", str(bad))[0] == 2


def test_limg_and_isocheck(capsys):
    code, out, _ = call(capsys, "--format", "json", "limg", "--group", "Z6", "--alpha", "mul:2")
    data = json.loads(out)
    assert data == {"order": 3, "stable_index": 1, "elements": ["0", "2", "4"], "auto": "map 0 2 1",
                    "table": "order 3\n0 1 2\n1 2 0\n2 0 1\n"}
    assert call(capsys, "isocheck", "--g1", "Z3", "--a1", "id", "--g2", "Z3", "--a2", "inv")[:2] == (1, "no")
    code, out, _ = call(capsys, "--format", "json", "isocheck", "--g1", "S3", "--a1", "ad:(12)",
                        "--g2", "S3", "--a2", "id", "--witness")
    data = json.loads(out)
    assert code == 0 and data["isomorphic"] and data["witness"]["h"] == "(12)"


def test_semidirect_commands(capsys):
    code, out, _ = call(capsys, "g", "act", "--group", "Z4", "--alpha", "inv", "11000:10100:1,2,3", "0=1")
    assert out == "0=3"
    code, out, _ = call(capsys, "g", "mul", "--group", "Z4", "--alpha", "inv",
                        "0=1 * 100:100:2,1", "0=1 * 100:100:2,1")
    assert code == 0 and out.endswith("0:0:1")
    code, out, _ = call(capsys, "theta", "to", "--group", "Z4", "--alpha", "inv", "10100", "1,1,2")
    assert out == "0=3;1/2^1=1;3/2^2=2"
    code, out, _ = call(capsys, "--format", "json", "theta", "from", "--group", "Z4", "--alpha", "inv",
                        "0=3;1/2^1=1;3/2^2=2")
    assert json.loads(out) == {"tree": "10100", "values": ["1", "1", "2"]}


def test_cocycle_commands(capsys):
    assert call(capsys, "cocycle", "pv", "11000:10100:1,2,3")[1] == "0=1;1/2^1=-1"
    assert call(capsys, "cocycle", "fv", X0)[1] == "0 1/2^1"
    assert call(capsys, "cocycle", "gamma", X0, "1/2")[1] == "-2"
    assert call(capsys, "cocycle", "mu", X0, "1/2")[1] == "-1"
    code, out, _ = call(capsys, "--format", "json", "cocycle", "decompose", "--group", "Z4", "--zeta", "1",
                        "--f", "1/2^1=3", "--points", "0,1/4")
    assert json.loads(out) == {"zeta": "1", "f": {"0": "0", "1/2^1": "3", "1/2^2": "0"}}


def test_aut_apply(capsys):
    code, out, _ = call(capsys, "aut", "apply", "--group", "Z4", "--zeta", "1", "11000:10100:1,2,3")
    assert (code, out) == (0, "0=1;1/2^1=3 * 11000:10100:1,2,3")
    code, out, _ = call(capsys, "aut", "apply", "--group", "S3", "--f", "const:(123)", "--beta", "ad:(132)",
                        "1/2^2=(12) * 100:100:2,1")
    assert out == "1/2^2=(12) * 100:100:2,1"


def test_verify(capsys):
    code, out, err = call(capsys, "verify", "--suite", "all", "--seed", "7", "--trials", "20")
    assert code == 0 and "failures 0" in out and "wall time" in err
    again = call(capsys, "verify", "--suite", "all", "--seed", "7", "--trials", "20")[1]
    assert again == out
    code, out, _ = call(capsys, "--format", "json", "verify", "--suite", "v", "--seed", "1", "--trials", "5")
    assert json.loads(out) == {"suite": "v", "seed": 1, "trials": 5, "failures": [], "passed": True}
    assert call(capsys, "verify", "--suite", "nope")[0] == 2

import io as _io

import pytest

from ordpure.cli import main
from ordpure.core import build, complete_graph
from ordpure.io import write_ogr


def run(argv):
    buf = _io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, G in {
        "k3": complete_graph(3),
        "c5": build(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
        "multi": build(12, [(u, v) for u in range(12) for v in range(u + 1, 12) if u // 4 != v // 4]),
    }.items():
        p = tmp_path / f"{name}.ogr"
        write_ogr(G, str(p))
        paths[name] = str(p)
    return paths


def test_contains_absent(files):
    assert run(["contains", "--host", files["k3"], "--pattern", "fox_path"]) == (2, "absent\n")


def test_contains_present(files):
    code, out = run(["contains", "--host", files["c5"], "--pattern", "fox_path"])
    assert code == 0 and out == "copy 0 1 2\n"


def test_params_colours():
    code, out = run(["params", "--phi", "0.5"])
    assert code == 0 and "colours 3" in out.splitlines()


def test_purepair_c5(files):
    code, out = run(["purepair", "--host", files["c5"], "--mode", "exact"])
    assert code == 0 and out.splitlines()[0] == "size 1"
    assert out.splitlines()[1] == "pair anticomplete; 0; 2"


def test_usage_errors_exit_1(files, capsys):
    assert run(["frobnicate"])[0] == 1
    assert run(["contains", "--host", files["k3"]])[0] == 1
    assert run(["gen", "random", "--n", "5", "--p", "0.5"])[0] == 1
    assert run(["experiment", "--n", "10"])[0] == 1
    assert "usage" in capsys.readouterr().err


def test_input_errors_exit_1(tmp_path):
    bad = tmp_path / "bad.ogr"
    bad.write_text("3 1\n0 7\n")
    assert run(["contains", "--host", str(bad), "--pattern", "h1"])[0] == 1
    assert run(["contains", "--host", str(tmp_path / "missing"), "--pattern", "h1"])[0] == 1


def test_gen_roundtrip(tmp_path):
    out = tmp_path / "g.ogr"
    assert run(["gen", "random", "--n", "30", "--p", "0.2", "--seed", "4", "-o", str(out)])[0] == 0
    code, text = run(["gen", "random", "--n", "30", "--p", "0.2", "--seed", "4", "--threads", "4"])
    assert out.read_text() == text


def test_blockade_actions(files):
    base = ["--host", files["multi"], "--equal", "3"]
    code, out = run(["blockade", "measures"] + base)
    assert code == 0 and "linkage 1" in out and "width 4" in out
    assert run(["blockade", "resistant"] + base)[0] == 0
    code, out = run(["blockade", "shrink"] + base)
    assert code == 0 and "outcome resistant" in out
    code, out = run(["blockade", "homog", "--k", "2"] + base)
    assert code == 0 and "validated True" in out


def test_rainbow_and_embed(files):
    args = ["--host", files["multi"], "--equal", "3", "--pattern", "monotone_path", "--k", "2"]
    assert run(["rainbow"] + args) == (0, "copy 0 4\n")
    code, out = run(["embed"] + args + ["--mode", "direct"])
    assert code == 0 and "copy 0 4" in out


def test_trichotomy_and_mainpair(files):
    code, out = run(["trichotomy", "--host", files["k3"], "--pattern", "fox_path"])
    assert code == 0 and "degree 0 2" in out
    code, out = run(["mainpair", "--host", files["c5"], "--pattern", "h1"])
    assert code in (0, 2)


def test_sampled_commands_need_seed(tmp_path):
    p = tmp_path / "big.ogr"
    assert run(["gen", "random", "--n", "40", "--p", "0.5", "--seed", "1", "-o", str(p)])[0] == 0
    assert run(["blockade", "resistant", "--host", str(p), "--equal", "2"])[0] == 1
    assert run(["blockade", "resistant", "--host", str(p), "--equal", "2", "--seed", "3",
                "--trials", "50"])[0] in (0, 2)


def test_leafcover_command(tmp_path):
    p = tmp_path / "g.ogr"
    run(["gen", "random", "--n", "80", "--p", "0.5", "--seed", "7", "-o", str(p)])
    code, out = run(["leafcover", "--host", str(p), "--equal", "8", "--k", "3", "--c", "0.9",
                     "--sigma", "0.5", "--sigma-prime", "0.75", "--phi", "1", "--mu", "0.9",
                     "--Lambda", "1", "--check", "exact"])
    assert code == 0 and "verified True" in out


def test_experiment_stdout(tmp_path):
    code, out = run(["experiment", "--construction", "empty", "--n", "8", "16", "--seeds", "0"])
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "construction,n,seed,polarity,z1,z2,min_size,mode,seconds"
    assert lines[2].startswith("empty,8,0,anticomplete,0 1 2 3,4 5 6 7,4,")


def test_measures_needs_no_seed(tmp_path):
    p = tmp_path / "g.ogr"
    run(["gen", "random", "--n", "60", "--p", "0.2", "--seed", "1", "-o", str(p)])
    code, out = run(["blockade", "measures", "--host", str(p), "--equal", "2"])
    assert code == 0 and out.startswith("width 30\n")

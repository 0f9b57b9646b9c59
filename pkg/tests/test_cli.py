import json

import pytest
from click.testing import CliRunner

from powres.cli import main


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "running": "x*y, y*z, z*u\n",
        "fork": "vars: a,x,y,b,z,c\nx*y*z, a*y*z, x*b*z, x*b*c\n",
        "free": "x, y, z\n",
        "cycle": "x*y, y*z, z*u, u*x\n",
        "crowded": "x*y, x*z, x*u, y*z, y*u\n",
        "bad": "x*y, *z\n",
        "wrongtree": "label: 0 x*y\nlabel: 1 z*u\nlabel: 2 y*z\nedge: 0 1\nedge: 1 2\n",
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def test_betti():
    res = run("betti", "--q", 2, "--r", 3)
    assert res.exit_code == 0 and res.output == "10 12 3\n"
    res = run("betti", "--q", 2, "--r", 3, "--pd")
    assert "pd I^r = 2, pd I^r/I^(r+1) = 3" in res.output


def test_help_everywhere():
    for cmd in ("tree", "power", "resolve", "koszul", "verify", "betti", "export"):
        res = run(cmd, "--help")
        assert res.exit_code == 0 and "Usage:" in res.output


def test_usage_error_exits_2():
    res = run("betti", "--q", 2, "--rr", 3)
    assert res.exit_code == 2
    assert "--r" in res.output  # click suggests the close match
    assert run("resolve").exit_code == 2
    assert run("nonsense").exit_code == 2


def test_tree(files):
    res = run("tree", "--ideal", files["running"])
    assert res.exit_code == 0
    assert "tau: 0 1" in res.output
    assert "[ 1  1]\n  [ 0  1]" in res.output


def test_tree_root_by_monomial(files):
    res = run("tree", "--ideal", files["running"], "--root", "y*z")
    assert res.exit_code == 0
    assert run("tree", "--ideal", files["running"], "--root", "x*z").exit_code == 2


def test_power_validate(files):
    res = run("power", "--ideal", files["running"], "--r", 2, "--validate")
    assert res.exit_code == 0
    assert "f-vector: 6 6 1" in res.output
    assert "FAIL" not in res.output and "faces closed: ok" in res.output


def test_power_json_and_svg(files, tmp_path):
    svg = tmp_path / "g.svg"
    res = run("power", "--ideal", files["running"], "--r", 2, "--json", "--svg", svg)
    doc = json.loads(res.output)
    assert doc["kind"] == "cell_complex" and len(doc["cells"]) == 13
    assert svg.read_text().count("<polygon") == 1


def test_resolve_formats(files, tmp_path):
    res = run("resolve", "--ideal", files["running"], "--r", 2)
    assert res.exit_code == 0 and res.output.startswith("ranks: 6 6 1\npd: 2\n")
    doc = json.loads(run("resolve", "--ideal", files["running"], "--r", 2, "--format", "json").output)
    assert doc["r"] == 2 and len(doc["differentials"]) == 2
    out = tmp_path / "res.m2"
    assert run("resolve", "--ideal", files["running"], "--r", 2, "--format", "m2", "-o", out).exit_code == 0
    assert "assert(D1*D2 == 0);" in out.read_text()


def test_rejections_exit_1(files):
    res = run("resolve", "--ideal", files["free"], "--r", 2)
    assert res.exit_code == 1
    assert "not of projective dimension one" in res.output and "certificate" in res.output
    assert run("tree", "--ideal", files["cycle"]).exit_code == 1
    res = run("tree", "--ideal", files["crowded"])
    assert res.exit_code == 1 and "at most as many generators as variables" in res.output
    res = run("tree", "--ideal", files["bad"])
    assert res.exit_code == 1 and "at offset 5" in res.output


def test_missing_file(tmp_path):
    res = run("tree", "--ideal", tmp_path / "nope.txt")
    assert res.exit_code == 1


def test_given_tree_that_fails_support(files):
    res = run("resolve", "--ideal", files["running"], "--r", 1, "--tree", files["wrongtree"])
    assert res.exit_code == 1 and "x*y*z" in res.output


def test_koszul(files):
    res = run("koszul", "--ideal", files["running"], "--r", 2, "--check-iso")
    assert res.exit_code == 0
    assert "g_1 = x*T1 - z*T0" in res.output and "rho isomorphism: ok" in res.output
    doc = json.loads(run("koszul", "--ideal", files["running"], "--r", 2, "--json").output)
    assert doc["kind"] == "strand"


def test_verify(files):
    res = run("verify", "--ideal", files["running"], "--r", 3, "--fields", "q,2,3,5", "--negative-controls")
    assert res.exit_code == 0, res.output
    assert "FAIL" not in res.output
    assert "translations are chain maps: ok, onto: ok" in res.output
    doc = json.loads(run("verify", "--ideal", files["fork"], "--r", 2, "--json").output)
    assert doc["ok"] and doc["ranks"] == [10, 12, 3] and doc["q"] == 3
    assert run("verify", "--ideal", files["running"], "--r", 2, "--fields", "q,4").exit_code == 2


def test_verify_refuses_unsupported_tree(files):
    assert run("verify", "--ideal", files["running"], "--r", 2, "--tree", files["wrongtree"]).exit_code == 1


def test_export(files, tmp_path):
    res = run("export")
    assert res.exit_code == 0 and json.loads(res.output) == {"schema_version": 1}
    assert run("export", "--format", "m2").exit_code == 2
    assert run("export", "--ideal", files["running"]).exit_code == 2
    for what in ("complex", "resolution", "chains", "strand"):
        doc = json.loads(run("export", "--ideal", files["running"], "--r", 2, "--what", what).output)
        assert doc["schema_version"] == 1
    assert "D0 = " in run("export", "--ideal", files["running"], "--r", 2, "--format", "m2").output
    assert run("export", "--ideal", files["running"], "--r", 2, "--what", "strand", "--format", "m2").exit_code == 2
    assert run("export", "--ideal", files["running"], "--r", 2, "--format", "svg").output.startswith("<svg")


def test_guardrail(files, monkeypatch):
    monkeypatch.setenv("POWRES_MAX_CELLS", "5")
    res = run("resolve", "--ideal", files["running"], "--r", 3)
    assert res.exit_code == 1 and "POWRES_MAX_CELLS" in res.output

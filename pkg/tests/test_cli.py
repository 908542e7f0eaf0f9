import json

import pytest
from click.testing import CliRunner

from artifact.cli import main, parse_m
from artifact.combinatorics import quiver_K
from artifact.errors import ParameterOutOfRange
from artifact.gwsa import preset
from artifact.gwsa import q3k_data
from artifact.textformat import parse, serialize

TREE = """[vertices]
1 2
[arrows]
p 1 1
q 1 2
r 2 1
s 2 2
[f]
(p q s r)
"""


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, data in [("q3k222", preset("Q(3K)", 2, 2, 2)), ("d3k", preset("D(3K)", 1, 1, 1)), ("q3k111", q3k_data((1, 1, 1), Z=False))]:
        path = tmp_path / f"{name}.txt"
        path.write_text(serialize(data))
        out[name] = str(path)
    (tmp_path / "tree.txt").write_text(TREE)
    out["tree"] = str(tmp_path / "tree.txt")
    bad_t = serialize(preset("D(3K)", 1, 1, 1)) + "\n[t]\na1 0 1\n"
    (tmp_path / "bad_t.txt").write_text(bad_t)
    out["bad_t"] = str(tmp_path / "bad_t.txt")
    (tmp_path / "bad_f.txt").write_text(TREE.replace("(p q s r)", "(p q s r"))
    out["bad_f"] = str(tmp_path / "bad_f.txt")
    return out


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_parse_m():
    q = quiver_K()
    assert parse_m("1,2,3", q) == {"a1": 1, "a2": 2, "a3": 3}
    assert parse_m("a2=4", q) == {"a2": 4}
    with pytest.raises(ParameterOutOfRange):
        parse_m("1,2", q)
    with pytest.raises(ParameterOutOfRange):
        parse_m("b1=2", q)


def test_validate(files, tmp_path):
    r = run("validate", "--input", files["q3k222"], "--out-dir", str(tmp_path / "v"))
    assert r.exit_code == 0
    rep = json.loads((tmp_path / "v" / "validate.json").read_text())
    assert rep["dim"] == 24 and rep["ok"] and rep["seed"] == 0


def test_validate_errors(files):
    r = run("validate", "--input", files["bad_t"])
    assert r.exit_code == 2 and "InvalidTData" in r.output
    r = run("validate", "--input", files["bad_f"])
    assert r.exit_code == 2 and "line 9, column 1" in r.output
    r = run("validate", "--input", files["d3k"], "--prime", "4")
    assert r.exit_code == 2


def test_report(files, tmp_path):
    r = run("report", "--input", files["d3k"], "--what", "cartan", "--out-dir", str(tmp_path))
    assert r.exit_code == 0
    assert json.loads((tmp_path / "cartan.json").read_text())["cartan"] == [[2, 1, 1], [1, 2, 1], [1, 1, 2]]
    r = run("report", "--input", files["d3k"], "--what", "decomp", "--out-dir", str(tmp_path))
    assert json.loads((tmp_path / "decomp.json").read_text())["D"] == [[1, 0, 1], [1, 1, 0], [0, 1, 1]]
    r = run("report", "--input", files["d3k"], "--what", "graph")
    assert r.exit_code == 0 and r.output.startswith("graph brauer")
    r = run("report", "--input", files["q3k111"], "--what", "centre", "--out-dir", str(tmp_path))
    assert json.loads((tmp_path / "centre.json").read_text())["centre_dim"] == 4


def test_bijection_ribbon(files, tmp_path):
    out = tmp_path / "b"
    r = run("bijection", "--input", files["tree"], "--m", "1,1,1", "--m2", "1,3,1", "--out-dir", str(out))
    assert r.exit_code == 0, r.output
    cert = json.loads((out / "certificate.json").read_text())
    assert cert["verdict"] == "isomorphic" and cert["nodes"] == [6, 6]
    for name in ("poset1.json", "poset2.json", "transport.json"):
        json.loads((out / name).read_text())
    assert (out / "poset1.dot").read_text().startswith("digraph")


def test_bijection_guards(files):
    r = run("bijection", "--input", files["q3k111"], "--m", "1,2,2", "--m2", "2,2,2", "--mode", "gamma0")
    assert r.exit_code == 2 and "m(i)_a1 >= m_a1 + 1" in r.output
    r = run("bijection", "--input", files["q3k222"], "--m", "1,1,1", "--m2", "2,1,1")
    assert r.exit_code == 2 and "ribbon mode" in r.output
    r = run("bijection", "--input", files["d3k"], "--m", "1,1,1", "--m2", "2,1,1", "--node-cap", "4")
    assert r.exit_code == 3


def test_preset_command():
    r = run("preset", "Q(3K)", "2", "2", "2")
    assert r.exit_code == 0
    assert parse(r.output).m == {"a1": 2, "a2": 2, "a3": 2}
    assert run("preset", "nope").exit_code == 2

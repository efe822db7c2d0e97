import io as stdio
import json
import subprocess
import sys

import pytest

from polymat import io
from polymat.cli import run
from polymat.corpus import corpus, corpus_rep
from polymat.linrep import rep_rank_function
from polymat.lp import FarkasCertificate, build_tensor_feasibility_system, verify_certificate
from polymat.tensor import kronecker


def call(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", stdio.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


@pytest.fixture
def cli(capsys, monkeypatch):
    return lambda argv, stdin=None: call(capsys, monkeypatch, argv, stdin)


def corpus_json(cli, *args):
    code, data, _ = cli(["corpus", *args])
    assert code == 0
    return json.dumps(data)


def test_validate(cli):
    code, data, _ = cli(["validate", "--method", "all"], corpus_json(cli, "u23"))
    assert code == 0 and data["is_polymatroid"] and data["is_matroid"]
    assert set(data["methods"]) == {"direct", "conditional_all", "elemental"}
    bad = io.dumps({"ground": ["a", "b"], "ranks": [
        {"set": [], "value": "0"}, {"set": ["a"], "value": "2"},
        {"set": ["b"], "value": "0"}, {"set": ["a", "b"], "value": "1"}]})
    code, data, _ = cli(["validate", "--method", "elemental"], bad)
    assert code == 1 and not data["is_polymatroid"]
    w = data["methods"]["elemental"]["witness"]
    assert w == {"X": ["a"], "Y": ["b"], "Z": ["b"], "value": "-1"}


def test_vamos_quadruple(cli):
    argv = ["ingleton", "--quadruple", "a,a'", "b,b'", "c,c'", "d,d'"]
    code, data, _ = cli(argv, corpus_json(cli, "vamos"))
    assert code == 1 and data["delta"] == "-1" and data["satisfied"] is False


def test_ingleton_scans(cli):
    code, data, _ = cli(["ingleton", "--exhaustive"], corpus_json(cli, "u23"))
    assert code == 0 and data["satisfied"] and data["delta"] is None
    code, data, _ = cli(["ingleton"], corpus_json(cli, "ingleton-violator-4"))
    assert code == 1 and data["quadruple"] == [["a"], ["b"], ["c"], ["d"]]
    first = cli(["ingleton", "--sample", "500", "--seed", "4"], corpus_json(cli, "fano"))
    again = cli(["ingleton", "--sample", "500", "--seed", "4"], corpus_json(cli, "fano"))
    assert first == again and first[0] == 0


def test_rank_and_kron_pipeline(cli, tmp_path):
    rep = tmp_path / "rep.json"
    io.save(rep, io.rep_to_dict(corpus_rep("pair")))
    u = tmp_path / "u.json"
    io.save(u, io.rep_to_dict(corpus_rep("u23")))
    f = tmp_path / "f.json"
    code, data, _ = cli(["rank", str(rep)])
    assert code == 0 and io.set_function_from_dict(data) == corpus("pair")
    io.save(f, data)
    out = tmp_path / "kron.json"
    code, table, _ = cli(["tensor", "kron", str(rep), str(u), "-o", str(out)])
    assert code == 0 and len(table["ranks"]) == 64
    assert io.load_rep(out).ambient_dim == 6
    g = tmp_path / "g.json"
    io.save(g, table)
    code, data, _ = cli(["tensor", "check", str(g), str(f)])
    assert code == 0 and data["ok"] and data["bounds"]["ok"]


def test_tensor_check_failure(cli, tmp_path):
    f = tmp_path / "f.json"
    io.save(f, io.set_function_to_dict(corpus("pair")))
    # a product table of the wrong factor fails the axioms
    g = tmp_path / "g.json"
    io.save(g, io.set_function_to_dict(rep_rank_function(kronecker(corpus_rep("free"), corpus_rep("u23")))))
    code, data, _ = cli(["tensor", "check", str(g), str(f)])
    assert code == 1 and not data["ok"] and data["axioms"]["failures"]


def test_tensor_search(cli, tmp_path):
    out = tmp_path / "w.json"
    code, data, _ = cli(["tensor", "search", "-o", str(out)], corpus_json(cli, "free", "1"))
    assert code == 0 and data["feasible"]
    assert json.loads(out.read_text()) == data


def test_tensor_search_violator(cli, tmp_path):
    out = tmp_path / "cert.json"
    code, data, _ = cli(["tensor", "search", "-o", str(out)], corpus_json(cli, "ingleton-violator-4"))
    assert code == 1 and data["feasible"] is False
    system = build_tensor_feasibility_system(corpus("ingleton-violator-4"))
    cert = io.certificate_from_dict(json.loads(out.read_text())["certificate"], system)
    assert isinstance(cert, FarkasCertificate) and verify_certificate(system, cert)


def test_ci_commands(cli, tmp_path):
    rep = tmp_path / "rep.json"
    io.save(rep, io.rep_to_dict(corpus_rep("u23")))
    f = tmp_path / "f.json"
    io.save(f, io.set_function_to_dict(corpus("u23")))
    code, g, _ = cli(["tensor", "kron", str(rep), str(rep)])
    gpath = tmp_path / "g.json"
    io.save(gpath, g)

    ext = tmp_path / "ext.json"
    code, data, _ = cli(["ci", "extend", str(f), "--tensor", str(gpath), "--x", "1", "--y", "2,3",
                         "-o", str(ext)])
    assert code == 0 and data["ground"] == ["1", "2", "3", "z"]
    code, data, _ = cli(["ci", "check", str(ext), "--z", "z", "--x", "1", "--y", "2,3"])
    assert code == 0 and data["valid"] and data["excess"] == "0"
    # the empty string names the empty set
    code, data, _ = cli(["ci", "check", str(ext), "--z", "z", "--x", "", "--y", "2,3"])
    assert data["X"] == []

    code, data, _ = cli(["ci", "extend-linear", str(rep), "--x", "1,2", "--y", "2,3", "--z", "w"])
    assert code == 0 and data["ground"][-1] == "w" and len(data["subspaces"]["w"]) == 2

    code, data, _ = cli(["ci", "all-pairs", str(f), "--tensor", str(gpath)])
    assert code == 0 and data == {"ok": True, "pairs": 64, "failures": []}


def test_exit_code_2(cli, tmp_path):
    assert cli(["validate"], "{not json")[0] == 2
    assert cli(["validate", str(tmp_path / "missing.json")])[0] == 2
    code, _, err = cli(["ingleton", "--quadruple", "a", "b", "c", "nope"], corpus_json(cli, "vamos"))
    assert code == 2 and "unknown label" in err and err.count("\n") == 1
    assert cli(["corpus", "nonesuch"])[0] == 2
    assert cli(["bogus"])[0] == 2
    assert cli(["tensor", "search"], corpus_json(cli, "vamos"))[0] == 2
    code, _, err = cli(["ingleton", "--exhaustive"], corpus_json(cli, "vamos"))
    assert code == 2


def test_pretty_and_threads(cli, monkeypatch, capsys):
    monkeypatch.setenv("POLYMAT_THREADS", "3")
    assert run(["--pretty", "corpus", "u23"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("{\n") and json.loads(out)["ground"] == ["1", "2", "3"]
    assert run(["--threads", "2", "corpus", "uniform", "2", "4"]) == 0
    assert len(json.loads(capsys.readouterr().out)["ranks"]) == 16
    assert run(["--threads", "0", "corpus", "u23"]) == 2
    monkeypatch.setenv("POLYMAT_THREADS", "many")
    assert run(["corpus", "u23"]) == 2


def test_shell_pipelines():
    exe = [sys.executable, "-m", "polymat.cli"]
    vam = subprocess.run(exe + ["corpus", "vamos"], capture_output=True, text=True, check=True).stdout
    res = subprocess.run(exe + ["ingleton", "--quadruple", "a,a'", "b,b'", "c,c'", "d,d'"],
                         input=vam, capture_output=True, text=True)
    assert res.returncode == 1 and json.loads(res.stdout)["delta"] == "-1"
    u = subprocess.run(exe + ["corpus", "u23"], capture_output=True, text=True, check=True).stdout
    res = subprocess.run(exe + ["validate", "--method", "all"], input=u, capture_output=True, text=True)
    assert res.returncode == 0

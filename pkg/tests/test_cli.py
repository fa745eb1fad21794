import io
import json
import subprocess
import sys

from qktwist import KRing
from qktwist.cli import run
from qktwist.expr import parse_qrat


def call(*argv):
    out = io.StringIO()
    status = run(list(argv), out)
    return status, out.getvalue()


def test_j_json():
    status, out = call("j", "--n", "2", "--deg", "1", "--format", "json")
    assert status == 0
    data = json.loads(out)
    assert data == {"n": 2, "truncation": 1, "terms": [
        {"d": [0], "value": "1−q"}, {"d": [1], "value": "(1−q)/(1−P·q)^2"}]}


def test_project():
    status, out = call("project", "--expr", "q^2/(1-q)", "--format", "json")
    assert status == 0
    assert json.loads(out) == {"expr": "q^2/(1-q)", "plus": "−1−q", "minus": "1/(1−q)"}
    status, out = call("project", "--expr", "q^2/(1-q)", "--ascii")
    assert out == "plus: -1-q\nminus: 1/(1-q)\n"


def test_pair_and_dilaton():
    assert call("pair", "--n", "2", "--f", "1", "--g", "1/(1-q)", "--delta", "P^-1") == (0, "−2\n")
    twist = json.dumps({"mode": "infinitesimal", "entries": {"1": "eps*P*q"}})
    status, out = call("dilaton", "--n", "2", "--eps-order", "1", "--twist", twist, "--ascii")
    assert status == 0
    # (1 - q)(1 - eps P)
    assert out == "1-eps*P+(-1+eps*P)*q\n"


def test_i_cotangent_and_lefschetz_agree():
    _, a = call("i-cotangent", "--n", "2", "--deg", "2", "--format", "json")
    _, b = call("lefschetz", "--n", "2", "--deg", "2", "--mode", "dual",
                "--bundle", "1:lam", "--bundle", "1:lam", "--format", "json")
    ring = KRing(2)
    ta, tb = json.loads(a)["terms"], json.loads(b)["terms"]
    assert [t["d"] for t in ta] == [t["d"] for t in tb]
    for x, y in zip(ta, tb):
        assert parse_qrat(x["value"], ring) == parse_qrat(y["value"], ring)


def test_output_is_deterministic():
    args = ("i-cotangent", "--n", "3", "--deg", "2", "--format", "json")
    assert call(*args) == call(*args)


def test_verify_suite():
    status, out = call("verify", "--suite", "lemma", "--format", "json")
    data = json.loads(out)
    assert status == 0 and data["passed"]
    assert len(data["results"]) == 8 * 24


def test_exit_statuses(tmp_path):
    assert call("nonsense")[0] == 2
    assert call("j", "--n", "x")[0] == 2
    assert call("project", "--expr", "1/(1-q-q^2)")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("j", "--config", str(bad))[0] == 3
    assert call("j", "--n", "0")[0] == 3
    assert call("j", "--n", "500")[0] == 4
    assert call("j", "--deg", "99")[0] == 4


def test_config_file(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"n": 2, "truncation": 1, "format": "json"}))
    status, out = call("j", "--config", str(cfg))
    assert status == 0 and json.loads(out)["truncation"] == 1
    # flags win over the file
    status, out = call("j", "--config", str(cfg), "--deg", "0")
    assert json.loads(out)["truncation"] == 0
    cfg.write_text(json.dumps({"colour": "red"}))
    assert call("j", "--config", str(cfg))[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qktwist", "j", "--n", "1", "--deg", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "Q^0: 1−q\n"


def test_verify_all_passes():
    status, out = call("verify", "--suite", "all")
    assert status == 0
    assert out.splitlines()[-1].endswith("checks passed")
    assert "FAIL" not in out

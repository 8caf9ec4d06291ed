import json
import subprocess
import sys
from pathlib import Path

import pytest

from relend import adjoint
from relend import registry as R
from relend.cli import main
from relend.exactla import Mat
from relend.hopf import hopf_to_json

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def bad_assoc(tmp_path):
    d = hopf_to_json(R.hopf("c3"))
    # r * r = r instead of r^2 breaks associativity only
    d["mult"] = [[i, j, 1 if (i, j) == (1, 1) else (i + j) % 3, "1"] for i in range(3) for j in range(3)]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(d))
    return f


def test_check_builtin(capsys):
    code, rep = run_json(capsys, "check", "--builtin", "sweedler")
    assert code == 0 and rep["pass"] and rep["failing"] == []


def test_check_file_round_trip(capsys, tmp_path):
    f = tmp_path / "s3.json"
    f.write_text(json.dumps(hopf_to_json(R.hopf("s3"))))
    code, rep = run_json(capsys, "check", str(f))
    assert code == 0 and rep["dim"] == 6


def test_check_bad_associativity(capsys, bad_assoc):
    code, rep = run_json(capsys, "check", str(bad_assoc))
    assert code == 1 and rep["failing"] == ["associativity"]


def test_malformed_json(capsys, tmp_path):
    f = tmp_path / "broken.json"
    f.write_text("{not json")
    code, rep = run_json(capsys, "check", str(f))
    assert code == 2 and rep["error"]["type"] == "JSONDecodeError"
    code, rep = run_json(capsys, "check", str(tmp_path / "missing.json"))
    assert code == 2 and rep["error"]["type"] == "FileNotFoundError"
    code, rep = run_json(capsys, "check", "--builtin", "nope")
    assert code == 2 and rep["error"]["type"] == "KeyError"


def test_usage_error_is_input_error(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_adjoint_s3(capsys):
    code, rep = run_json(capsys, "adjoint", "--builtin", "s3")
    assert code == 0
    assert rep["end"]["dim_end"] == 6
    checks = rep["algebra"]["checks"]
    assert checks["commutative"] and checks["connected"]


def test_adjoint_sweedler(capsys):
    code, rep = run_json(capsys, "adjoint", "--builtin", "sweedler", "--simple")
    assert code == 0 and rep["end"]["dim_end"] == 4 and rep["algebra"]["checks"]["simple"]


def test_adjoint_text(capsys):
    code, out = run(capsys, "adjoint", "--builtin", "c2", "--format", "text")
    assert code == 0
    assert "dim_end" in out and "commutative" in out and not out.lstrip().startswith("{")


def test_relative_normal_subgroup(capsys):
    code, rep = run_json(capsys, "relative", "--builtin", "s3", "--normal-subgroup", "A3")
    assert code == 0 and rep["end"]["dim_end"] == 3 and "model_iso" in rep["algebra"]
    assert rep["dimension_formula"]


def test_relative_quotient_file(capsys):
    code, rep = run_json(capsys, "relative", "--builtin", "sweedler", "--quotient", str(DATA / "sw-to-c2.json"))
    assert code == 0 and rep["end"]["dim_end"] == 2


def test_relative_pair(capsys):
    code, rep = run_json(capsys, "relative", "--pair", "fn-s3/fn-c2")
    assert code == 0 and rep["end"]["dim_end"] == 3


def test_relative_not_normal(capsys):
    code, rep = run_json(capsys, "relative", "--builtin", "s3", "--normal-subgroup", "{e,(12)}")
    assert code == 2 and rep["error"]["type"] == "NotNormal"


def test_relative_not_surjective(capsys, tmp_path):
    f = tmp_path / "unit.json"
    f.write_text(json.dumps({"schema": "hopfmap-v1", "source": {"builtin": "sweedler"}, "target": {"builtin": "c2"},
                             "matrix": [["1", "0", "0", "0"], ["0", "0", "0", "0"]]}))
    code, rep = run_json(capsys, "relative", "--builtin", "sweedler", "--quotient", str(f))
    assert code == 2 and "error" in rep


def test_relative_model_mismatch_is_falsification(capsys, monkeypatch):
    def broken(h, p, e=None):
        raise adjoint.ModelMismatch("forced")

    monkeypatch.setattr("relend.cli.verify_coinvariant_model", broken)
    code, rep = run_json(capsys, "relative", "--builtin", "s3", "--normal-subgroup", "A3")
    assert code == 1 and rep["error"]["type"] == "ModelMismatch"


def test_compare_deligne(capsys):
    code, rep = run_json(capsys, "compare", "--deligne", "c2", "c2")
    assert code == 0 and rep["pass"] and rep["deligne"]["invertible"]


def test_compare_tower(capsys):
    code, rep = run_json(capsys, "compare", "--tower", "s3", "A3", "{e}")
    assert code == 0
    assert [c["dim"] for c in rep["tower"]["carriers"]] == [1, 3, 6]
    assert all(s["algebra_map"] for s in rep["tower"]["inclusions"])


def test_compare_tower_not_normal(capsys):
    code, rep = run_json(capsys, "compare", "--tower", "s3", "{e,(12)}")
    assert code == 2 and rep["error"]["type"] == "NotNormal"


def test_determinism(capsys):
    _, a = run(capsys, "relative", "--builtin", "sweedler", "--quotient", str(DATA / "sw-to-c2.json"))
    _, b = run(capsys, "relative", "--builtin", "sweedler", "--quotient", str(DATA / "sw-to-c2.json"))
    assert a == b


def test_verify_fast(capsys):
    code, rep = run_json(capsys, "verify", "--suite", "fast")
    assert code == 0 and rep["failing"] == []
    assert [c["criterion"] for c in rep["criteria"]] == list(range(1, 12))


def _flip(e, x):
    # the symmetric swap E (x) X -> X (x) E in place of the half-braiding
    d, dx = e.dim, x.dim
    rows = [dict() for _ in range(dx * d)]
    for i in range(d):
        for a in range(dx):
            rows[a * d + i][i * dx + a] = 1
    return Mat(dx * d, d * dx, rows)


def test_verify_negative_control(capsys, monkeypatch):
    monkeypatch.setattr(adjoint, "end_half_braiding", _flip)
    code, rep = run_json(capsys, "verify", "--suite", "fast")
    assert code == 1 and not rep["pass"]
    assert 4 in rep["failing"] and 11 in rep["failing"]


def test_entry_point_subprocess():
    r = subprocess.run([sys.executable, "-m", "relend.cli", "check", "--builtin", "c2"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["pass"]

import json
import subprocess
import sys

import pytest

from oadim.cli import run

LS = "2 3 4\n0 0 0\n0 1 1\n1 0 1\n1 1 0\n"
NOT_OA = "2 3 4\n0 0 0\n0 1 1\n1 0 1\n1 1 1\n"


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    (tmp_path / "ls.txt").write_text(LS)
    (tmp_path / "bad.txt").write_text(NOT_OA)
    return tmp_path


def test_transform(capsys, files):
    code, out, _ = call(capsys, "transform", str(files / "ls.txt"))
    obj = json.loads(out)
    assert code == 0
    assert obj["signed_J"] == [4, 0, 0, 0, 0, 0, 0, -4]
    assert obj["J"][-1] == {"u": [0, 1, 2], "values_on_u": [4, -4, -4, 4, -4, 4, 4, -4]}


def test_verify_ok_and_failure(capsys, files):
    code, out, _ = call(capsys, "verify", str(files / "ls.txt"), "--s", "2")
    assert code == 0 and "violations=0" in out
    code, out, _ = call(capsys, "verify", str(files / "bad.txt"), "--s", "2")
    assert code == 1
    assert "margin on columns [0, 2] symbol [1, 0]" in out


def test_dims_reports_both_values(capsys):
    code, out, _ = call(capsys, "dims", "--n", "10", "--k", "6", "--s", "2")
    assert code == 0 and out.strip().endswith("dimensions=998730, 467289")
    code, out, _ = call(capsys, "dims", "--n", "10", "--k", "6", "--s", "2", "--format", "json")
    assert json.loads(out)["dimensions"] == [998730, 467289]


def test_certify_exit_codes(capsys):
    code, out, _ = call(capsys, "certify", "--n", "2", "--k", "3", "--s", "2")
    assert code == 0 and "dim=1" in out and "surviving U blocks=[3]" in out
    code, out, _ = call(capsys, "certify", "--n", "2", "--k", "4", "--s", "2")
    assert code == 1 and "NOT certified" in out
    code, _, _ = call(capsys, "certify", "--n", "3", "--k", "4", "--s", "2", "--budget-nodes", "5")
    assert code == 3


def test_enumerate_deterministic_and_seeded(tmp_path):
    base = ["enumerate", "--n", "3", "--k", "3", "--s", "1"]
    a, b, c = tmp_path / "a.jsonl", tmp_path / "b.jsonl", tmp_path / "c.jsonl"
    assert run(base + ["--out", str(a), "--seed", "5"]) == 0
    assert run(base + ["--out", str(b), "--seed", "5"]) == 0
    assert a.read_bytes() == b.read_bytes()
    # node counts depend on the order, the solution lines do not
    assert run(base + ["--out", str(c), "--workers", "2"]) == 0
    assert a.read_text().splitlines()[:-1] == c.read_text().splitlines()[:-1]
    assert len(a.read_text().splitlines()) == 37


def test_constraints_and_emit(capsys):
    code, out, _ = call(capsys, "constraints", "--n", "3", "--k", "4", "--s", "2", "--T", "2")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 81 and set(rows[0]) == {"u", "tuple", "coeffs"}
    code, out, _ = call(capsys, "emit", "--n", "3", "--k", "4", "--s", "2", "--T", "2")
    assert code == 0 and sum(1 for ln in out.splitlines() if ln.startswith(" c")) == 54 + 81
    code1, out1, _ = call(capsys, "emit", "--n", "2", "--k", "3", "--s", "2", "--format", "json")
    code2, out2, _ = call(capsys, "emit", "--n", "2", "--k", "3", "--s", "2", "--format", "json")
    assert code1 == code2 == 0 and out1 == out2


def test_orbits(capsys, tmp_path):
    code, out, _ = call(capsys, "orbits", "--k", "4", "--group", "od")
    assert code == 0 and "order=1920" in out and "orbits on X^2: 3" in out
    code, out, _ = call(capsys, "orbits", "--k", "3", "--n", "3")
    assert "orbits on X^2: 4" in out
    gen = tmp_path / "g.json"
    gen.write_text(json.dumps([{"col_perms": [[1, 0], [0, 1]], "col_shuffle": [0, 1]}, {"R": 1}]))
    code, out, _ = call(capsys, "orbits", "--k", "2", "--generators", str(gen))
    assert code == 0 and "order=" in out


def test_usage_errors(capsys, files):
    assert call(capsys, "dims", "--n", "2")[0] == 2
    assert call(capsys, "bogus")[0] == 2
    assert call(capsys, "constraints", "--n", "3", "--k", "4", "--s", "2", "--T", "1")[0] == 2
    assert call(capsys, "constraints", "--n", "3", "--k", "4", "--s", "2", "--T", "x")[0] == 2
    assert call(capsys, "verify", str(files / "ls.txt"))[0] == 2
    assert call(capsys, "orbits", "--k", "2", "--n", "3", "--group", "od")[0] == 2
    assert call(capsys, "transform", str(files / "missing.txt"))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oadim", "dims", "--n", "3", "--k", "2", "--s", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "dimensions=4" in proc.stdout

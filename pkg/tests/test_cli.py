import json
import subprocess
import sys

import pytest

from planebranch import campaign, cli
from planebranch.cli import dispatch, dumps
from planebranch.tower import KeyTower


def run(capsys, *argv):
    code = dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name, argv in {"cusp": ["--char", "2,3", "--xi", "1"], "line": ["--char", "1"],
                       "f4613": ["--char", "4,6,13", "--xi", "1,1"]}.items():
        code, out, _ = run(capsys, "branch", "build", *argv)
        assert code == 0
        paths[name] = tmp_path / f"{name}.json"
        paths[name].write_text(out)
    return paths


def test_charseq_info(capsys):
    code, out, _ = run(capsys, "charseq", "info", "4,6,13")
    doc = json.loads(out)
    assert code == 0 and doc["conductor"] == 16
    assert doc["gaps"] == [1, 2, 3, 5, 7, 9, 11, 15] and doc["bezout"] == [[3], [5, 1]]


def test_intersect(capsys, files):
    code, out, _ = run(capsys, "intersect", "--f", str(files["cusp"]), "--g", str(files["line"]))
    assert code == 0 and json.loads(out) == {"i0": 3, "dx": "3/2", "d": "3/2"}
    code, out, _ = run(capsys, "intersect", "--f", str(files["cusp"]), "--g", str(files["cusp"]),
                       "--cap", "128")
    assert code == 0 and json.loads(out)["i0"] == "exhausted"


def test_bayer(capsys):
    code, out, _ = run(capsys, "bayer", "--f-char", "2,3", "--g-char", "2,3", "--limit", "12")
    assert code == 0 and json.loads(out)["members"] == [4, 6, 7, 8, 9, 10, 11, 12]
    code, out, _ = run(capsys, "bayer", "--f-char", "4,6,13", "--g-char", "2,3", "--mode", "literal")
    assert json.loads(out)["members"] == [8, 12]


def test_realize_and_distance(capsys, files):
    code, out, _ = run(capsys, "realize", "--f", str(files["f4613"]), "--g-char", "2,3", "--n", "12",
                       "--seed", "5")
    doc = json.loads(out)
    assert code == 0 and doc["i0_verified"] is True
    KeyTower.from_json(doc)
    code, out, _ = run(capsys, "distance", "--f", str(files["cusp"]), "--r", "7/4", "--seed", "3")
    doc = json.loads(out)
    assert code == 0 and doc["d"] == "7/4" and doc["i0"] == 7 and doc["case"] == "s-equal-1"


def test_branch_verify(capsys, files, tmp_path):
    code, out, _ = run(capsys, "branch", "verify", "--f", str(files["f4613"]), "--char", "4,6,13")
    assert code == 0 and json.loads(out)["certificate"] == "construction"
    code, out, err = run(capsys, "branch", "verify", "--f", str(files["f4613"]), "--char", "2,3")
    assert code == 1 and "error" in json.loads(err)
    bare = tmp_path / "bare.json"
    bare.write_text(json.dumps(json.loads(files["cusp"].read_text())["branch"]))
    code, out, _ = run(capsys, "branch", "verify", "--f", str(bare), "--char", "2,3")
    assert code == 1  # y^2 + x^3 against itself: i0 is not finite


def test_perturbed_build(capsys):
    code, out, _ = run(capsys, "branch", "build", "--char", "2,3", "--xi", "1", "--perturb", "5,0:2")
    assert code == 0
    assert {"y": 0, "x": 5, "c": "2"} in json.loads(out)["branch"]["terms"]


def test_roundtrip_is_byte_identical(files):
    text = files["f4613"].read_text().strip()
    assert dumps(KeyTower.from_json(json.loads(text)).to_json()) == text


def test_seeded_runs_are_reproducible(capsys, monkeypatch):
    argv = ["--field", "fp:101", "branch", "build", "--char", "4,6,13"]
    a = run(capsys, "--seed", "9", *argv[:])
    b = run(capsys, "--seed", "9", *argv[:])
    assert a == b
    monkeypatch.setenv(cli.SEED_ENV, "9")
    assert run(capsys, *argv) == a
    assert run(capsys, "--seed", "10", *argv)[1] != a[1]


def test_exit_codes(capsys, monkeypatch):
    assert run(capsys, "--no-such-flag")[0] == 64
    assert run(capsys, "charseq", "info")[0] == 64
    assert run(capsys, "bayer", "--f-char", "2,3")[0] == 64
    code, _, err = run(capsys, "charseq", "info", "4,6,8")
    assert code == 1 and json.loads(err)["error"] == "Char1Violation"
    assert run(capsys, "--field", "fp:6", "charseq", "info", "2,3")[0] == 1
    code, out, _ = run(capsys, "check", "--theorem", "sti", "--trials", "3", "--seed", "1")
    assert code == 0 and json.loads(out)["failures"] == []
    monkeypatch.setitem(campaign.THEOREMS, "sti", lambda *a: {"fake": True})
    code, out, _ = run(capsys, "check", "--theorem", "sti", "--trials", "2", "--seed", "1")
    doc = json.loads(out)
    assert code == 2 and [f["trial"] for f in doc["failures"]] == [0, 1]


def test_out_file(capsys, tmp_path):
    target = tmp_path / "info.json"
    code, out, _ = run(capsys, "--out", str(target), "charseq", "info", "2,3")
    assert code == 0 and target.read_text() == out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "planebranch", "charseq", "info", "2,3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["conductor"] == 2

import json
import subprocess
import sys

import numpy as np
import pytest

from unitary_designs.cli import run
from unitary_designs.unitary_sets import UnitarySet, save_set, weyl_heisenberg


def report(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_dims(capsys):
    code, rep = report(capsys, ["dims", "--d", "3", "--r", "2", "--s", "2"])
    assert code == 0
    assert rep["outputs"]["dim_hom"] == 994
    assert rep["outputs"]["closed_form_agrees"]
    assert rep["tolerances"] == {"tol": 1e-6, "cluster_tol": 1e-6, "unitarity_tol": 1e-8}
    assert rep["subcommand"] == "dims"


def test_dims_list(capsys):
    code, rep = report(capsys, ["dims", "--d", "3", "--r", "1", "--s", "1", "--list"])
    assert code == 0
    assert {tuple(e["mu"]) for e in rep["outputs"]["signatures"]} == {(0, 0, 0), (1, 0, -1)}


def test_moment(capsys):
    code, rep = report(capsys, ["moment", "--d", "2", "--t", "4"])
    assert code == 0 and rep["outputs"]["moment"] == 14


def test_verify_exit_codes(capsys, tmp_path, chau3):
    path = str(tmp_path / "chau3.json")
    save_set(chau3, path)
    code, rep = report(capsys, ["verify", path, "--t", "2"])
    assert code == 0 and rep["verdict"] is True
    code, rep = report(capsys, ["verify", path, "--t", "3"])
    assert code == 1 and rep["verdict"] is False
    code, rep = report(capsys, ["verify", path, "--t", "2", "--criterion", "zonal"])
    assert code == 0 and rep["outputs"]["criterion"] == "zonal_sums"


def test_strength_and_profile(capsys, tmp_path):
    path = str(tmp_path / "wh.json")
    save_set(weyl_heisenberg(3), path)
    code, rep = report(capsys, ["strength", path, "--max-t", "3"])
    assert code == 0 and rep["outputs"]["strength"] == 1
    code, rep = report(capsys, ["profile", path])
    assert code == 0 and rep["outputs"]["degree"] == 1


def test_bounds(capsys):
    code, rep = report(capsys, ["bounds", "rel2", "--d", "3", "--alpha", "0", "--beta", "1"])
    assert code == 0
    assert rep["outputs"]["bound"] == 72.0 and rep["outputs"]["exact"] == "72"
    code, rep = report(capsys, ["bounds", "rel1", "--d", "3", "--alpha", "1/2"])
    assert rep["outputs"]["exact"] == "17"
    assert rep["inputs"]["alpha"] == {"value": 0.5, "exact": "1/2"}
    code, rep = report(capsys, ["bounds", "rel1", "--d", "3", "--alpha", "1"])
    assert code == 2 and "alpha < 1" in rep["error"]["message"]


def test_group_and_chartab(capsys, tmp_path):
    out = str(tmp_path / "c2.json")
    code, rep = report(capsys, ["group", "clifford", "--q", "2", "--out", out])
    assert code == 0 and rep["outputs"]["size"] == 24
    tab = str(tmp_path / "c2.chartab")
    code, rep = report(capsys, ["chartab", "export", out, "--out", tab])
    assert code == 0
    code, rep = report(capsys, ["chartab", "check", tab, "--t", "3"])
    assert code == 0 and rep["verdict"] is True
    code, rep = report(capsys, ["chartab", "check", tab, "--t", "4"])
    assert code == 1


def test_group_close_too_large(capsys, tmp_path):
    th = np.sqrt(2)
    R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    gens = str(tmp_path / "g.json")
    save_set(UnitarySet(R[None]), gens)
    code, rep = report(capsys, ["group", "close", gens, "--max-size", "50"])
    assert code == 2 and rep["error"]["type"] == "GroupTooLargeError"


def test_weighted_fit_and_prune(capsys, tmp_path):
    pool = str(tmp_path / "pool.json")
    fitted = str(tmp_path / "fit.json")
    report(capsys, ["group", "clifford", "--q", "2", "--out", pool])
    code, rep = report(capsys, ["weighted", "fit", pool, "--t", "1", "--out", fitted])
    assert code == 0 and rep["outputs"]["converged"]
    code, rep = report(capsys, ["weighted", "prune", fitted, "--t", "1"])
    assert code == 0
    assert rep["outputs"]["support_size"] <= rep["outputs"]["dim_hom_tt"]


def test_sample_is_deterministic(capsys, tmp_path):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    report(capsys, ["sample", "--d", "2", "--n", "3", "--seed", "5", "--out", a])
    report(capsys, ["sample", "--d", "2", "--n", "3", "--seed", "5", "--out", b])
    assert open(a).read() == open(b).read()


@pytest.mark.parametrize(
    "content,cause",
    [
        ("garbage", "not valid JSON"),
        ('{"format":"uset-v1","d":2,"matrices":[[[[1,0]]]]}', "rows"),
        ('{"format":"uset-v1","d":1,"matrices":[[[[3,0]]]]}', "not unitary"),
    ],
)
def test_corrupt_file_exit_two(capsys, tmp_path, content, cause):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, rep = report(capsys, ["verify", str(path), "--t", "1"])
    assert code == 2
    assert cause in rep["error"]["message"]


def test_missing_file_and_bad_args(capsys, tmp_path):
    code, rep = report(capsys, ["verify", str(tmp_path / "nope.json"), "--t", "1"])
    assert code == 2
    assert run(["frobnicate"]) == 2
    assert run(["moment", "--d", "0", "--t", "1"]) == 2
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "unitary_designs", "moment", "--d", "3", "--t", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["moment"] == 6

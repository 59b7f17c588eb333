from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from tropclust.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_trop_map(capsys):
    code, out, _ = call(capsys, "trop-map", "--k", "3", "--n", "6", "--map", "sigma:1", "--conv", "max", "--g", "1,0,0,0")
    assert code == 0 and out.strip() == "0,0,1,0"


def test_negative_values_are_accepted(capsys):
    code, out, _ = call(capsys, "trop-map", "--k", "3", "--n", "6", "--map", "sigma:1", "--g", "-1,1,1,0")
    assert code == 0 and out.strip() == "-1,0,0,1"


def test_gvec2tab(capsys):
    code, out, _ = call(capsys, "gvec2tab", "--k", "4", "--n", "8", "--g", "-1,0,0,-1,0,1,1,0,0")
    assert code == 0 and out.strip() == "[[1, 3, 4, 7], [2, 4, 5, 8]]"


def test_tab2gvec_json(capsys):
    code, out, _ = call(capsys, "tab2gvec", "--k", "3", "--n", "6", "--tableau", "[[1,3,5]]", "--format", "json")
    assert code == 0 and json.loads(out) == [-1, 1, 1, 0]


def test_act_csv(capsys):
    code, out, _ = call(capsys, "act", "--k", "3", "--n", "6", "--map", "sigma:1", "--tableau", "[[1,3,5]]", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and json.loads(rows[0]["cols"]) == [[1, 3, 5], [2, 4, 6]]


def test_totient(capsys):
    code, out, _ = call(capsys, "totient", "--k", "4", "--n", "8", "--degree-cap", "10")
    assert code == 0 and out.strip() == "0,2,0,2,0,4,0,4,0,8"
    code, out, _ = call(capsys, "totient", "--k", "4", "--n", "8", "--degree-cap", "10", "--format", "json")
    data = json.loads(out)
    assert data["N"] == data["closed_form"]


def test_orbit_with_explicit_seed(capsys):
    code, out, _ = call(
        capsys, "orbit", "--k", "4", "--n", "8", "--degree-cap", "2", "--seed", "-1,1,0,1,0,-1,0,-1,1", "--format", "json"
    )
    entries = json.loads(out)
    assert code == 0 and entries[0]["degree"] == 2 and entries[0]["word"] == []


def test_fixed_points(capsys):
    code, out, _ = call(capsys, "fixed-points", "--k", "3", "--n", "9", "--map", "sigma:1", "--rank", "1", "--format", "json")
    reports = json.loads(out)
    assert code == 0 and len(reports) == 4
    assert {r["stability"] for r in reports} == {"unstable"}


def test_mutate(capsys):
    code, out, _ = call(capsys, "mutate", "--family", "C2", "--word", "1,2", "--format", "json")
    assert code == 0 and json.loads(out)["G"] == [[-1, -2], [1, 1]]
    code, out, _ = call(capsys, "mutate", "--b", "0,2;-1,0", "--word", "1", "--format", "json")
    assert json.loads(out)["C"] == [[-1, 2], [0, 1]]


@pytest.mark.parametrize(
    "argv",
    [
        ["trop-map", "--k", "3", "--n", "6", "--map", "sigma:1"],
        ["trop-map", "--k", "3", "--n", "6", "--map", "sigma:1", "--g", "1,0"],
        ["trop-map", "--k", "3", "--n", "6", "--map", "phi", "--g", "1,0,0,0"],
        ["trop-map", "--n", "6", "--map", "rho", "--g", "1,0,0,0"],
        ["tab2gvec", "--k", "3", "--n", "6", "--tableau", "[[1,2,3]]"],
        ["tab2gvec", "--k", "3", "--n", "6", "--tableau", "[[1,3"],
        ["fixed-points", "--k", "3", "--n", "9", "--map", "rho", "--rank", "1"],
        ["totient", "--k", "4", "--n", "8"],
        ["nonsense"],
        ["trop-map", "--format", "xml"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = call(capsys, *argv)
    assert code == 2


def test_verify_subset_passes(capsys):
    code, out, _ = call(capsys, "verify", "--only", "1,3,4")
    assert code == 0
    assert [line.split()[0] for line in out.strip().splitlines()] == ["[PASS]"] * 3


def test_verify_reports_failure(capsys, tmp_path):
    import shutil

    from tropclust.data import fixtures_dir

    root = tmp_path / "fixtures"
    shutil.copytree(fixtures_dir(), root)
    path = root / "reference" / "rank2_tables.json"
    data = json.loads(path.read_text())
    data["C2"][1]["G_t0"] = [[0, 0], [0, 0]]
    path.write_text(json.dumps(data))
    code, out, _ = call(capsys, "verify", "--only", "1", "--fixtures", str(root))
    assert code == 1 and out.startswith("[FAIL]")


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tropclust", "trop-map", "--k", "3", "--n", "6", "--map", "rho", "--g", "1,0,0,0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "-1,0,1,0"


def test_verify_is_stable_apart_from_timings(capsys):
    import re

    outs = []
    for _ in range(2):
        code, out, _ = call(capsys, "verify", "--only", "3,11", "--rng-seed", "4")
        outs.append(re.sub(r"\(\d+\.\d+s/", "(", out))
    assert outs[0] == outs[1]

import json
import subprocess
import sys

import numpy as np
import pytest

from pacalloc import free_rider_instance, make_instance, nonexistence_instance, save_instance
from pacalloc.cli import dispatch


@pytest.fixture()
def inst_file(tmp_path):
    path = tmp_path / "inst.json"
    save_instance(nonexistence_instance(), path)
    return str(path)


def run_capture(argv, capsys):
    code = dispatch(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_plan_document(inst_file, capsys):
    code, doc = run_capture(["plan", "--instance", inst_file, "--objective", "pac"], capsys)
    assert code == 0
    assert doc["command"] == "plan"
    assert doc["seed"] == 42
    assert doc["results"]["contribution_vector"] == [2, 2, 2]
    assert doc["results"]["lp_rows"] == 28


def test_exact_and_infeasible(inst_file, capsys):
    code, doc = run_capture(["exact", "--instance", inst_file], capsys)
    assert code == 0
    assert doc["results"]["status"] == "optimal"
    assert doc["results"]["total_cost"] == pytest.approx(1.0)

    code, doc = run_capture(["exact", "--instance", inst_file, "--cap", "0"], capsys)
    assert code == 0
    assert doc["results"]["status"] == "infeasible"


def test_oracle_exact_value(inst_file, capsys):
    code, doc = run_capture(
        ["oracle", "--instance", inst_file, "--counts", "1,1,0", "--target", "0", "--agent", "0"],
        capsys,
    )
    assert code == 0
    assert doc["results"]["failure_probability"] == pytest.approx(2 / 9, abs=1e-12)


def test_oracle_mc_uses_seed(inst_file, capsys):
    code, a = run_capture(
        ["oracle", "--instance", inst_file, "--counts", "1,1,0", "--target", "0",
         "--agent", "0", "--method", "mc", "--trials", "20000", "--seed", "7"],
        capsys,
    )
    assert code == 0
    assert a["seed"] == 7
    assert abs(a["results"]["failure_probability"] - 2 / 9) < 0.02


def test_oracle_needs_both_pair_flags(inst_file, capsys):
    code = dispatch(["oracle", "--instance", inst_file, "--counts", "1,1,0", "--target", "0"])
    capsys.readouterr()
    assert code == 1


def test_missing_instance_file(capsys):
    code = dispatch(["plan", "--instance", "/no/such/file.json"])
    out = capsys.readouterr().out
    assert code == 1
    assert json.loads(out)["kind"] == "validation"


def test_unknown_flag_exits_one(inst_file):
    with pytest.raises(SystemExit) as info:
        dispatch(["plan", "--instance", inst_file, "--bogus"])
    assert info.value.code == 1


def test_capacity_error_exit_two(tmp_path, capsys):
    labels = np.zeros(64, dtype=np.uint8)
    other = labels.copy()
    other[0] = 1
    dist = np.full(64, 1.0 / 64)
    wide = make_instance([labels, other], [dist], 0.001, 0.5)
    path = tmp_path / "wide.json"
    save_instance(wide, path)
    code = dispatch(["oracle", "--instance", str(path), "--counts", "1", "--target", "0", "--agent", "0"])
    out = capsys.readouterr().out
    assert code == 2
    assert json.loads(out)["kind"] == "capacity"


def test_game_nonexistence(capsys):
    code, doc = run_capture(["game", "nonexistence"], capsys)
    assert code == 0
    assert doc["results"]["pure_ne"] == []


def test_game_ne_on_file(tmp_path, capsys):
    path = tmp_path / "fr.json"
    save_instance(free_rider_instance(), path)
    code, doc = run_capture(["game", "ne", "--instance", str(path)], capsys)
    assert code == 0
    assert doc["results"]["pure_ne"] == [[0, 5], [1, 1], [5, 0]]


def test_mech_uniqueness_table_file(tmp_path, capsys):
    entries = []
    for a in range(3):
        for b in range(3):
            entries.append({"m": [a, b], "payment": [0.5 * a + 0.1, 1.5 * b - 0.2]})
    path = tmp_path / "table.json"
    path.write_text(json.dumps({"costs": [0.5, 1.5], "entries": entries}))
    code, doc = run_capture(["mech", "uniqueness", "--table", str(path)], capsys)
    assert code == 0
    assert doc["results"]["uniform"] is True
    assert doc["results"]["constants"] == [pytest.approx(0.1), pytest.approx(-0.2)]


def test_reduce_roundtrip(tmp_path, capsys):
    cover_path = tmp_path / "cover.json"
    cover_path.write_text(
        json.dumps({"universe_size": 4, "subsets": [[0, 1], [1, 2], [2, 3], [0, 3]]})
    )
    out_path = tmp_path / "translated.json"
    code, doc = run_capture(
        ["reduce", "--setcover", str(cover_path), "--out", str(out_path)], capsys
    )
    assert code == 0
    assert doc["results"]["min_cover_size"] == 2
    assert doc["results"]["min_eliminating_sample_count"] == 2
    assert doc["results"]["agreement"] is True
    assert out_path.exists()


def test_byte_identical_reruns(inst_file):
    cmd = [sys.executable, "-m", "pacalloc.cli", "plan", "--instance", inst_file]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout

import csv
import io
import json
import subprocess
import sys

import pytest

from k3bn.cli import main, run


def _json(argv):
    code, text = run(argv)
    return code, json.loads(text)


def test_check_special_case():
    code, data = _json(["check", "7", "2", "2", "1", "3", "--format", "json"])
    assert code == 0
    assert data["route"] == "special-(7,2)"
    assert data["verdict"] == "pass"
    assert data["input"] == {"g": 7, "m": 2, "v": [2, 1, 3]}
    assert data["timings_ms"] is None
    for cond in data["conditions"]:
        assert set(cond) >= {"name", "anchor", "status", "witness"}
    assert any(c["anchor"] == "cor:inj-num/eq:inj-cond" for c in data["conditions"])


def test_radicals_serialise_with_terms_and_approx():
    _, data = _json(["check", "7", "2", "2", "1", "3"])
    values = [val for c in data["conditions"] for val in c.get("values", {}).values()]
    assert values
    for val in values:
        assert set(val) == {"terms", "approx"}
        assert len(val["approx"].lstrip("-").replace(".", "").lstrip("0")) >= 29


def test_suggest_missing_pair():
    code, data = _json(["suggest", "5", "2"])
    assert code == 1 and data["v"] is None


def test_hk_example():
    code, data = _json(["hk", "1", "50"])
    assert code == 0
    assert {k: data[k] for k in ("p", "c", "v")} == {"p": 3, "c": 1, "v": [3, 1, 16]}
    assert run(["hk", "1", "10"])[0] == 1


def test_scan_csv_columns():
    code, text = run(["scan", "3..7", "2..6", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["g", "m", "r", "c", "s", "inj", "surj", "iso", "route"]
    assert len(rows) == 25
    assert {(int(r["g"]), int(r["m"])) for r in rows if r["r"]} == \
        {(3, 5), (3, 6), (4, 4), (4, 5), (4, 6), (5, 3), (5, 4), (5, 5), (5, 6),
         (6, 3), (6, 4), (6, 5), (6, 6), (7, 2), (7, 3), (7, 4), (7, 5), (7, 6)}


def test_exit_code_follows_verdict():
    assert run(["check", "7", "2", "6", "5", "25"])[0] == 1
    assert run(["check", "7", "3", "6", "5", "25"])[0] == 0


def test_oracle_no_wall():
    code, data = _json(["oracle", "no-wall", "7", "2", "1", "3", "--m", "2"])
    assert code == 0 and data["status"] == "no-wall" and data["witnesses"] == []
    code, data = _json(["oracle", "no-wall", "7", "2", "2", "2", "--sigma", "1/10,0", "--non-strict"])
    assert code == 1 and [1, 1, 1] in data["witnesses"]


def test_usage_errors_exit_three(capsys):
    for argv in (["check", "7", "x"], ["nonsense"], ["scan", "3-7", "2..4"], ["check", "7", "2", "2", "1", "3", "--precision-bits", "8"]):
        with pytest.raises(SystemExit) as exc:
            run(argv)
        assert exc.value.code == 3
    assert run(["check", "1", "2", "2", "1", "3"])[0] == 3
    assert "error" in capsys.readouterr().err


def test_output_is_byte_identical():
    argv = ["check", "5", "3", "4", "3", "9"]
    assert run(argv) == run(argv)


def test_timings_flag():
    _, data = _json(["hk", "1", "50", "--timings"])
    assert isinstance(data["timings_ms"], float)


def test_svg_output_is_deterministic(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    for prefix in (first, second):
        assert run(["check", "7", "2", "2", "1", "3", "--emit-svg", str(prefix)])[0] == 0
    for part in ("plane", "polygon"):
        a = (tmp_path / f"a-{part}.svg").read_bytes()
        b = (tmp_path / f"b-{part}.svg").read_bytes()
        assert a.startswith(b"<?xml") and a == b
    run(["scan", "3..5", "2..4", "--emit-svg", str(first)])
    assert (tmp_path / "a-scan.svg").exists()


def test_main_writes_stdout(capsys):
    assert main(["suggest", "10", "2", "--format", "text"]) == 0
    assert capsys.readouterr().out.strip() == "g=10 m=2: (9,7,49) (table1)"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "k3bn", "suggest", "5", "2"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["v"] is None
    proc = subprocess.run([sys.executable, "-m", "k3bn", "check", "7"], capture_output=True, text=True)
    assert proc.returncode == 3 and "usage" in proc.stderr

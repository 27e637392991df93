import io
import json
import subprocess
import sys

import pytest

from centun.cli import main


def run(*args):
    out = io.StringIO()
    code = main(list(args), out=out)
    return code, out.getvalue()


def test_construct_a1():
    code, text = run("construct", "--type", "A", "--rank", "1", "--nu", "1")
    assert code == 0
    assert "codegree: 1" in text and "ok: True" in text


def test_construct_structured_a2():
    code, text = run("construct", "--type", "A", "--rank", "2", "--nu", "1,1", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["codegree"] == 2
    assert doc["f_k"] == [{"monomial": {"1,1": 2}, "coeff": "-1/36"}]


@pytest.mark.parametrize("args", [
    ["construct", "--type", "A", "--rank", "2", "--nu", "0,0"],
    ["construct", "--type", "A", "--rank", "2", "--nu", "1,-1"],
    ["construct", "--type", "A", "--rank", "2", "--nu", "1"],
    ["construct", "--type", "A", "--rank", "2", "--nu", "x"],
    ["construct", "--type", "Q", "--rank", "2", "--nu", "1,1"],
    ["construct", "--type", "A", "--rank", "2"],
    ["genexp", "--type", "A", "--rank", "2", "--lambda", "1,0"],
    ["roots", "--type", "A", "--rank", "1", "--size-cap", "0"],
])
def test_usage_errors(args):
    assert run(*args)[0] == 2


def test_size_cap_exit():
    assert run("irrep", "--type", "A", "--rank", "2", "--lambda", "3,3", "--size-cap", "10")[0] == 3


def test_counterexample_commands():
    code, text = run("counterexample", "--type", "A", "--rank", "2", "--xi", "1,1")
    assert code == 0 and "degrees_present: [4,6,8]" in text and "refutes: True" in text
    assert run("counterexample", "--type", "A", "--rank", "1", "--xi", "1")[0] == 4
    assert run("counterexample", "--type", "B", "--rank", "2", "--xi", "adjoint")[0] == 0


def test_tables():
    code, text = run("genexp", "--type", "A", "--rank", "2", "--lambda", "2,2", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["exponents"] == {"2": 1, "3": 1, "4": 1}
    code, text = run("roots", "--type", "G", "--rank", "2")
    assert code == 0 and "positive_roots 6" in text
    code, text = run("irrep", "--type", "A", "--rank", "2", "--lambda", "1,1", "--format", "json")
    assert code == 0 and json.loads(text)["dimension"] == 8


def test_cache_hit_is_byte_identical(tmp_path, caplog):
    args = ["construct", "--type", "B", "--rank", "2", "--nu", "0,2", "--cache-dir", str(tmp_path)]
    fresh = run(*args)
    files = list(tmp_path.glob("*.irrep"))
    assert len(files) == 1
    with caplog.at_level("INFO", logger="centun"):
        cached = run(*args)
    assert fresh == cached
    assert any("cache hit" in r.message for r in caplog.records)
    plain = run(*args[:-2])
    assert plain == fresh


def test_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("CENTUN_CACHE_DIR", str(tmp_path))
    assert run("irrep", "--type", "A", "--rank", "2", "--lambda", "1,0")[0] == 0
    assert list(tmp_path.glob("*.irrep"))


def test_battery_parallel_matches_serial():
    serial = run("battery")
    parallel = run("battery", "--jobs", "2")
    assert serial == parallel and serial[0] == 0


def test_subprocess_runs_are_identical():
    cmd = [sys.executable, "-m", "centun", "counterexample", "--type", "A", "--rank", "2",
           "--xi", "1,1", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ltsieve.cli import EXIT_FAIL, EXIT_GUARD, EXIT_OK, EXIT_USAGE, OUTPUT_DIR_ENV, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tmax_examples(capsys):
    assert run(capsys, "tmax", "--d", "7", "--b", "91", "--type", "1^6,4")[:2] == (0, "7\n")
    assert run(capsys, "tmax", "--d", "11", "--b", "2255", "--type", "1^2,2^4")[:2] == (0, "2\n")


def test_tmax_parse_error(capsys):
    code, _, err = run(capsys, "tmax", "--d", "7", "--b", "91", "--type", "2^")
    assert code == EXIT_USAGE
    assert "position 2" in err


def test_enumerate_markdown(capsys):
    code, out, _ = run(capsys, "enumerate", "--kr", "10", "--profile", "strict", "--format", "md")
    assert code == EXIT_OK
    assert "| 1 | 7*13 | (6, 3) |" in out
    assert out.count("\n| ") >= 12


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--kr", "9", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["schema_version"] == 1
    assert len(doc["cases"]) >= 106


def test_enumerate_csv_with_types(capsys):
    code, out, _ = run(capsys, "enumerate", "--kr", "10", "--format", "csv", "--types")
    assert code == EXIT_OK
    assert "1^6,4" in out


@pytest.mark.parametrize("argv", [
    ["enumerate", "--kr", "1"],
    ["enumerate", "--kr", "ten"],
    ["enumerate", "--kr", "10", "--bogus"],
    ["types", "--kr", "10", "--case", "7,x"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == EXIT_USAGE


def test_guard_exit(capsys):
    code, _, err = run(capsys, "enumerate", "--kr", "10", "--types", "--profile", "paper",
                       "--max-solutions", "1")
    assert code == EXIT_GUARD
    assert "9*129" in err or "9," in err


def test_types_for_case(capsys):
    code, out, _ = run(capsys, "types", "--kr", "10", "--case", "7,13", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    types = {line["itype"] for case in doc["cases"] for line in case["types"]}
    assert types == {"1,2^3,3", "1^4,3^2", "1^6,4"}


def test_check_kr10(capsys):
    code, out, _ = run(capsys, "check", "--kr", "10")
    assert code == EXIT_OK
    assert "surviving cases: [1, 4]" in out
    assert "FAIL" not in out


def test_check_kr9_reports_its_failures(capsys):
    code, out, _ = run(capsys, "check", "--kr", "9", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_FAIL
    assert doc["surviving"] == []
    failing = sorted(name for name, ok in doc["conditions"].items() if not ok)
    assert failing == ["review has no mismatch", "type sets for k <= 60"]


def test_check_explicit_paths(capsys, tmp_path):
    from importlib import resources
    data = resources.files("ltsieve.tables") / "data"
    golden = tmp_path / "table1.csv"
    golden.write_text((data / "table1.csv").read_text("utf-8"), "utf-8")
    facts = tmp_path / "facts.txt"
    facts.write_text((data / "facts.txt").read_text("utf-8"), "utf-8")
    code, out, _ = run(capsys, "check", "--kr", "10", "--golden", str(golden),
                       "--facts", str(facts))
    assert code == EXIT_OK


def test_check_missing_facts(capsys, tmp_path):
    code, _, err = run(capsys, "check", "--kr", "10", "--facts", str(tmp_path / "nope.txt"))
    assert code == EXIT_USAGE and "nope.txt" in err


def test_review_and_diff(capsys):
    code, out, _ = run(capsys, "review", "--kr", "10", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["counts"]["Survives"] == 2
    code, out, _ = run(capsys, "diff", "--kr", "10")
    assert "missing cases: 0" in out


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--q", "9", "--classes", "7", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["status"] == "Verified"
    assert [doc["params"][f] for f in ("d", "c", "x", "y")] == [7, 13, 6, 3]
    code, out, _ = run(capsys, "oracle", "--q", "4", "--classes", "3")
    assert code == EXIT_OK and "(d,c,x,y)=(3,7," in out


def test_oracle_unsupported_q(capsys):
    code, _, err = run(capsys, "oracle", "--q", "6", "--classes", "7")
    assert code == EXIT_USAGE and "unsupported" in err


def test_oracle_dump(capsys, tmp_path):
    path = tmp_path / "plane.txt"
    code, _, _ = run(capsys, "oracle", "--q", "3", "--classes", "13", "--dump", str(path))
    assert path.read_text().splitlines()[0] == "3 13"


def test_output_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    code, out, _ = run(capsys, "enumerate", "--kr", "10", "--format", "csv", "--output", "c.csv")
    assert code == EXIT_OK and out == ""
    assert (tmp_path / "c.csv").read_text().startswith("d,c,")


def test_parallel_output_is_identical(capsys):
    outs = []
    for jobs in ("1", "3"):
        code, out, _ = run(capsys, "enumerate", "--kr", "10", "--types", "--format", "json",
                           "--jobs", jobs)
        assert code == EXIT_OK
        outs.append(out)
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ltsieve", "tmax", "--d", "7", "--b", "91",
                           "--type", "1,2^3,3"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1\n"

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from icsrow.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "--m", "2", "--n", "7", "--engine", "tuple", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert {"size": 10, "count": 22} in data["orbits"]
    assert data["engine"] == "tuple" and data["matches_prediction"] is True
    assert set(data) == {"n", "engine", "total", "orbits", "matches_prediction"}


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--m", "2", "--n", "5", "--format", "csv")
    assert code == 0
    assert "\r" not in out
    lines = out.splitlines()
    assert lines[0] == "size,count,example_representative"
    assert lines[1] == "2,1,[E:E]"
    assert [int(line.split(",")[1]) for line in lines[1:]] == [1, 2, 7, 1, 1]


def test_census_engines_agree(capsys):
    _, tuple_out, _ = run(capsys, "census", "--n", "6", "--engine", "tuple", "--format", "json")
    _, generic_out, _ = run(capsys, "census", "--n", "6", "--engine", "generic", "--format", "json")
    assert json.loads(tuple_out)["orbits"] == json.loads(generic_out)["orbits"]


def test_output_independent_of_workers(capsys):
    outs = []
    for w in ("1", "3"):
        _, out, _ = run(capsys, "census", "--dims", "3,4", "--format", "json", "--workers", w)
        outs.append(out)
        _, out, _ = run(capsys, "census", "--n", "11", "--engine", "tuple", "--format", "csv", "--workers", w)
        outs.append(out)
    assert outs[0] == outs[2] and outs[1] == outs[3]


def test_verify_table4(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ICSROW_RESULTS_DIR", str(tmp_path))
    code, out, _ = run(capsys, "verify", "--suite", "table4")
    assert code == 0
    assert out.count("PASS") == 9 and "9/9 cases pass" in out
    rows = (tmp_path / "table4.jsonl").read_text().splitlines()
    assert len(rows) == 9 and all(json.loads(r)["pass"] for r in rows)


def test_verify_homomesy_reports_failures(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "homomesy", "--results-dir", str(tmp_path))
    assert code == 1
    assert "FAIL sc-even-total-n6" in out


def test_orbit_trace(capsys):
    code, out, _ = run(capsys, "orbit", "--m", "2", "--n", "7", "--start", "0,3,4:0,2,5", "--trace", "sc")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:] if line.strip()[:1].isdigit()]
    assert len(rows) == 10
    assert [r[-1] for r in rows] == ["+1", "-2", "+2", "-2", "+2", "-1", "+1", "-2", "+2", "-1"]


@pytest.mark.parametrize("impl", ["local", "threeset", "simplified"])
def test_orbit_impls_identical(capsys, impl):
    code, out, _ = run(capsys, "orbit", "--dims", "3,4", "--engine", "generic", "--impl", impl,
                       "--start", "[[1,2],[1,3],[2,2]]", "--trace", "maxmin", "--format", "json")
    assert code == 0
    data = json.loads(out)
    ref = main(["orbit", "--dims", "3,4", "--start", "[[1,2],[1,3],[2,2]]", "--trace", "maxmin",
                "--format", "json"])
    ref_out, _ = capsys.readouterr()
    assert ref == 0 and json.loads(ref_out) == data


def test_orbit_json_tuple(capsys):
    code, out, _ = run(capsys, "orbit", "--n", "8", "--start", "3,4,1:E", "--format", "json", "--trace", "card")
    assert code == 0
    data = json.loads(out)
    assert data["size"] == 13
    assert data["states"][0]["tuple"] == "[3,4,1:E]"
    assert data["states"][0]["cardinality"] == 4


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--m", "2", "--n", "3", "--count-only")
    assert (code, out) == (0, "33\n")
    code, out, _ = run(capsys, "enumerate", "--dims", "2,2", "--format", "json")
    data = json.loads(out)
    assert data["count"] == 13 and [] in data["sets"] and [[1, 1], [1, 2], [2, 1], [2, 2]] in data["sets"]
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--engine", "tuple", "--count-only")
    assert out == "71\n"


def test_homomesy_command(capsys):
    code, out, _ = run(capsys, "homomesy", "--n", "5", "--stat", "sc", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "0-mesic"
    code, out, _ = run(capsys, "homomesy", "--dims", "3,3", "--family", "ideals", "--stat", "card")
    assert code == 0 and "9/2-mesic" in out
    code, out, _ = run(capsys, "homomesy", "--n", "4", "--engine", "generic", "--stat", "sc")
    assert "not homomesic" in out and "total -20" in out


def test_explore_command(capsys):
    code, out, _ = run(capsys, "explore", "--m", "2", "--n-max", "12", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["samples"]) == 12
    assert data["samples"][8]["good_ics_count"] == 30


def test_explore_max_minus_min(capsys, tmp_path):
    code, out, _ = run(capsys, "explore", "--kind", "max-minus-min", "--m", "3", "--n-max", "5",
                       "--results-dir", str(tmp_path))
    assert code == 0 and "orbit-3x5-sum" in out


def test_output_file(capsys, tmp_path):
    target = tmp_path / "c.csv"
    code, out, _ = run(capsys, "census", "--n", "4", "--format", "csv", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_bytes().startswith(b"size,count,example_representative\n")


def test_usage_errors(capsys):
    code, _, err = run(capsys, "census", "--dims", "6,8")
    assert code == 2 and "--cap" in err
    code, _, err = run(capsys, "census", "--m", "3", "--n", "3", "--engine", "tuple")
    assert code == 2 and "tuple engine" in err
    code, _, _ = run(capsys, "census")
    assert code == 2
    code, _, _ = run(capsys, "census", "--n", "3", "--impl", "bogus")
    assert code == 2
    code, _, err = run(capsys, "orbit", "--n", "3", "--start", "[[1,1],[1,3]]")
    assert code == 2 and "interval-closed" in err
    code, _, _ = run(capsys, "orbit", "--n", "3", "--start", "9,9,9:E")
    assert code == 2
    code, _, _ = run(capsys, "nosuchcommand")
    assert code == 2


def test_cap_override(capsys):
    code, out, _ = run(capsys, "enumerate", "--dims", "2,21", "--count-only", "--engine", "generic", "--cap", "42")
    assert code == 0 and out == f"{(21**4 + 4 * 21**3 + 17 * 21**2 + 14 * 21 + 12) // 12}\n"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "icsrow", "enumerate", "--n", "2", "--count-only"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "13\n"

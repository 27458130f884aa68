from __future__ import annotations

import json

import pytest

from joinmirror.cli import RunConfig, bps_csv, main
from joinmirror.hodge import T0BAR, T1
from joinmirror.reference import BPS_X1


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("periods", cap=-1)
    with pytest.raises(ValueError):
        RunConfig("bmodel", chart="111")


def test_periods_fit_verify_pipeline(tmp_path, capsys):
    series = tmp_path / "omega.series"
    op = tmp_path / "p1.op"
    assert run(capsys, "periods", "--family", "x1", "--cap", "12", "--out", str(series))[0] == 0
    code, out = run(capsys, "fit", "--series", str(series), "--theta-deg", "2",
                    "--coeff-deg", "2", "--out", str(op))
    assert code == 0 and json.loads(out)["dimension"] == 1
    code, out = run(capsys, "verify", "--op", str(op), "--series", str(series), "--through", "11")
    assert code == 0 and json.loads(out)["annihilates"] is True


def test_verify_failure_exit_code(tmp_path, capsys):
    series = tmp_path / "w.series"
    run(capsys, "periods", "--family", "x1-lcs010", "--cap", "8", "--out", str(series))
    op = tmp_path / "t.op"
    op.write_text("# variables: w0 w2\n1 0 : 1\n")
    code, out = run(capsys, "verify", "--op", str(op), "--series", str(series), "--through", "7")
    assert code == 1 and json.loads(out)["first_failure"] == [1, 0]


def test_intersections(capsys):
    code, out = run(capsys, "intersections")
    data = json.loads(out)
    assert data["X1"]["kappa"]["1,1,2"] == 5
    assert data["Y1"]["kappa"]["1,1,1"] == 15


def test_gw_csv_layout(capsys):
    code, out = run(capsys, "gw", "--model", "x1", "--max-degree", "3", "--format", "csv")
    rows = out.strip().splitlines()
    assert len(rows) == 12 and rows[0].split(",") == ["d1\\d2", "0", "1", "2", "3", "4", "5"]
    assert rows[2].split(",")[2] == str(BPS_X1[(1, 1)])


def test_gw_json_deterministic(capsys):
    first = run(capsys, "gw", "--model", "x0", "--max-degree", "3")[1]
    second = run(capsys, "gw", "--model", "x0", "--max-degree", "3")[1]
    assert first == second
    assert json.loads(first)["bps"]["1"] == 325


def test_bmodel_metadata(capsys):
    code, out = run(capsys, "bmodel", "--chart", "010", "--cap", "4", "--emit", "bps")
    data = json.loads(out)
    assert code == 0
    assert data["metadata"]["fallback_used"] is False
    assert data["metadata"]["frobenius_dimension"] == 6
    assert data["bps"]["bps"]["1,1"] == 330


def test_bmodel_yukawa(capsys):
    data = json.loads(run(capsys, "bmodel", "--chart", "100", "--emit", "yukawa")[1])
    assert data["yukawa"]["value_at_origin"] == {"0,0,0": 0, "0,0,1": 5, "0,1,1": 5, "1,1,1": 0}


def test_hodge_from_json(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps(T0BAR.to_json()))
    b.write_text(json.dumps(T1.to_json()))
    data = json.loads(run(capsys, "hodge", "--s1", str(a), "--s2", str(b))[1])
    assert (data["h11"], data["h21"], data["euler_resolved"]) == (47, 2, 90)


def test_cache_command(tmp_path, capsys):
    data = json.loads(run(capsys, "cache", "--dir", str(tmp_path), "--warm", "6")[1])
    assert len(data["entries"]) == 3
    cold = (tmp_path / data["entries"][0]).read_text()
    run(capsys, "cache", "--dir", str(tmp_path), "--warm", "6")
    assert (tmp_path / data["entries"][0]).read_text() == cold


def test_reproduce_subset(capsys):
    code, out = run(capsys, "reproduce", "--only", "A2", "A8")
    data = json.loads(out)
    assert code == 0 and data["all_passed"]
    assert [c["id"] for c in data["checks"]] == ["A2", "A8"]


def test_bps_csv_blank_cells():
    text = bps_csv({(0, 1): 3})
    assert text.splitlines()[1] == "0,0,3,,,,"

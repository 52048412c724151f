import csv
import io
import json

import pytest

from vortex_atlas import cli
from vortex_atlas import kite as K


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "solve")[0] == 2
    assert run(capsys, "solve", "--gamma4", "abc")[0] == 2
    assert run(capsys, "sweep", "--range", "2:1")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "certify")[0] == 2
    assert run(capsys, "census", "--gamma4", "1", "--workers", "0")[0] == 2


def test_parse_rational_is_exact():
    from fractions import Fraction

    assert cli.parse_rational("0.1") == Fraction(1, 10)
    assert cli.parse_rational("-1/2") == Fraction(-1, 2)
    assert cli.parse_interval("-1,2") == (-1, 2)


def test_solve_collinear_at_half(capsys):
    code, out, _ = run(capsys, "solve", "--gamma4", "1/2", "--family", "collinear")
    obj = json.loads(out)
    assert code == 0 and obj["schema"] == 1
    assert obj["count"] == 12 and obj["collinear_census"]["solution_count"] == 12


def test_negative_gamma_value_accepted(capsys):
    code, out, _ = run(capsys, "solve", "--gamma4", "-1/2", "--family", "kite")
    assert code == 0
    assert json.loads(out)["gamma4"] == "-1/2"


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "--gamma4", "1")
    (row,) = json.loads(out)["rows"]
    assert code == 0
    assert row["published_total"] == 34 and row["total"] == 26


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--range", "1:2", "--samples", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["gamma4"] for r in rows] == ["1", "2"]


def test_curves_csv(capsys):
    code, out, _ = run(capsys, "curves", "--plot", "f-zero", "--bounds", "-2:2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and {r["curve"] for r in rows} == {"f-zero-upper", "f-zero-lower", "pole"}


def test_rhombus_command(capsys):
    code, out, _ = run(capsys, "rhombus", "--gamma4", "1/2")
    obj = json.loads(out)
    assert code == 0 and obj["exact"]["distance_relation"] == "0"
    code, out, _ = run(capsys, "rhombus", "--range", "-5:3", "--samples", "5", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 6


def test_certify_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(K.kite_configuration(1.0, 1.0, 1).to_json()))
    assert run(capsys, "certify", str(good))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(K.kite_configuration(0.7, 1.3, 1).to_json()))
    code, out, _ = run(capsys, "certify", str(bad))
    assert code == 3 and json.loads(out)["certificate"]["verdict"] == "fail"


def test_config_file_and_flag_precedence(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# defaults\ngamma4 = 2\nfamily = collinear\nformat = csv\n")
    _, out, _ = run(capsys, "solve", "--config", str(conf))
    assert out.startswith("family,gamma4") and ",2," in out
    _, out, _ = run(capsys, "solve", "--config", str(conf), "--format", "json")
    assert json.loads(out)["gamma4"] == "2"
    conf.write_text("gamma4\n")
    assert run(capsys, "solve", "--config", str(conf))[0] == 2


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("VORTEX_ATLAS_WORKERS", "3")
    ns = cli.build_parser().parse_args(["census", "--gamma4", "1"])
    assert cli.resolve_options(ns)["workers"] == 3
    ns = cli.build_parser().parse_args(["census", "--gamma4", "1", "--workers", "2"])
    assert cli.resolve_options(ns)["workers"] == 2


def test_output_is_byte_identical_and_atomic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "sub" / "b.json"
    assert run(capsys, "census", "--gamma4", "1/2", "--out", str(a))[0] == 0
    assert run(capsys, "census", "--gamma4", "1/2", "--out", str(b), "--workers", "2")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert sorted(p.name for p in tmp_path.rglob("*")) == ["a.json", "b.json", "sub"]


def test_atomic_write_leaves_target_on_failure(tmp_path):
    target = tmp_path / "x.txt"
    target.write_text("old")

    with pytest.raises(TypeError):
        cli.atomic_write(str(target), None)
    assert target.read_text() == "old"
    assert [p.name for p in tmp_path.iterdir()] == ["x.txt"]

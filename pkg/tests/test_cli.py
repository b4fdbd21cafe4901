import json

import pytest

from bergerconn import cli, families
from bergerconn.cli import (
    EXPECTED_TABLE,
    compute_dims,
    compute_table,
    main,
    parse_eps,
)


class TestParseEps:
    def test_decimal(self):
        assert parse_eps("-1.5") == -1.5

    def test_rational(self):
        assert parse_eps("-3/2") == -1.5
        assert parse_eps("5/4") == 1.25

    def test_invalid(self):
        import argparse

        with pytest.raises(argparse.ArgumentTypeError):
            parse_eps("abc")


class TestDims:
    def test_compute_dims_n2(self):
        doc = compute_dims(2)
        assert doc["invariant"] == 13
        assert doc["metric"] == [7]
        assert doc["skew_directions"] == [3]
        assert doc["stable_under_eps"]

    def test_cmd_exit_zero(self, capsys):
        assert main(["dims", "--n", "2"]) == 0
        out = capsys.readouterr().out
        assert "13" in out and "7" in out

    def test_json_format(self, capsys):
        assert main(["dims", "--n", "1", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["invariant"] == 27


class TestVerify:
    @pytest.mark.parametrize("args", [["--n", "1"], ["--n", "2", "--eps=-3/2"],
                                      ["--n", "3", "--eps", "0.5"]])
    def test_passes(self, args, capsys):
        assert main(["verify"] + args) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out and "PASS" in out

    def test_failure_names_check(self, capsys, monkeypatch):
        # negative control: corrupt one closed form and expect the verify
        # command to fail naming that check
        orig = families.closed_torsion

        def broken(n, eps, params):
            b = orig(n, eps, params)
            c = b.coeffs.copy()
            c[0, 1, 0] += 1e-3
            return type(b)(n, c)

        monkeypatch.setattr(cli.families, "closed_torsion", broken)
        assert main(["verify", "--n", "2", "--eps=-1"]) == 1
        captured = capsys.readouterr()
        assert "closed_torsion_vs_generic" in captured.err + captured.out


class TestClassify:
    def test_line(self, capsys):
        assert main(["classify", "--n", "1", "--eps=-1"]) == 0
        assert "line" in capsys.readouterr().out

    def test_empty_cell(self, capsys):
        assert main(["classify", "--n", "2", "--eps=-0.5"]) == 0
        assert "empty" in capsys.readouterr().out

    def test_json_samples_satisfy_equation(self, capsys):
        assert main(["classify", "--n", "4", "--eps", "1", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["kind"] == "2 pt."
        a, c = doc["equation"]["a"], doc["equation"]["c"]
        for x in doc["samples"]:
            assert abs(a * x[0] ** 2 - c) < 1e-6


class TestTable:
    def test_all_cells_match(self):
        got = compute_table()
        assert [tuple(row) for row in got] == [tuple(row) for row in EXPECTED_TABLE]

    def test_cmd_reports_16(self, capsys):
        assert main(["table"]) == 0
        assert "16/16" in capsys.readouterr().out

    def test_csv_format(self, capsys):
        assert main(["table", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 5
        assert lines[0].startswith("regime,")


class TestExport:
    def test_line_kind(self, capsys):
        assert main(["export", "--n", "1", "--eps=-1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["kind"] == "line"
        assert doc["ricci_flat"] is True
        assert doc["dims"] == {"invariant": 27, "metric": 9, "skew_directions": 1}

    def test_ricci_flat_flag_n2(self, capsys):
        assert main(["export", "--n", "2", "--eps=-3/2"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["ricci_flat"] is True
        assert doc["kind"] == "ellipsoid"
        for x, s in zip(doc["samples"], doc["scalar_curvatures"]):
            assert abs(sum(v * v for v in x) - 1.0) < 1e-6
            assert abs(s) < 1e-4  # unit sphere: scalar vanishes

    def test_flat_connection_flag(self, capsys):
        assert main(["export", "--n", "3", "--eps=-1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["flat_connections"] is True

    def test_deterministic_across_runs(self, capsys):
        assert main(["export", "--n", "4", "--eps", "1", "--seed", "3"]) == 0
        first = capsys.readouterr().out
        assert main(["export", "--n", "4", "--eps", "1", "--seed", "3"]) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        assert main(["export", "--n", "1", "--eps=-2", "--out", str(path)]) == 0
        doc = json.loads(path.read_text())
        assert doc["kind"] == "empty" and doc["samples"] == []


class TestUsageErrors:
    def test_zero_eps(self):
        assert main(["classify", "--n", "2", "--eps", "0"]) == 2

    def test_bad_n(self):
        assert main(["dims", "--n", "0"]) == 2

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])

import json

import pytest

from thetagrid import jsonio, two_rows
from thetagrid.cli import main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        import sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestVerifyCommand:
    def test_two_rows_is_peaceful(self, capsys, monkeypatch, tmp_path):
        payload = jsonio.dumps(jsonio.construction_obj(two_rows(6)))
        code, out, _ = run(
            capsys, "verify", "--theta", "deg=135", stdin=payload, monkeypatch=monkeypatch
        )
        assert code == 0
        assert json.loads(out)["peaceful"] is True

    def test_violating_file_exits_1(self, capsys, tmp_path):
        f = tmp_path / "c.json"
        f.write_text('{"n": 5, "points": [[2,4],[3,3],[3,1]]}')
        code, out, _ = run(capsys, "verify", "--theta", "deg=135", str(f))
        assert code == 1
        body = json.loads(out)
        assert body["violations"] == [{"a": [2, 4], "vertex": [3, 3], "c": [3, 1]}]

    def test_empty_points_peaceful(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys,
            "verify",
            "--theta",
            "deg=135",
            stdin='{"n": 4, "points": []}',
            monkeypatch=monkeypatch,
        )
        assert code == 0

    def test_malformed_json_exits_2(self, capsys, monkeypatch):
        code, _, err = run(
            capsys, "verify", "--theta", "deg=135", stdin="{oops", monkeypatch=monkeypatch
        )
        assert code == 2 and "JSON" in err

    def test_out_of_grid_exits_2(self, capsys, monkeypatch):
        code, _, err = run(
            capsys,
            "verify",
            "--theta",
            "deg=135",
            stdin='{"n": 3, "points": [[9, 1]]}',
            monkeypatch=monkeypatch,
        )
        assert code == 2 and "outside" in err

    def test_n_mismatch_exits_2(self, capsys, monkeypatch):
        code, _, _ = run(
            capsys,
            "verify",
            "--theta",
            "deg=135",
            "--n",
            "9",
            stdin='{"n": 3, "points": []}',
            monkeypatch=monkeypatch,
        )
        assert code == 2

    def test_text_format(self, capsys, monkeypatch):
        code, out, _ = run(
            capsys,
            "verify",
            "--theta",
            "deg=135",
            "--format",
            "text",
            stdin='{"n": 4, "points": []}',
            monkeypatch=monkeypatch,
        )
        assert code == 0 and out.strip() == "peaceful"


class TestConstructCommand:
    def test_two_rows_json(self, capsys):
        code, out, _ = run(capsys, "construct", "--kind", "two-rows", "--n", "6")
        assert code == 0
        body = json.loads(out)
        assert body["n"] == 6 and len(body["points"]) == 12
        assert body["points"] == sorted(body["points"], key=lambda p: (p[1], p[0]))

    def test_witness_json(self, capsys):
        code, out, _ = run(capsys, "construct", "--kind", "witness", "--theta", "tan=-3/2")
        assert code == 0
        body = json.loads(out)
        assert body["n"] == 8 and body["vertex"] == [5, 1]
        assert {tuple(body["a"]), tuple(body["c"])} == {(3, 4), (6, 1)}

    def test_two_rows_needs_n_at_least_2(self, capsys):
        code, _, err = run(capsys, "construct", "--kind", "two-rows", "--n", "1")
        assert code == 2

    def test_missing_theta_for_witness(self, capsys):
        code, _, _ = run(capsys, "construct", "--kind", "witness")
        assert code == 2


class TestBoundsCommand:
    def test_deg135(self, capsys):
        code, out, _ = run(capsys, "bounds", "--n", "10", "--theta", "deg=135")
        assert code == 0
        assert json.loads(out) == {
            "external": False,
            "formula": "3n-2",
            "lower": 20,
            "upper": 28,
        }

    def test_collinear(self, capsys):
        code, out, _ = run(capsys, "bounds", "--n", "5", "--theta", "deg=180")
        assert json.loads(out)["upper"] == 10

    def test_general_tangent(self, capsys):
        code, out, _ = run(capsys, "bounds", "--n", "4", "--theta", "tan=1/2")
        assert json.loads(out)["upper"] == 14

    def test_bad_theta_exits_2(self, capsys):
        code, _, err = run(capsys, "bounds", "--n", "4", "--theta", "deg=60")
        assert code == 2


class TestSolveCommand:
    def test_oracle_g2(self, capsys):
        code, out, _ = run(
            capsys, "solve", "--n", "2", "--theta", "deg=135", "--mode", "oracle"
        )
        assert code == 0
        body = json.loads(out)
        assert body["size"] == 4 and body["optimal"] is True

    def test_oracle_g3(self, capsys):
        code, out, _ = run(
            capsys, "solve", "--n", "3", "--theta", "deg=135", "--mode", "oracle"
        )
        assert json.loads(out)["size"] == 6

    def test_greedy_g8(self, capsys):
        code, out, _ = run(
            capsys,
            "solve", "--n", "8", "--theta", "deg=135",
            "--mode", "greedy", "--seed", "7", "--restarts", "2",
        )
        body = json.loads(out)
        assert body["optimal"] is False and body["seed"] == 7
        assert body["size"] >= 16

    def test_oracle_cap_exit_2(self, capsys):
        code, _, err = run(
            capsys, "solve", "--n", "5", "--theta", "deg=135", "--mode", "oracle"
        )
        assert code == 2 and "cap" in err


class TestBucketsCommand:
    def test_minus_one_on_g4(self, capsys):
        code, out, _ = run(capsys, "buckets", "--n", "4", "--slope", "-1")
        body = json.loads(out)
        assert body["count"] == 7 and body["formula_match"] is True

    def test_half_slope_on_g4(self, capsys):
        code, out, _ = run(capsys, "buckets", "--n", "4", "--slope", "1/2")
        body = json.loads(out)
        assert body["count"] == 10 and body["formula"] == 10

    def test_single_cell(self, capsys):
        code, out, _ = run(capsys, "buckets", "--n", "1", "--slope", "1/1")
        assert json.loads(out)["count"] == 1

    def test_formula_out_of_range_reports_null(self, capsys):
        code, out, _ = run(capsys, "buckets", "--n", "4", "--slope", "7/1")
        body = json.loads(out)
        assert body["formula"] is None and body["count"] == 16

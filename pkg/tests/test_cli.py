"""CLI contract tests: schemas, determinism, exit codes."""

import json
import math

import pytest

from urbanik_sf.cli import main

TWO_K0_2 = 0.22778774549906687


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEval:
    def test_bessel_point(self, capsys):
        code, out, _ = run_cli(["eval", "--c", "2", "--t", "1", "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        rec = doc["records"][0]
        assert abs(rec["value"] - TWO_K0_2) < 1e-7 * TWO_K0_2
        assert rec["method"] in ("direct", "shifted")
        assert rec["abs_err_estimate"] >= 0.0

    def test_csv_header_and_columns(self, capsys):
        code, out, _ = run_cli(["eval", "--c", "1", "--t", "1"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "# urbanik-sf v1"
        assert lines[1] == "c,t,value,abs_err_estimate,method,log_value"
        assert len(lines) == 3

    def test_determinism(self, capsys):
        args = ["eval", "--c", "1.3", "--t", "0.5:20:7", "--format", "json"]
        _, out1, _ = run_cli(args, capsys)
        _, out2, _ = run_cli(args, capsys)
        assert out1 == out2


class TestTable:
    def test_exponential_rows(self, capsys):
        code, out, _ = run_cli(
            ["table", "--c", "1", "--t", "1:10:10", "--format", "json"], capsys
        )
        assert code == 0
        recs = json.loads(out)["records"]
        assert len(recs) == 10
        for rec in recs:
            assert abs(rec["value"] - math.exp(-rec["t"])) <= 1e-7 * math.exp(-rec["t"])

    def test_linear_spacing(self, capsys):
        code, out, _ = run_cli(
            ["table", "--c", "1", "--t", "1:3:3:lin", "--format", "json"], capsys
        )
        ts = [r["t"] for r in json.loads(out)["records"]]
        assert ts == [1.0, 2.0, 3.0]


class TestKrein:
    def test_two_classifications(self, capsys):
        code, out, _ = run_cli(
            ["krein", "--c", "3", "--c", "1.5", "--format", "json"], capsys
        )
        assert code == 0
        recs = json.loads(out)["records"]
        cls = {r["c"]: r["classification"] for r in recs}
        assert cls == {3.0: "CONVERGENT", 1.5: "DIVERGENT"}


class TestAsympt:
    def test_c1_ratios_are_one(self):
        # The large-t leading term is exact for c = 1, so every ratio is
        # 1 up to quadrature error.
        from urbanik_sf.cli import emit_asympt_ratio_table

        rows = emit_asympt_ratio_table([1.0], [0.5, 2.0, 15.0], mode="large")
        for row in rows:
            assert abs(row[4] - 1.0) < 1e-8

    def test_scaled_residual_columns(self, capsys):
        code, out, _ = run_cli(
            ["asympt", "--c", "2", "--t", "100", "--t", "1e-5", "--format", "json"],
            capsys,
        )
        assert code == 0
        recs = json.loads(out)["records"]
        by_mode = {r["mode"]: r for r in recs}
        large, small = by_mode["large"], by_mode["small"]
        assert abs(large["scaled_residual"]) < 10.0
        assert abs(small["scaled_residual"]) < 10.0
        assert abs((large["ratio"] - 1.0) * 100.0 ** 0.5 - large["scaled_residual"]) < 1e-9
        lam = -math.log(1e-5)
        assert abs((small["ratio"] - 1.0) * lam - small["scaled_residual"]) < 1e-9


class TestMoments:
    def test_small_run(self, capsys):
        code, out, _ = run_cli(
            ["moments", "--c", "1", "--n-max", "2", "--format", "json"], capsys
        )
        assert code == 0
        recs = json.loads(out)["records"]
        assert [r["inputs"]["n"] for r in recs] == [0, 1, 2]
        assert all(r["pass"] for r in recs)


class TestSemigroupCmd:
    def test_pairing(self, capsys):
        code, out, _ = run_cli(
            ["semigroup", "--c", "1", "--d", "1", "--t", "1", "--format", "json"],
            capsys,
        )
        assert code == 0
        recs = json.loads(out)["records"]
        assert recs[0]["pass"] is True


class TestErrors:
    def test_unknown_subcommand_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["plot", "--c", "1"])
        assert exc.value.code == 2

    def test_missing_t_value_error(self, capsys):
        code, _, err = run_cli(["eval", "--c", "1"], capsys)
        assert code == 2
        assert json.loads(err)["schema"] == 1

    def test_negative_c_rejected(self, capsys):
        code, _, err = run_cli(["eval", "--c", "-1", "--t", "1"], capsys)
        assert code == 2
        assert "error" in json.loads(err)

    def test_bad_range_count(self, capsys):
        code, _, err = run_cli(["eval", "--c", "1", "--t", "1:10:1"], capsys)
        assert code == 2

    def test_mismatched_d(self, capsys):
        code, _, err = run_cli(
            ["semigroup", "--c", "1", "--c", "2", "--d", "1", "--t", "1"], capsys
        )
        assert code == 2

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "rows.csv"
        code, out, _ = run_cli(
            ["eval", "--c", "1", "--t", "1", "--out", str(path)], capsys
        )
        assert code == 0
        assert out == ""
        assert path.read_text().startswith("# urbanik-sf v1")

import json
from fractions import Fraction

from deltaseries import cli
from deltaseries import scalar as sc


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTable:
    def test_rising_row4(self, capsys):
        code, out, _ = run(capsys, "table", "--kind", "s2", "--preset", "rising", "--n", "4")
        assert code == 0
        assert out.splitlines()[4] == "4: 0  24  36  12  1"

    def test_identity_s1(self, capsys):
        code, out, _ = run(capsys, "table", "--kind", "s1", "--preset", "identity", "--n", "3")
        assert code == 0
        assert out.splitlines()[3] == "3: 0  2  -3  1"

    def test_not_delta_exits_2(self, capsys):
        code, _, err = run(capsys, "table", "--kind", "s2", "--f", "t^2", "--n", "4")
        assert code == 2
        assert "NotDelta" in err

    def test_csv_quotes_fractions(self, capsys):
        code, out, _ = run(
            capsys, "table", "--kind", "s1", "--preset", "mittag_leffler", "--n", "3", "--format", "csv"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n,k,value"
        assert '"' in [l for l in lines if l.startswith("2,1,")][0]

    def test_json_round_trip(self, capsys):
        code, out, _ = run(
            capsys, "table", "--kind", "s2", "--preset", "deg_falling",
            "--lambda", "symbolic", "--n", "4", "--format", "json",
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["kind"] == "s2" and obj["max_n"] == 4 and obj["ring"] == "QL"
        values = [[sc.parse_scalar(v) for v in row] for row in obj["rows"]]
        assert values[2][1] == 1 - sc.LAMBDA

    def test_lambda_rational_specializes(self, capsys):
        _, sym, _ = run(
            capsys, "table", "--kind", "s2", "--preset", "deg_falling",
            "--lambda", "symbolic", "--n", "4", "--format", "json",
        )
        _, num, _ = run(
            capsys, "table", "--kind", "s2", "--preset", "deg_falling",
            "--lambda", "1/3", "--n", "4", "--format", "json",
        )
        sym_rows = json.loads(sym)["rows"]
        num_rows = json.loads(num)["rows"]
        r = Fraction(1, 3)
        for row_s, row_n in zip(sym_rows, num_rows):
            for a, b in zip(row_s, row_n):
                assert sc.eval_lambda(sc.parse_scalar(a), r) == sc.parse_scalar(b)


class TestSeriesCommands:
    def test_log_mittag_leffler(self, capsys):
        code, out, _ = run(capsys, "log", "--preset", "mittag_leffler", "--order", "6")
        assert code == 0
        assert out.splitlines()[1] == "[t^1] 1/2"
        assert out.splitlines()[2] == "[t^2] -1/4"

    def test_bernoulli_classical(self, capsys):
        code, out, _ = run(capsys, "bernoulli", "--f", "t", "--alpha", "1", "--n", "6")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "B_0 = 1"
        assert lines[2] == "B_2 = 1/6"
        assert lines[6] == "B_6 = 1/42"

    def test_invert_json(self, capsys):
        code, out, _ = run(capsys, "invert", "--f", "exp(t)-1", "--order", "6", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["coeffs"][:4] == ["0", "1", "-1/2", "1/3"]

    def test_eval(self, capsys):
        code, out, _ = run(capsys, "eval", "--f", "sqrt(t^2+4)", "--order", "4")
        assert code == 0
        assert out.splitlines()[0] == "[t^0] 2"

    def test_eval_syntax_error_exits_2(self, capsys):
        code, _, err = run(capsys, "eval", "--f", "t/(", "--order", "4")
        assert code == 2
        assert "error" in err


class TestVerify:
    def test_single_preset(self, capsys):
        code, out, _ = run(capsys, "verify", "schloemilch", "--f", "t/(1+t)", "--n", "6")
        assert code == 0
        assert "pass" in out

    def test_all_suites_small(self, capsys):
        code, out, _ = run(capsys, "verify", "orthogonality", "--preset", "identity", "--n", "6")
        assert code == 0
        assert "orthogonality" in out


class TestUsage:
    def test_missing_source(self, capsys):
        code, _, err = run(capsys, "table", "--kind", "s2", "--n", "4")
        assert code == 2
        assert "preset" in err

    def test_unknown_preset(self, capsys):
        code, _, err = run(capsys, "log", "--preset", "nope", "--order", "4")
        assert code == 2

    def test_n_exceeds_order(self, capsys):
        code, _, err = run(capsys, "table", "--kind", "s2", "--preset", "identity", "--n", "6", "--order", "4")
        assert code == 2
        assert "--n" in err

    def test_order_cap_env(self, capsys, monkeypatch):
        monkeypatch.setenv("DELTASERIES_MAX_ORDER", "10")
        code, _, err = run(capsys, "log", "--preset", "identity", "--order", "11")
        assert code == 2
        assert "DELTASERIES_MAX_ORDER" in err
        monkeypatch.setenv("DELTASERIES_MAX_ORDER", "200")
        code, _, _ = run(capsys, "log", "--preset", "identity", "--order", "130")
        assert code == 0

    def test_degenerate_without_lambda(self, capsys):
        code, _, err = run(capsys, "table", "--kind", "s2", "--preset", "deg_falling", "--n", "4")
        assert code == 2
        assert "Lambda" in err or "lambda" in err

    def test_bad_alpha(self, capsys):
        code, _, err = run(capsys, "bernoulli", "--f", "t", "--alpha", "x", "--n", "4")
        assert code == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "tri.csv"
        code, out, _ = run(
            capsys, "table", "--kind", "s2", "--preset", "identity", "--n", "3",
            "--format", "csv", "--out", str(target),
        )
        assert code == 0 and out == ""
        assert target.read_text().splitlines()[0] == "n,k,value"


class TestPresetsList:
    def test_plain(self, capsys):
        code, out, _ = run(capsys, "presets-list")
        assert code == 0
        assert "mittag_leffler" in out and "deg_falling" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "presets-list", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert len(obj) == 15
        assert obj["laguerre_m1"]["letter"] == "o"

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from metricgeom.cli import (
    EXIT_DIMENSION,
    EXIT_NUMERIC,
    EXIT_PARSE,
    EXIT_VIOLATION,
    dumps,
    main,
    parse_metric_spec,
)


def write_curve(path, params, points, derivs=None):
    data = {"params": list(params), "points": [list(p) for p in points]}
    if derivs is not None:
        data["derivs"] = [list(d) for d in derivs]
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


class TestMetricSpecGrammar:
    def test_plain_and_snowflaked(self):
        assert parse_metric_spec("lp:2").beta == 1.0
        assert parse_metric_spec("lp:inf").norm.p == math.inf
        assert parse_metric_spec("lp:2:snow:0.5").beta == 0.5
        assert parse_metric_spec("lp:2:snow:0.5:snow:0.5").beta == 0.25

    @pytest.mark.parametrize(
        "bad", ["lp", "l2:2", "lp:0.7", "lp:abc", "lp:2:snow", "lp:2:snow:1.5", "lp:2:ice:0.5"]
    )
    def test_rejects_bad_specs(self, bad):
        from metricgeom.cli import MetricSpecError

        with pytest.raises(MetricSpecError):
            parse_metric_spec(bad)

    def test_errors_carry_token_position(self):
        from metricgeom.cli import MetricSpecError

        with pytest.raises(MetricSpecError, match="token 3"):
            parse_metric_spec("lp:2:snow:oops")


class TestLengthCommand:
    def test_staircase_l1(self, tmp_path, capsys):
        f = write_curve(tmp_path / "c.json", [0, 1, 2], [[0, 0], [1, 0], [1, 1]])
        code, out = run(capsys, ["length", f, "--metric", "lp:1"])
        assert code == 0
        assert out["length"] == 2.0
        assert out["lipschitz_estimate"] == 1.0
        assert out["interval"] == [0.0, 2.0]

    def test_single_point(self, tmp_path, capsys):
        f = write_curve(tmp_path / "c.json", [0], [[1, 2]])
        code, out = run(capsys, ["length", f, "--metric", "lp:2"])
        assert code == 0
        assert out["length"] == 0.0
        assert out["lipschitz_estimate"] == 0.0

    def test_diagonal_l2(self, tmp_path, capsys):
        f = write_curve(tmp_path / "c.json", [0, 1], [[0, 0], [1, 1]])
        code, out = run(capsys, ["length", f, "--metric", "lp:2"])
        assert code == 0
        assert out["length"] == pytest.approx(math.sqrt(2.0))

    def test_csv_input(self, tmp_path, capsys):
        f = tmp_path / "c.csv"
        f.write_text("0,0,0\n1,1,0\n2,1,1\n")
        code, out = run(capsys, ["length", str(f), "--metric", "lp:1"])
        assert code == 0
        assert out["length"] == 2.0

    def test_bad_csv_reports_line(self, tmp_path, capsys):
        f = tmp_path / "c.csv"
        f.write_text("0,0\noops,1\n")
        code = main(["length", str(f), "--metric", "lp:1"])
        assert code == EXIT_PARSE

    def test_malformed_json(self, tmp_path, capsys):
        f = tmp_path / "c.json"
        f.write_text("{nope")
        assert main(["length", str(f), "--metric", "lp:1"]) == EXIT_PARSE

    def test_invalid_curve_fields(self, tmp_path):
        f = tmp_path / "c.json"
        f.write_text(json.dumps({"params": [1, 0], "points": [[0], [1]]}))
        assert main(["length", str(f), "--metric", "lp:1"]) == EXIT_PARSE


class TestGeodesicCommand:
    def test_euclidean_diagonal(self, capsys):
        code, out = run(
            capsys,
            ["geodesic", "--start", "0,0", "--end", "1,1", "--metric", "lp:2",
             "--segments", "16"],
        )
        assert code == 0
        assert out["converged"] is True
        assert out["k"] == pytest.approx(1.41421, abs=1e-3)
        assert len(out["path"]["params"]) == 17

    def test_coincident_endpoints(self, capsys):
        code, out = run(
            capsys, ["geodesic", "--start", "1,2", "--end", "1,2", "--metric", "lp:2"]
        )
        assert code == 0
        assert out["k"] == 0.0

    def test_l1_diagonal(self, capsys):
        code, out = run(
            capsys,
            ["geodesic", "--start", "0,0", "--end", "1,1", "--metric", "lp:1",
             "--segments", "16"],
        )
        assert code == 0
        assert out["k"] == pytest.approx(2.0, abs=1e-3)

    def test_dimension_mismatch_exit_code(self, capsys):
        code = main(["geodesic", "--start", "0,0", "--end", "1,1,1", "--metric", "lp:2"])
        assert code == EXIT_DIMENSION

    def test_path_roundtrips_through_length(self, tmp_path, capsys):
        code, out = run(
            capsys,
            ["geodesic", "--start", "0,0", "--end", "3,4", "--metric", "lp:2",
             "--segments", "8"],
        )
        assert code == 0
        f = tmp_path / "path.json"
        f.write_text(json.dumps(out["path"]))
        code2, out2 = run(capsys, ["length", str(f), "--metric", "lp:2"])
        assert code2 == 0
        assert out2["length"] == pytest.approx(5.0, abs=1e-6)

    def test_output_bytes_stable(self, capsys):
        argv = ["geodesic", "--start", "0,0", "--end", "1,1", "--metric", "lp:3",
                "--segments", "8", "--seed", "7"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        second = capsys.readouterr().out
        assert first == second


class TestReparamCommand:
    def test_constant_speed_two_doubles_interval(self, tmp_path, capsys):
        t = np.linspace(0.0, 1.0, 51)
        f = write_curve(
            tmp_path / "c.json", t,
            np.column_stack([2.0 * t, np.zeros_like(t)]),
            np.column_stack([np.full_like(t, 2.0), np.zeros_like(t)]),
        )
        code, out = run(capsys, ["reparam", f, "--metric", "lp:2"])
        assert code == 0
        assert out["params"][-1] == pytest.approx(2.0)
        # emitted derivatives are normalized to unit speed
        assert out["derivs"][0] == [1.0, 0.0]

    def test_quarter_circle_interval(self, tmp_path, capsys):
        t = np.linspace(0.0, math.pi / 2.0, 200)
        f = write_curve(
            tmp_path / "c.json", t,
            np.column_stack([np.cos(t), np.sin(t)]),
            np.column_stack([-np.sin(t), np.cos(t)]),
        )
        code, out = run(capsys, ["reparam", f, "--metric", "lp:2"])
        assert code == 0
        assert out["params"][-1] == pytest.approx(math.pi / 2.0, abs=1e-9)

    def test_missing_derivs_is_a_parse_error(self, tmp_path):
        f = write_curve(tmp_path / "c.json", [0, 1], [[0, 0], [1, 0]])
        assert main(["reparam", f, "--metric", "lp:2"]) == EXIT_PARSE

    def test_speed_floor_violation_exit_code(self, tmp_path):
        t = np.linspace(0.0, 1.0, 20)
        f = write_curve(
            tmp_path / "c.json", t,
            np.column_stack([t * t / 2.0, np.zeros_like(t)]),
            np.column_stack([t, np.zeros_like(t)]),  # speed vanishes at t = 0
        )
        assert main(["reparam", f, "--metric", "lp:2"]) == EXIT_NUMERIC

    def test_snowflake_metric_rejected(self, tmp_path):
        t = np.linspace(0.0, 1.0, 5)
        f = write_curve(
            tmp_path / "c.json", t,
            np.column_stack([t, np.zeros_like(t)]),
            np.column_stack([np.ones_like(t), np.zeros_like(t)]),
        )
        assert main(["reparam", f, "--metric", "lp:2:snow:0.5"]) == EXIT_PARSE


class TestHolderCommand:
    def test_sqrt_fixture(self, tmp_path, capsys):
        xs = np.linspace(0.0, 1.0, 400)
        dom = write_curve(tmp_path / "d.json", xs, xs[:, None])
        rng = write_curve(tmp_path / "r.json", xs, np.sqrt(xs)[:, None])
        code, out = run(
            capsys, ["holder", dom, rng, "--d1", "lp:1", "--d2", "lp:1", "--alpha", "0.5"]
        )
        assert code == 0
        assert out["holder"] is True
        assert out["C"] == pytest.approx(1.0, abs=1e-9)

    def test_identity_fixture(self, tmp_path, capsys):
        xs = np.linspace(0.0, 1.0, 50)
        dom = write_curve(tmp_path / "d.json", xs, xs[:, None])
        code, out = run(
            capsys, ["holder", dom, dom, "--d1", "lp:1", "--d2", "lp:1", "--alpha", "1"]
        )
        assert code == 0
        assert out["C"] == 1.0

    def test_fit_mode_on_koch(self, tmp_path, capsys):
        from metricgeom import koch_generator

        c = koch_generator(5)
        dom = write_curve(tmp_path / "d.json", c.params, c.params[:, None])
        rng = write_curve(tmp_path / "r.json", c.params, c.points)
        code, out = run(capsys, ["holder", dom, rng, "--d1", "lp:1", "--d2", "lp:2"])
        assert code == 0
        assert out["alpha"] == pytest.approx(math.log(3.0) / math.log(4.0), abs=0.05)

    def test_count_mismatch_exit_code(self, tmp_path):
        dom = write_curve(tmp_path / "d.json", [0, 1], [[0], [1]])
        rng = write_curve(tmp_path / "r.json", [0, 1, 2], [[0], [1], [2]])
        assert main(
            ["holder", dom, rng, "--d1", "lp:1", "--d2", "lp:1", "--alpha", "1"]
        ) == EXIT_DIMENSION


class TestCheckCommand:
    def test_snowflaked_euclidean_passes(self, capsys):
        code, out = run(
            capsys, ["check", "--metric", "lp:2:snow:0.5", "--samples", "500"]
        )
        assert code == 0
        assert out["passed"] is True
        assert {s["suite"] for s in out["suites"]} == {
            "norm_axioms", "unit_ball_convexity", "metric_axioms"
        }

    def test_p3_passes(self, capsys):
        code, out = run(capsys, ["check", "--metric", "lp:3", "--samples", "500"])
        assert code == 0
        assert out["passed"] is True

    def test_sub_one_exponent_rejected_at_parse(self, capsys):
        assert main(["check", "--metric", "lp:0.7", "--samples", "10"]) == EXIT_PARSE

    def test_absurd_tolerance_reports_violations(self, capsys):
        # a negative tolerance flags ordinary roundoff, driving the exit code
        code, out = run(
            capsys, ["check", "--metric", "lp:2", "--samples", "100", "--tol", "-1"]
        )
        assert code == EXIT_VIOLATION
        assert out["passed"] is False


class TestCoveringCommand:
    def test_unit_segment(self, tmp_path, capsys):
        t = np.linspace(0.0, 1.0, 65)
        f = write_curve(tmp_path / "c.json", t, np.column_stack([t, np.zeros_like(t)]))
        code, out = run(
            capsys,
            ["covering", f, "--metric", "lp:2", "--alpha", "1", "--scales", "4,16"],
        )
        assert code == 0
        assert out["sums"][0] == {"scale": 4, "sum": pytest.approx(1.0)}


class TestSerialization:
    def test_seventeen_digit_floats_roundtrip(self):
        values = [0.1, 1.0 / 3.0, math.pi, 1e-300, 123456789.123456789]
        text = dumps({"values": values})
        parsed = json.loads(text)["values"]
        assert parsed == values

    def test_emitted_curves_reparse_identically(self, tmp_path):
        from metricgeom import GeodesicProblem, NormSpec, norm_metric, solve
        from metricgeom.cli import curve_to_dict, load_curve

        res = solve(GeodesicProblem(norm_metric(NormSpec(3)), [0.1, 0.2], [2.0, 1.0],
                                    segment_count=7))
        f = tmp_path / "path.json"
        f.write_text(dumps(curve_to_dict(res.path)))
        reparsed, _ = load_curve(str(f))
        assert reparsed == res.path  # bitwise equality of params and points

    def test_stdin_input(self, tmp_path):
        payload = json.dumps({"params": [0, 1], "points": [[0, 0], [1, 1]]})
        proc = subprocess.run(
            [sys.executable, "-m", "metricgeom.cli", "length", "-", "--metric", "lp:2"],
            input=payload, capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["length"] == pytest.approx(math.sqrt(2.0))

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0

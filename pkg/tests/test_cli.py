import json
import math

import pytest

from bosonctx import __version__
from bosonctx.cli import main
from bosonctx.experiment import parse_table


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestSimulate:
    def test_json_table(self, capsys):
        code, out = run_cli(capsys, "simulate", "--theta", str(math.pi / 4), "--eta", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == 1
        table = parse_table(out)
        assert table.probability("A", "at") == pytest.approx(0.5, abs=1e-12)

    def test_csv_table(self, capsys):
        code, out = run_cli(capsys, "simulate", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "# schema=1"
        table = parse_table(out)
        assert table.probability("AB", "ar,bt") == pytest.approx(0.5, abs=1e-12)

    def test_output_is_deterministic(self, capsys):
        _, first = run_cli(capsys, "simulate", "--eta", "0.25")
        _, second = run_cli(capsys, "simulate", "--eta", "0.25")
        assert first == second

    def test_theta_deg_alias(self, capsys):
        _, by_rad = run_cli(capsys, "simulate", "--theta", str(math.pi / 4))
        _, by_deg = run_cli(capsys, "simulate", "--theta-deg", "45")
        assert json.loads(by_rad)["records"] == json.loads(by_deg)["records"]

    def test_fully_transmissive(self, capsys):
        _, out = run_cli(capsys, "simulate", "--theta", "0")
        table = parse_table(out)
        assert table.probability("B", "bt") == 1.0

    def test_eta_out_of_range_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["simulate", "--eta", "2"])
        assert err.value.code == 2

    def test_writes_to_file(self, capsys, tmp_path):
        target = tmp_path / "table.json"
        code, out = run_cli(capsys, "simulate", "-o", str(target))
        assert code == 0 and out == ""
        assert parse_table(target.read_text()).eta == 1.0


class TestAnalyze:
    def test_pentagon_defaults(self, capsys):
        code, out = run_cli(capsys, "analyze", "--test", "pentagon")
        assert code == 0
        report = json.loads(out)
        assert report["sum"] == pytest.approx(2.5, abs=1e-12)
        assert report["nc_bound"] == 2
        assert report["q_bound"] == pytest.approx(math.sqrt(5), abs=1e-12)
        assert report["violates_nc"] is True
        assert report["violates_q"] is True

    def test_triangle_defaults(self, capsys):
        code, out = run_cli(capsys, "analyze", "--test", "triangle")
        assert code == 0
        report = json.loads(out)
        assert report["sum"] == pytest.approx(1.5, abs=1e-12)
        assert report["nc_bound"] == 1
        assert report["violates_nc"] is True
        assert "q_bound" not in report
        assert "violates_q" not in report

    def test_distinguishable_photons_do_not_violate(self, capsys):
        _, out = run_cli(capsys, "analyze", "--test", "pentagon", "--eta", "0")
        report = json.loads(out)
        assert report["sum"] == pytest.approx(1.5, abs=1e-12)
        assert report["violates_nc"] is False

    def test_round_trip_through_simulate(self, capsys, tmp_path):
        for fmt in ("json", "csv"):
            path = tmp_path / f"table.{fmt}"
            run_cli(capsys, "simulate", "--eta", "0.8", "--format", fmt, "-o", str(path))
            _, direct = run_cli(capsys, "analyze", "--test", "pentagon", "--eta", "0.8")
            _, loaded = run_cli(capsys, "analyze", "--test", "pentagon", "--input", str(path))
            assert abs(json.loads(direct)["sum"] - json.loads(loaded)["sum"]) <= 1e-12

    def test_missing_input_file_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["analyze", "--test", "pentagon", "--input", "/nonexistent.json"])
        assert err.value.code == 2


class TestBounds:
    def test_pentagon(self, capsys):
        code, out = run_cli(capsys, "bounds", "--graph", "pentagon")
        assert code == 0
        report = json.loads(out)
        assert report["alpha"] == 2
        assert report["theta_lovasz"] == pytest.approx(math.sqrt(5), abs=1e-12)
        assert report["fractional_max"] == 2.5

    def test_triangle(self, capsys):
        _, out = run_cli(capsys, "bounds", "--graph", "triangle")
        report = json.loads(out)
        assert report["alpha"] == 1
        assert report["fractional_max"] == 1.5
        assert "theta_lovasz" not in report

    def test_seven_cycle(self, capsys):
        _, out = run_cli(capsys, "bounds", "--graph", "cycle:7")
        report = json.loads(out)
        assert report["alpha"] == 3
        assert report["theta_lovasz"] == pytest.approx(3.3176672073940964, abs=1e-12)
        assert report["fractional_max"] == 3.5

    def test_even_cycle_has_no_lovasz_field(self, capsys):
        _, out = run_cli(capsys, "bounds", "--graph", "cycle:6")
        report = json.loads(out)
        assert report["alpha"] == 3
        assert report["fractional_max"] == 3.0
        assert "theta_lovasz" not in report

    def test_bad_graph_is_usage_error(self, capsys):
        for bad in ("hexagon", "cycle:x", "cycle:2"):
            with pytest.raises(SystemExit) as err:
                main(["bounds", "--graph", bad])
            assert err.value.code == 2


class TestSweep:
    def test_pentagon_crossings(self, capsys):
        code, out = run_cli(capsys, "sweep", "--test", "pentagon", "--steps", "101")
        assert code == 0
        report = json.loads(out)
        assert report["crossings"]["noncontextual"] == pytest.approx(0.5, abs=1e-9)
        assert report["crossings"]["quantum"] == pytest.approx(math.sqrt(5) - 1.5, abs=1e-9)
        assert len(report["series"]) == 101

    def test_triangle_crossing(self, capsys):
        _, out = run_cli(capsys, "sweep", "--test", "triangle")
        report = json.loads(out)
        assert report["crossings"]["noncontextual"] == pytest.approx(1 / 3, abs=1e-9)

    def test_csv_format(self, capsys):
        _, out = run_cli(capsys, "sweep", "--test", "pentagon", "--format", "csv",
                         "--steps", "11")
        lines = out.splitlines()
        assert "# crossing_noncontextual=0.5" in lines
        assert lines.count("eta,sum") == 1
        assert len([l for l in lines if not l.startswith("#")]) == 12

    def test_deterministic(self, capsys):
        _, first = run_cli(capsys, "sweep", "--test", "pentagon", "--steps", "11")
        _, second = run_cli(capsys, "sweep", "--test", "pentagon", "--steps", "11")
        assert first == second

    def test_bad_steps_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["sweep", "--test", "pentagon", "--steps", "1"])
        assert err.value.code == 2


class TestVerify:
    def test_simulated_table_passes(self, capsys, tmp_path):
        path = tmp_path / "table.json"
        run_cli(capsys, "simulate", "-o", str(path))
        code, out = run_cli(capsys, "verify", "--input", str(path))
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        assert all(check["passed"] for check in report["checks"])

    def test_generic_parameters_pass(self, capsys, tmp_path):
        path = tmp_path / "table.json"
        run_cli(capsys, "simulate", "--theta", "0.9", "--eta", "0.6", "-o", str(path))
        code, _ = run_cli(capsys, "verify", "--input", str(path))
        assert code == 0

    def test_perturbed_table_fails_and_names_identity(self, capsys, tmp_path):
        path = tmp_path / "table.json"
        run_cli(capsys, "simulate", "-o", str(path))
        payload = json.loads(path.read_text())
        for record in payload["records"]:
            if record["context"] == "AB" and record["outcome"] == "ar,bt":
                record["probability"] += 1e-3
        path.write_text(json.dumps(payload))
        code, out = run_cli(capsys, "verify", "--input", str(path))
        assert code == 1
        report = json.loads(out)
        assert report["passed"] is False
        names = [f["name"] for check in report["checks"] for f in check["failures"]]
        assert any("A=r" in name and "AB" in name for name in names)

    def test_malformed_file_is_parse_error(self, capsys, tmp_path):
        path = tmp_path / "garbage.json"
        path.write_text("this is not a table")
        with pytest.raises(SystemExit) as err:
            main(["verify", "--input", str(path)])
        assert err.value.code == 2

    def test_missing_context_is_parse_error(self, capsys, tmp_path):
        path = tmp_path / "partial.json"
        run_cli(capsys, "simulate", "-o", str(path))
        payload = json.loads(path.read_text())
        payload["records"] = [r for r in payload["records"] if r["context"] != "BC"]
        path.write_text(json.dumps(payload))
        with pytest.raises(SystemExit) as err:
            main(["verify", "--input", str(path)])
        assert err.value.code == 2

    def test_bad_tolerance_is_usage_error(self, capsys, tmp_path):
        path = tmp_path / "table.json"
        run_cli(capsys, "simulate", "-o", str(path))
        with pytest.raises(SystemExit) as err:
            main(["verify", "--input", str(path), "--tolerance", "0"])
        assert err.value.code == 2


class TestUsage:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as err:
            main(["frobnicate"])
        assert err.value.code == 2

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["--version"])
        assert err.value.code == 0
        assert __version__ in capsys.readouterr().out

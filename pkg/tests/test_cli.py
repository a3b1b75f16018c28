"""
Command-line tests.

Every command is driven through main(argv) and checked on its stdout report
and exit code.
"""

import csv
import io
import json
from pathlib import Path

import pytest

from lfm_recurrence import __version__
from lfm_recurrence.__main__ import main
from lfm_recurrence.cli import parse_grid
from lfm_recurrence.core.config import RunConfig
from lfm_recurrence.utils.error_handler import ExitCode, ValidationError


def run_json(capsys: pytest.CaptureFixture, *argv: str) -> dict:
    assert main(list(argv)) == ExitCode.SUCCESS
    return json.loads(capsys.readouterr().out)


def run_csv(capsys: pytest.CaptureFixture, *argv: str) -> list[list[str]]:
    assert main(list(argv)) == ExitCode.SUCCESS
    return list(csv.reader(io.StringIO(capsys.readouterr().out)))


class TestCommands:
    """One test per command."""

    def test_decide(self, capsys: pytest.CaptureFixture) -> None:
        report = run_json(capsys, "decide", "--preset", "parabolic-auto", "--nu", "0", "--lambda", "1")
        assert report["recurrent"] is True
        assert report["rule"] == "ParabolicAutomorphism"

    def test_decide_complex_lambda(self, capsys: pytest.CaptureFixture) -> None:
        report = run_json(capsys, "decide", "--map", "3,1,1,3", "--lambda", "0.6+0.8i")
        assert report["recurrent"] is True
        assert report["lambda"] == pytest.approx([0.6, 0.8])

    def test_classify(self, capsys: pytest.CaptureFixture) -> None:
        report = run_json(capsys, "classify", "--map", "0,1,-1,2")
        assert report["category"] == "ParabolicNonAutomorphism"
        assert report["is_automorphism"] is False
        assert report["translation_parameter"] == pytest.approx([2, 0], abs=1e-9)
        assert report["denjoy_wolff_point"] == pytest.approx([1, 0])
        assert report["denjoy_wolff_iterate"] == pytest.approx([1, 0], abs=1e-12)

    def test_classify_parabolic_automorphism(self, capsys: pytest.CaptureFixture) -> None:
        report = run_json(capsys, "classify", "--preset", "parabolic-auto")
        assert report["category"] == "ParabolicAutomorphism"
        assert report["denjoy_wolff_iterate"] == pytest.approx([1, 0], abs=1e-12)

    def test_orbit_csv(self, capsys: pytest.CaptureFixture) -> None:
        rows = run_csv(capsys, "orbit", "--preset", "elliptic-rational", "--nu", "0", "--lambda", "1",
                       "--max-iter", "5")
        assert rows[0] == ["k", "distance", "running_min"]
        assert [row[0] for row in rows[1:]] == ["1", "2", "3", "4", "5"]
        assert float(rows[3][1]) == 0
        assert float(rows[1][1]) == pytest.approx(3**0.5)

    def test_orbit_with_series(self, capsys: pytest.CaptureFixture) -> None:
        rows = run_csv(capsys, "orbit", "--preset", "elliptic-rational", "--max-iter", "3",
                       "--series", "[0, 0, [1, 0]]")
        assert float(rows[3][1]) == 0
        assert float(rows[1][1]) == pytest.approx(3**0.5)

    def test_matrix(self, capsys: pytest.CaptureFixture) -> None:
        report = run_json(capsys, "matrix", "--preset", "hyperbolic-nonauto", "--size", "4")
        values = [e["value"] for e in report["eigenvalues"]]
        assert values == [[1, 0], [0.5, 0], [0.25, 0], [0.125, 0]]
        assert len(report["entries"]) == 4

    def test_matrix_csv(self, capsys: pytest.CaptureFixture) -> None:
        rows = run_csv(capsys, "matrix", "--preset", "hyperbolic-nonauto", "--size", "3", "--format", "csv")
        assert rows[0] == ["index", "re", "im", "residual", "converged"]
        assert len(rows) == 4

    def test_kernel(self, capsys: pytest.CaptureFixture) -> None:
        report = run_json(capsys, "kernel", "--w", "0.5", "--nu", "0", "--degree", "64",
                          "--series", "[1, 1, 1]")
        assert report["norm_sq"] == pytest.approx(4 / 3)
        assert report["reproducing_error"] < 1e-12
        assert report["value"] == pytest.approx([1.75, 0])
        assert report["tail_bound_finite"] is True

    def test_kernel_without_tail_bound(self, capsys: pytest.CaptureFixture) -> None:
        """No geometric tail bound for negative nu near the circle: null, not Infinity."""
        assert main(["kernel", "--w", "0.99", "--nu=-1", "--degree", "8"]) == ExitCode.SUCCESS
        out = capsys.readouterr().out
        assert "Infinity" not in out
        report = json.loads(out)
        assert report["tail_bound"] is None
        assert report["tail_bound_finite"] is False

    def test_spectrum(self, capsys: pytest.CaptureFixture) -> None:
        report = run_json(capsys, "spectrum", "--preset", "hyperbolic-nonauto", "--nu", "2", "--k-max", "3")
        assert report["family"] == "HyperbolicNonAutoDiskPlusPoints"
        assert report["discrete_points"] == pytest.approx([1, 0.5, 0.25, 0.125])
        assert report["circle_component_flag"] is True

    def test_presets(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["presets"]) == ExitCode.SUCCESS
        output = capsys.readouterr().out
        assert "hyperbolic-auto" in output
        assert "elliptic-irrational" in output

    def test_version(self, capsys: pytest.CaptureFixture) -> None:
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert __version__ in capsys.readouterr().out


class TestSweep:
    """Grid verdicts."""

    def test_pattern(self, capsys: pytest.CaptureFixture) -> None:
        rows = run_csv(capsys, "sweep", "--preset", "hyperbolic-auto", "--nu-grid", "0",
                       "--lambda-grid", "0.5,1,1.41,1.42")
        assert rows[0] == ["nu", "abs_lambda", "recurrent", "rule", "boundary"]
        assert [row[2] for row in rows[1:]] == ["no", "yes", "yes", "no"]

    def test_never_recurrent(self, capsys: pytest.CaptureFixture) -> None:
        rows = run_csv(capsys, "sweep", "--preset", "parabolic-nonauto", "--nu-grid=-1:2:7",
                       "--lambda-grid", "0.5:3:6")
        assert len(rows) == 1 + 7 * 6
        assert {row[2] for row in rows[1:]} == {"no"}

    def test_elliptic_unit_circle(self, capsys: pytest.CaptureFixture) -> None:
        rows = run_csv(capsys, "sweep", "--preset", "elliptic-irrational", "--nu-grid=-1:2:5",
                       "--lambda-grid", "1")
        assert {row[2] for row in rows[1:]} == {"yes"}

    def test_workers_do_not_change_output(self, capsys: pytest.CaptureFixture) -> None:
        argv = ["sweep", "--preset", "hyperbolic-nonauto", "--nu-grid=-1:2:20", "--lambda-grid", "0.1:3:20"]
        serial = run_csv(capsys, *argv)
        parallel = run_csv(capsys, *argv, "--workers", "4")
        assert serial == parallel

    def test_nu_major_order(self, capsys: pytest.CaptureFixture) -> None:
        rows = run_csv(capsys, "sweep", "--preset", "hyperbolic-auto", "--nu-grid", "0,1",
                       "--lambda-grid", "1,2")
        assert [(row[0], row[1]) for row in rows[1:]] == [("0", "1"), ("0", "2"), ("1", "1"), ("1", "2")]

    def test_json_format(self, capsys: pytest.CaptureFixture) -> None:
        report = run_json(capsys, "sweep", "--preset", "hyperbolic-auto", "--nu-grid", "0",
                          "--lambda-grid", "1", "--format", "json")
        assert report["cells"] == [
            {"nu": 0.0, "abs_lambda": 1.0, "recurrent": True, "rule": "HyperbolicAutomorphism",
             "boundary": False}
        ]


class TestOptions:
    """Output files, configuration files and grids."""

    def test_out_file(self, capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
        out = tmp_path / "reports" / "decide.json"
        assert main(["decide", "--preset", "hyperbolic-auto", "--out", str(out)]) == ExitCode.SUCCESS
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text(encoding="utf-8"))["recurrent"] is True

    def test_config_file(self, capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
        path = tmp_path / "run.json"
        RunConfig(nu=0.75, lam=1, fmt="csv").save(path)
        rows = run_csv(capsys, "decide", "--preset", "hyperbolic-auto", "--config", str(path))
        assert ["recurrent", "false"] in rows
        assert ["nu", "0.75"] in rows

    def test_config_without_format_keeps_command_default(self, capsys: pytest.CaptureFixture,
                                                          tmp_path: Path) -> None:
        path = tmp_path / "run.json"
        path.write_text('{"nu": 0.0}', encoding="utf-8")
        rows = run_csv(capsys, "orbit", "--preset", "elliptic-rational", "--max-iter", "3", "--config", str(path))
        assert rows[0] == ["k", "distance", "running_min"]

    def test_flags_override_config(self, capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
        path = tmp_path / "run.json"
        RunConfig(nu=0.75).save(path)
        report = run_json(capsys, "decide", "--preset", "hyperbolic-auto", "--config", str(path), "--nu", "0")
        assert report["recurrent"] is True

    def test_pretty(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["decide", "--preset", "hyperbolic-auto", "--pretty"]) == ExitCode.SUCCESS
        assert "HyperbolicAutomorphism" in capsys.readouterr().out

    def test_parse_grid(self) -> None:
        assert parse_grid("0:1:3") == [0.0, 0.5, 1.0]
        assert parse_grid("1, 2.5") == [1.0, 2.5]
        with pytest.raises(ValidationError):
            parse_grid("0:1")


class TestExitCodes:
    """Validation failures exit with 2, numerical failures with 3."""

    @pytest.mark.parametrize("argv", [
        ["decide", "--map", "1,1,0,0"],
        ["decide", "--map", "1,0.5,0,1"],
        ["decide", "--map", "1,2,3"],
        ["decide", "--preset", "hyperbolic-auto", "--lambda", "0"],
        ["decide", "--preset", "hyperbolic-auto", "--lambda", "1+"],
        ["decide"],
        ["spectrum", "--preset", "hyperbolic-auto"],
        ["kernel", "--w", "1.5"],
        ["sweep", "--preset", "hyperbolic-auto", "--nu-grid", "0:1", "--lambda-grid", "1"],
        ["sweep", "--preset", "hyperbolic-auto", "--nu-grid", "0", "--lambda-grid", "0,1"],
        ["sweep", "--nu-grid", "0", "--lambda-grid", "1"],
    ])
    def test_validation(self, capsys: pytest.CaptureFixture, argv: list[str]) -> None:
        assert main(argv) == ExitCode.VALIDATION_ERROR
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "[ERROR]" in captured.err

    def test_parse_error_position(self, capsys: pytest.CaptureFixture) -> None:
        main(["decide", "--map", "1,2,x,4"])
        assert "position 4" in capsys.readouterr().err

    def test_numerical(self, capsys: pytest.CaptureFixture) -> None:
        argv = ["classify", "--preset", "hyperbolic-nonauto", "--max-iter", "1", "--tol", "1e-15"]
        assert main(argv) == ExitCode.NUMERICAL_ERROR
        assert "did not converge" in capsys.readouterr().err

    def test_unwritable_output(self, capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
        blocker = tmp_path / "file"
        blocker.write_text("", encoding="utf-8")
        argv = ["decide", "--preset", "hyperbolic-auto", "--out", str(blocker / "decide.json")]
        assert main(argv) == ExitCode.FILE_ERROR

    def test_unknown_preset_is_usage_error(self) -> None:
        with pytest.raises(SystemExit) as excinfo:
            main(["decide", "--preset", "nope"])
        assert excinfo.value.code == 2

    def test_unknown_map_name(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["decide", "--map", "nope"]) == ExitCode.VALIDATION_ERROR
        assert "nope" in capsys.readouterr().err

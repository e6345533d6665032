"""End-to-end tests for the command-line front end."""

import json
import math

import numpy as np
import pytest

from hypergeo.suites import SUITES
from utils.manage_geometry import EXIT_FAILED, EXIT_INPUT, EXIT_OK, GeometryRunner, main

WORKED = ["0 -1", "0 1", "0.8660254037844386 0.5i"]


class TestInvariant:
    def test_worked_example_json(self, capsys):
        assert main(["invariant", *WORKED, "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["tan_angle"] == pytest.approx(4.0 / 3.0, abs=1e-12)
        assert report["dist_to_spine"] == pytest.approx(math.log(3.0), abs=1e-9)
        assert report["classification"] == "generic"

    def test_text_output(self, capsys):
        assert main(["invariant", "0 -1", "0 1", "0 i"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "H-line" in out
        assert "1.5707963267949" in out

    def test_interior_third_point(self, capsys):
        assert main(["invariant", "0 -1", "0 1", "0 0.5", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["angle"] == 0.0

    def test_carnot_and_infinity(self, capsys):
        assert main(["invariant", "inf", "carnot 0 | 0", "carnot 1 | 0", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["classification"] == "real-plane"

    def test_complex_field(self, capsys):
        assert main(["invariant", "0 -1", "0 1", "0 i", "--field", "C"]) == EXIT_OK
        assert "C-line" in capsys.readouterr().out
        assert main(["invariant", "0 -1", "0 1", "0 j", "--field", "C"]) == EXIT_INPUT

    def test_octonion_field(self, capsys):
        points = ["1 0 0 0 0 0 0 0", "0 1 0 0 0 0 0 0", "0 0 0 0 0 1 0 0"]
        assert main(["invariant", *points, "--field", "O", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["angle"] == pytest.approx(math.pi / 2.0, abs=1e-9)

    @pytest.mark.parametrize("points", [
        ["0 -1", "0 1"],
        ["0 -1", "0 -1", "0 1"],
        ["0 -1", "0 1", "0.9 0.9"],
        ["0 -1", "0 1", "zero one"],
    ])
    def test_bad_input(self, points, capsys):
        assert main(["invariant", *points]) == EXIT_INPUT
        assert "Error" in capsys.readouterr().err


class TestVerify:
    def test_passing_suite_with_report(self, tmp_path, capsys):
        report = tmp_path / "reports" / "acceptance.json"
        assert main(["verify", "algebra", "cartan", "--count", "20", "--report", str(report)]) == EXIT_OK
        assert "2/2 suites passed" in capsys.readouterr().out
        doc = json.loads(report.read_text())
        assert [s["suite"] for s in doc["suites"]] == ["algebra", "cartan"]

    def test_failing_suite(self, monkeypatch, capsys):
        def broken(res, rng, tol):
            res.check_max("always off", [1.0], 0.0)

        monkeypatch.setitem(SUITES, "broken", broken)
        assert main(["verify", "broken", "--count", "1"]) == EXIT_FAILED
        assert "0/1 suites passed" in capsys.readouterr().out

    def test_unknown_suite(self):
        assert main(["verify", "nope"]) == EXIT_INPUT


class TestBend:
    def _run(self, data_dir, out):
        return main(["bend", str(data_dir / "schottky_amalgam.group"), "--grid", "0,0.2",
                     "--word-length", "3", "--limit-count", "4", "--out", str(out)])

    def test_outputs(self, data_dir, tmp_path):
        assert self._run(data_dir, tmp_path / "run") == EXIT_OK
        names = sorted(p.name for p in (tmp_path / "run").iterdir())
        assert names == ["bend_sweep.csv", "bend_sweep.json", "limitset_eta_000.csv", "limitset_eta_001.csv"]
        meta = json.loads((tmp_path / "run" / "bend_sweep.json").read_text())["metadata"]
        assert meta["group_file"] == "schottky_amalgam.group"
        assert meta["eta_grid"] == "0,0.2"

    def test_deterministic(self, data_dir, tmp_path):
        assert self._run(data_dir, tmp_path / "a") == EXIT_OK
        assert self._run(data_dir, tmp_path / "b") == EXIT_OK
        for name in ("bend_sweep.csv", "limitset_eta_001.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_grid_outside_range(self, data_dir, tmp_path):
        assert main(["bend", str(data_dir / "schottky_amalgam.group"), "--grid", "0,4",
                     "--out", str(tmp_path)]) == EXIT_INPUT

    def test_missing_group_file(self, tmp_path):
        assert main(["bend", str(tmp_path / "none.group"), "--out", str(tmp_path)]) == EXIT_INPUT


class TestCharacter:
    def test_closed_real_cycle(self, data_dir, capsys):
        assert main(["character", str(data_dir / "tetrahedron.cycle"),
                     str(data_dir / "real_circle.vertices")]) == EXIT_OK
        assert "c = " in capsys.readouterr().out

    def test_open_chain(self, data_dir, capsys):
        cycle, vertices = str(data_dir / "hline_triangle.cycle"), str(data_dir / "hline.vertices")
        assert main(["character", cycle, vertices]) == EXIT_INPUT
        assert main(["character", cycle, vertices, "--allow-open"]) == EXIT_OK
        assert "39.478" in capsys.readouterr().out

    def test_mixed_vertex_notation(self, data_dir):
        assert main(["character", str(data_dir / "tetrahedron.cycle"),
                     str(data_dir / "mixed.vertices")]) == EXIT_OK


class TestOtherCommands:
    def test_example_then_limitset(self, tmp_path, capsys):
        group = tmp_path / "hnn.group"
        assert main(["example", str(group), "--kind", "hnn"]) == EXIT_OK
        assert group.read_text().startswith("kind hnn")
        assert main(["limitset", str(group), "--eta", "0.1", "--word-length", "3",
                     "--limit-count", "5", "--out", str(tmp_path)]) == EXIT_OK
        lines = (tmp_path / "limitset.csv").read_text().strip().splitlines()
        assert len(lines) == 6

    def test_limitset_eta_range(self, data_dir, tmp_path):
        assert main(["limitset", str(data_dir / "schottky_amalgam.group"), "--eta", "4",
                     "--out", str(tmp_path)]) == EXIT_INPUT

    def test_config(self, data_dir, capsys):
        assert main(["config", "--config", str(data_dir / "experiment.conf"), "--field", "C"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "Field: C" in out
        assert "results/bend" in out

    def test_missing_config_file(self, tmp_path):
        assert main(["config", "--config", str(tmp_path / "none.conf")]) == EXIT_INPUT

    @pytest.mark.parametrize("error", [np.linalg.LinAlgError("Singular matrix"), ValueError("could not convert")])
    def test_numeric_errors_exit_as_input_errors(self, monkeypatch, capsys, error):
        def fail(self, points, as_json=False):
            raise error

        monkeypatch.setattr(GeometryRunner, "invariant", fail)
        assert main(["invariant", *WORKED]) == EXIT_INPUT
        assert "Error" in capsys.readouterr().err

    def test_no_command_prints_help(self, capsys):
        assert main([]) == EXIT_OK
        assert "invariant" in capsys.readouterr().out

    def test_argparse_errors(self):
        assert main(["invariant"]) == 2
        assert main(["frobnicate"]) == 2

import numpy as np
import pytest

from roughlub import cli

SMOOTH_DOC = "grid.nx = 16\ngrid.ny = 16\n"
ROUGH_DOC = SMOOTH_DOC + "rough.region.1 = 0.5,0,1,1,n=2\n"


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCoeffs:
    def test_smooth_values_exact(self, capsys):
        code, out, _ = run(capsys, "coeffs", "--n", "0")
        assert code == 0
        assert out.strip() == "N=0 A=1.00000 B=0.500000"

    def test_rough_reference_values(self, capsys):
        code, out, _ = run(capsys, "coeffs", "--n", "2")
        assert code == 0
        fields = dict(part.split("=") for part in out.split())
        assert float(fields["N"]) == 2.0
        assert float(fields["A"]) == pytest.approx(1.08696, abs=5e-5)
        assert float(fields["B"]) == pytest.approx(0.58739, abs=5e-5)

    def test_negative_intensity_exits_2(self, capsys):
        code, _, err = run(capsys, "coeffs", "--n", "-1")
        assert code == 2
        assert "error" in err


class TestSolve:
    def test_config_run_writes_outputs(self, capsys, tmp_path):
        config = tmp_path / "scenario.cfg"
        config.write_text(SMOOTH_DOC)
        out_dir = tmp_path / "out"
        code, _, _ = run(capsys, "solve", "--config", str(config),
                         "--out", str(out_dir))
        assert code == 0
        pressure = (out_dir / "pressure.csv").read_text().splitlines()
        assert pressure[0] == "# nx=16 ny=16"
        assert pressure[1] == "x,y,p"
        assert len(pressure) == 2 + 17 * 17
        # row-major: y outer, x inner
        assert pressure[2].startswith("0,0,")
        assert pressure[3].startswith("0.0625,0,")
        fields = (out_dir / "fields.csv").read_text().splitlines()
        assert fields[0] == "x,y,n_psi,a,b,h1"
        assert len(fields) == 1 + 16 * 16

    def test_manifest_lists_existing_files(self, capsys, tmp_path):
        out_dir = tmp_path / "out"
        code, _, _ = run(capsys, "solve", "--scenario", "fig3",
                         "--nx", "16", "--ny", "16", "--out", str(out_dir))
        assert code == 0
        manifest = (out_dir / "manifest.txt").read_text().splitlines()
        listed = [line.split("=", 1)[1] for line in manifest
                  if line.startswith("file=")]
        assert listed == ["pressure.csv", "fields.csv"]
        for name in listed:
            assert (out_dir / name).stat().st_size > 0

    def test_fig2_preset_uses_reference_data(self, capsys, tmp_path):
        out_dir = tmp_path / "out"
        code, _, _ = run(capsys, "solve", "--scenario", "fig2",
                         "--out", str(out_dir))
        assert code == 0
        manifest = (out_dir / "manifest.txt").read_text()
        assert "nx=64\nny=64\n" in manifest
        assert "gap.kind=quadratic_channel" in manifest
        assert "velocity.ubx=1\nvelocity.uby=0\n" in manifest
        assert "inlet.flux=0.5" in manifest
        assert "rough.regions=0" in manifest

    def test_determinism_byte_identical(self, capsys, tmp_path):
        outputs = []
        for name in ("a", "b"):
            out_dir = tmp_path / name
            code, _, _ = run(capsys, "solve", "--scenario", "fig2",
                             "--out", str(out_dir))
            assert code == 0
            outputs.append((out_dir / "pressure.csv").read_bytes())
        assert outputs[0] == outputs[1]

    def test_missing_config_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "solve", "--config",
                           str(tmp_path / "nope.cfg"), "--out", str(tmp_path))
        assert code == 2
        assert "not found" in err

    def test_bad_config_exits_2(self, capsys, tmp_path):
        config = tmp_path / "bad.cfg"
        config.write_text("grid.nx = 16\nnonsense.key = 1\n")
        code, _, err = run(capsys, "solve", "--config", str(config),
                           "--out", str(tmp_path / "out"))
        assert code == 2
        assert "unknown key" in err


class TestVelocity:
    def test_profile_rows_and_boundaries(self, capsys, tmp_path):
        config = tmp_path / "scenario.cfg"
        config.write_text(SMOOTH_DOC)
        code, out, _ = run(capsys, "velocity", "--config", str(config),
                           "--x", "0.25", "--y", "0.5", "--nz", "16")
        assert code == 0
        rows = [list(map(float, line.split(","))) for line in out.splitlines()]
        assert len(rows) == 17
        assert rows[0] == [0.0, 1.0, 0.0]   # Z=0 carries the bottom velocity
        assert rows[-1] == [1.0, 0.0, 0.0]  # Z=1 is the resting top surface

    def test_smooth_profile_matches_analytic_form(self, capsys, tmp_path):
        from roughlub.geometry import ScenarioConfig, build_fields, load_config
        from roughlub.postprocess import gradient_at
        from roughlub.solver import solve_reynolds

        config_path = tmp_path / "scenario.cfg"
        config_path.write_text(SMOOTH_DOC)
        code, out, _ = run(capsys, "velocity", "--config", str(config_path),
                           "--x", "0.25", "--y", "0.5", "--nz", "16")
        assert code == 0
        rows = np.array([list(map(float, line.split(",")))
                         for line in out.splitlines()])

        config = load_config(SMOOTH_DOC)
        grid, fields = build_fields(config)
        solution = solve_reynolds(config)
        grad_p = gradient_at(solution, grid, 0.25, 0.5)
        cell = 8 * 16 + 4  # barycenter cell containing (0.25, 0.5)
        h1 = fields.h1_bar[cell]
        z = rows[:, 0]
        expected = 0.5 * h1 * h1 * (z * z - z) * grad_p[0] + (1.0 - z) * 1.0
        assert np.abs(rows[:, 1] - expected).max() <= 1e-10
        assert np.abs(rows[:, 2] - 0.5 * h1 * h1 * (z * z - z) * grad_p[1]).max() <= 1e-10

    def test_boundary_point_exits_2(self, capsys, tmp_path):
        config = tmp_path / "scenario.cfg"
        config.write_text(SMOOTH_DOC)
        code, _, err = run(capsys, "velocity", "--config", str(config),
                           "--x", "0.0", "--y", "0.5")
        assert code == 2


class TestCompare:
    def test_rough_config_produces_metrics(self, capsys, tmp_path):
        config = tmp_path / "scenario.cfg"
        config.write_text("grid.nx = 64\ngrid.ny = 64\n"
                          "rough.region.1 = 0.5,0,1,1,n=2\n")
        out_dir = tmp_path / "out"
        code, _, _ = run(capsys, "compare", "--config", str(config),
                         "--out", str(out_dir))
        assert code == 0
        for name in ("pressure_smooth.csv", "pressure_rough.csv",
                      "difference.csv", "metrics.txt"):
            assert (out_dir / name).stat().st_size > 0
        metrics = dict(line.split("=") for line in
                       (out_dir / "metrics.txt").read_text().splitlines())
        assert float(metrics["l2_outside_rough"]) > 1e-4
        assert float(metrics["l2"]) > 0.0
        assert float(metrics["linf"]) > 0.0

    def test_fig5_small_strip_still_significant(self, capsys, tmp_path):
        out_dir = tmp_path / "out"
        code, _, _ = run(capsys, "compare", "--scenario", "fig5",
                         "--out", str(out_dir))
        assert code == 0
        metrics = dict(line.split("=") for line in
                       (out_dir / "metrics.txt").read_text().splitlines())
        assert float(metrics["l2"]) > 1e-4
        assert float(metrics["l2_outside_rough"]) > 1e-4

    def test_zero_amplitude_roughness_metrics_vanish(self, capsys, tmp_path):
        config = tmp_path / "scenario.cfg"
        config.write_text("grid.nx = 32\ngrid.ny = 32\n"
                          "rough.region.1 = 0,0,1,1,amp=0,wav=1\n")
        out_dir = tmp_path / "out"
        code, _, _ = run(capsys, "compare", "--config", str(config),
                         "--out", str(out_dir))
        assert code == 0
        metrics = dict(line.split("=") for line in
                       (out_dir / "metrics.txt").read_text().splitlines())
        assert float(metrics["l2"]) <= 1e-9
        assert float(metrics["linf"]) <= 1e-9

    def test_no_rough_region_exits_2(self, capsys, tmp_path):
        config = tmp_path / "scenario.cfg"
        config.write_text(SMOOTH_DOC)
        code, _, err = run(capsys, "compare", "--config", str(config),
                           "--out", str(tmp_path / "out"))
        assert code == 2
        assert "rough region" in err

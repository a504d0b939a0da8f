"""
Command-line tests through click's CliRunner.
"""

import csv
import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from src.main import EXIT_INPUT, cli

pytestmark = pytest.mark.integration


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


def csv_values(path):
    """Value column of a Hankel-value CSV."""
    rows = list(csv.reader(Path(path).read_text().splitlines()))
    header = rows.index(["index", "value"])
    return [float(r[1]) for r in rows[header + 1 :]]


class TestWorkflow:
    """synth, sample, reduce, hsv and compare on one model."""

    def test_synth_sample_reduce(self, runner):
        """Test a right-half-plane run from a random passive model."""
        with runner.isolated_filesystem():
            result = invoke(runner, "synth", "--n", "4", "--seed", "1", "--passive", "-o", "m.json")
            assert result.exit_code == 0, result.output
            assert json.loads(Path("m.json").read_text())["run_config"]["passive"] is True

            result = invoke(
                runner,
                "sample",
                "--model", "m.json",
                "--right", "log:0.1:10:4",
                "--left", "log:0.15:15:4",
                "--offset", "0.5",
                "-o", "s.json",
            )
            assert result.exit_code == 0, result.output
            assert "Sampled 8 right and 8 left points" in result.output

            result = invoke(
                runner,
                "reduce",
                "--samples", "s.json",
                "--variant", "lqg",
                "--order", "2",
                "-o", "rom.json",
                "--hsv-output", "hsv.csv",
            )
            assert result.exit_code == 0, result.output
            rom = json.loads(Path("rom.json").read_text())
            assert rom["n"] == 2
            assert rom["field"] == "real"
            assert rom["run_config"]["mode"] == "adi"
            assert rom["run_config"]["samples"] == "s.json"
            values = csv_values("hsv.csv")
            assert values == sorted(values, reverse=True)

            result = invoke(runner, "compare", "--model", "m.json", "--samples", "s.json",
                            "--variants", "bt", "--orders", "1-2", "-o", "cmp.csv")
            assert result.exit_code == 0, result.output
            text = Path("cmp.csv").read_text()
            assert "variant,order,intrusive_error" in text
            assert text.count("\nbt,") == 2

    def test_mirrored_points(self, runner):
        """Test sampling at the mirrored poles and a passivity-preserving reduction."""
        with runner.isolated_filesystem():
            invoke(runner, "synth", "--n", "4", "--seed", "1", "--passive", "-o", "m.json")
            result = invoke(runner, "sample", "--model", "m.json", "--right", "mirror", "--left", "mirror",
                            "-o", "s.json")
            assert result.exit_code == 0, result.output
            assert "Sampled 4 right and 4 left points" in result.output
            result = invoke(runner, "reduce", "--samples", "s.json", "--variant", "pr", "--order", "2",
                            "-o", "rom.json")
            assert result.exit_code == 0, result.output
            assert json.loads(Path("rom.json").read_text())["n"] == 2

    def test_energy_threshold_order(self, runner):
        """Test a fractional --order."""
        with runner.isolated_filesystem():
            invoke(runner, "synth", "--n", "4", "--seed", "2", "-o", "m.json")
            invoke(runner, "sample", "--model", "m.json", "--right", "1,3", "--left", "2,5",
                   "--offset", "0.5", "-o", "s.json")
            result = invoke(runner, "reduce", "--samples", "s.json", "--order", "0.5", "-o", "rom.json")
            assert result.exit_code == 0, result.output
            assert json.loads(Path("rom.json").read_text())["n"] >= 1

    def test_example_hsv(self, runner):
        """Test the printed example on the imaginary axis with automatic epsilon."""
        with runner.isolated_filesystem():
            result = invoke(runner, "sample", "--example", "-o", "example.json")
            assert result.exit_code == 0, result.output
            result = invoke(runner, "hsv", "--samples", "example.json", "--eps-auto", "gramian",
                            "--fast-path", "-o", "hsv.csv")
            assert result.exit_code == 0, result.output
            text = Path("hsv.csv").read_text()
            assert "# epsilon_plan," in text
            assert "# mode,ddp" in text
            assert len(csv_values("hsv.csv")) >= 3

    def test_example_reduce(self, runner):
        """Test the example with its printed free parameter."""
        with runner.isolated_filesystem():
            invoke(runner, "sample", "--example", "-o", "example.json")
            result = invoke(runner, "reduce", "--samples", "example.json", "--example-zeta",
                            "--order", "3", "-o", "rom.json")
            assert result.exit_code == 0, result.output
            rom = json.loads(Path("rom.json").read_text())
            assert rom["n"] == 3
            assert rom["route"] == "direct"

    def test_synth_example(self, runner):
        """Test writing the printed model."""
        with runner.isolated_filesystem():
            result = invoke(runner, "synth", "--example", "-o", "ex.json")
            assert result.exit_code == 0, result.output
            assert json.loads(Path("ex.json").read_text())["n"] == 8

    @pytest.mark.slow
    def test_compare_example(self, runner):
        """Test the example comparison of two variants at order 3."""
        with runner.isolated_filesystem():
            result = invoke(runner, "compare", "--example", "--variants", "bt,lqg", "--orders", "3",
                            "-o", "cmp.csv")
            assert result.exit_code == 0, result.output
            text = Path("cmp.csv").read_text()
            assert "\nbt,3," in text and "\nlqg,3," in text


class TestExitCodes:
    """Input errors exit with code 2."""

    def test_order_zero(self, runner):
        """Test that --order 0 is refused."""
        with runner.isolated_filesystem():
            invoke(runner, "synth", "--n", "3", "-o", "m.json")
            invoke(runner, "sample", "--model", "m.json", "--right", "1,3", "--left", "2,5",
                   "--offset", "0.5", "-o", "s.json")
            result = runner.invoke(cli, ["reduce", "--samples", "s.json", "--order", "0"])
            assert result.exit_code == EXIT_INPUT
            assert "Error" in result.output

    def test_eps_and_eps_auto(self, runner):
        """Test mutually exclusive epsilon options."""
        with runner.isolated_filesystem():
            invoke(runner, "sample", "--example", "-o", "example.json")
            result = runner.invoke(cli, ["hsv", "--samples", "example.json", "--eps", "0.1",
                                         "--eps-auto", "gramian"])
            assert result.exit_code == EXIT_INPUT

    def test_missing_file(self, runner):
        """Test a sample file that does not exist."""
        with runner.isolated_filesystem():
            result = runner.invoke(cli, ["reduce", "--samples", "absent.json"])
            assert result.exit_code == EXIT_INPUT
            assert "File not found" in result.output

    def test_hinf_without_gamma(self, runner):
        """Test that hinf needs --gamma."""
        with runner.isolated_filesystem():
            invoke(runner, "sample", "--example", "-o", "example.json")
            result = runner.invoke(cli, ["reduce", "--samples", "example.json", "--variant", "hinf",
                                         "--eps", "0.01"])
            assert result.exit_code == EXIT_INPUT

    def test_synth_needs_size(self, runner):
        """Test that synth needs --n or --example."""
        result = runner.invoke(cli, ["synth"])
        assert result.exit_code == EXIT_INPUT

    def test_bad_config(self, runner):
        """Test an invalid configuration file."""
        with runner.isolated_filesystem():
            Path("bad.yml").write_text("unknown_section: {}\n")
            result = runner.invoke(cli, ["--config", "bad.yml", "synth", "--n", "2"])
            assert result.exit_code == EXIT_INPUT

    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "loewner-bt" in result.output

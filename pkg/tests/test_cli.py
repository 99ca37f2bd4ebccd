"""Tests for the artintool command line."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner
from loguru import logger

from artintool import cli
from artintool.workspace import DATA_ENV


@pytest.fixture(autouse=True)
def quiet(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep log lines out of captured output."""
    monkeypatch.setattr(cli, "setup_logging", lambda *args, **kwargs: logger.remove())
    monkeypatch.delenv(DATA_ENV, raising=False)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


class TestMonoidCommands:
    """Tests for monoid computations."""

    def test_normal_form(self, runner: CliRunner) -> None:
        """Test the greedy normal form of stst."""
        result = runner.invoke(cli.main, ["monoid", "nf", "-p", "A2", "s t s t"])

        assert result.exit_code == 0
        assert result.output == "sts . t\n"

    def test_missing_word(self, runner: CliRunner) -> None:
        """Test that usage errors exit with 2."""
        result = runner.invoke(cli.main, ["monoid", "nf", "-p", "A2"])

        assert result.exit_code == 2

    def test_unknown_presentation(self, runner: CliRunner) -> None:
        """Test that library errors become usage errors."""
        result = runner.invoke(cli.main, ["monoid", "nf", "-p", "NOPE", "s"])

        assert result.exit_code == 2
        assert "Presentation not found: NOPE" in result.output

    def test_lcm(self, runner: CliRunner) -> None:
        """Test finite and infinite lcm's."""
        finite = runner.invoke(cli.main, ["monoid", "lcm", "-p", "A2", "s", "t"])
        infinite = runner.invoke(cli.main, ["monoid", "lcm", "-p", "TRI", "a", "b"])

        assert finite.output == "sts\n"
        assert infinite.output == "Infinite\n"

    def test_divides(self, runner: CliRunner) -> None:
        """Test left and right divisibility."""
        left = runner.invoke(cli.main, ["monoid", "divides", "-p", "A2", "t", "st"])
        right = runner.invoke(cli.main, ["monoid", "divides", "--right", "-p", "A2", "t", "st"])

        assert left.output == "false\n"
        assert right.output == "true\n"

    def test_records(self, runner: CliRunner) -> None:
        """Test the records format for a single value."""
        result = runner.invoke(cli.main, ["--format", "records", "monoid", "nf", "-p", "A2", "stst"])
        record = json.loads(result.output)

        assert record["key"] == "nf"
        assert record["detail"] == "sts . t"


class TestPresentationCommands:
    """Tests for presentation inspection."""

    def test_fc(self, runner: CliRunner) -> None:
        """Test the FC answer and the refusal message."""
        assert runner.invoke(cli.main, ["presentation", "fc", "TRI"]).output == "true\n"
        result = runner.invoke(cli.main, ["presentation", "fc", "AFF"])
        assert result.output.startswith("false: Presentation AFF is not of FC type")

    def test_spherical(self, runner: CliRunner) -> None:
        """Test the spherical subsets of TRI."""
        result = runner.invoke(cli.main, ["presentation", "spherical", "TRI"])

        assert sorted(result.output.split()) == sorted(["{}", "{a}", "{b}", "{c}", "{a,c}", "{b,c}"])

    def test_workspace_list(self, runner: CliRunner) -> None:
        """Test listing with warnings."""
        result = runner.invoke(cli.main, ["workspace", "list"])

        assert "presentation A2: 2 generators" in result.output
        assert "map FOLD: B2 -> A3" in result.output
        assert "morphism XY: F1 -> F2X" in result.output
        assert "warning: Presentation 'AFF' is not of FC type" in result.output

    def test_data_directory(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that --data adds presentations."""
        (tmp_path / "I5.pres").write_text("presentation I5\ngenerators u v\nbond u v 5\n")
        result = runner.invoke(cli.main, ["--data", str(tmp_path), "monoid", "delta", "-p", "I5"])

        assert result.exit_code == 0
        assert result.output == "uvuvu\n"


class TestHomCommands:
    """Tests for generator maps."""

    def test_check_fold(self, runner: CliRunner) -> None:
        """Test a map satisfying the axioms."""
        result = runner.invoke(cli.main, ["hom", "check", "FOLD"])

        assert result.exit_code == 0
        assert "L0" in result.output
        assert "ok" in result.output

    def test_check_broken(self, runner: CliRunner) -> None:
        """Test that a failing report exits with 1."""
        result = runner.invoke(cli.main, ["hom", "check", "BROKEN"])

        assert result.exit_code == 1
        assert "FAIL" in result.output

    def test_map_word(self, runner: CliRunner) -> None:
        """Test positive and signed images."""
        positive = runner.invoke(cli.main, ["hom", "map-word", "FOLD", "st"])
        signed = runner.invoke(cli.main, ["hom", "map-word", "FOLD", "s t^-1"])

        assert positive.output == "s1.s3.s2\n"
        assert signed.output == "s1.s3.s2^-1\n"

    def test_refused_map(self, runner: CliRunner) -> None:
        """Test that applying a map failing L0 is a usage error."""
        result = runner.invoke(cli.main, ["hom", "map-word", "BROKEN", "s"])

        assert result.exit_code == 2
        assert "not an lcm-homomorphism" in result.output


class TestDeligneCommands:
    """Tests for the Deligne complex."""

    def test_ncp(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a normal cube path and its DOT file."""
        dot = tmp_path / "path.dot"
        result = runner.invoke(cli.main, ["--dot", str(dot), "deligne", "ncp", "-p", "TRI", "1@{}", "a@{}"])

        assert result.exit_code == 0
        assert result.output == "1@{} -> 1@{a} -> a@{}\n"
        assert dot.read_text().startswith('graph "TRI" {')

    def test_non_fc(self, runner: CliRunner) -> None:
        """Test that balls are refused for non-FC presentations."""
        result = runner.invoke(cli.main, ["deligne", "ball", "-p", "AFF", "-r", "1"])

        assert result.exit_code == 2
        assert "not of FC type" in result.output

    def test_inverse_endpoint(self, runner: CliRunner) -> None:
        """Test a path to a vertex with a non-positive representative."""
        result = runner.invoke(cli.main, ["deligne", "ncp", "-p", "F2", "1@{}", "s^-1@{}"])

        assert result.exit_code == 0
        assert result.output == "1@{} -> 1@{s} -> s^-1@{}\n"

    def test_verify_inj_unverified(self, runner: CliRunner) -> None:
        """Test that the broken map's images fail the stabilizer check."""
        result = runner.invoke(cli.main, ["--radius", "3", "deligne", "verify-inj", "--unverified", "-L", "2", "BROKEN"])

        assert result.exit_code == 1
        assert "stabilizer" in result.output

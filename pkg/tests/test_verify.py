"""Tests for the verification scoreboard and its negative controls."""

import pytest

from artintool.models import Report, Status, ToolOptions
from artintool.presentation import ArtinPresentation
from artintool.verify import (
    check_alpha,
    check_braid_oracle,
    check_cancellation,
    check_cutoff,
    check_delta,
    check_exchange_and_chain,
    check_fc_refusal,
    verify_all,
)
from artintool.workspace import Workspace


class TestPresentationChecks:
    """Tests for the per-presentation monoid checks."""

    @pytest.mark.parametrize("name", ["A2", "B2", "TRI"])
    def test_monoid_checks(self, workspace: Workspace, name: str) -> None:
        """Test the oracle, cancellativity, exchange, alpha and Delta checks."""
        presentation = workspace.presentation(name)

        assert check_braid_oracle(presentation).status is Status.PASS
        assert check_cancellation(presentation).status is Status.PASS
        assert check_exchange_and_chain(presentation, 3).status is Status.PASS
        assert check_alpha(presentation, 3).status is Status.PASS
        assert check_delta(presentation, debug_checks=True).status is Status.PASS

    def test_oracle_detail(self, a2: ArtinPresentation) -> None:
        """Test the oracle reaches length 7 on two generators."""
        assert check_braid_oracle(a2).detail.endswith("up to length 7")

    def test_cancellation_total(self, tri: ArtinPresentation, quad: ArtinPresentation) -> None:
        """Test that tuples up to total length 8 are covered on three generators."""
        assert check_cancellation(tri).detail.endswith("up to total length 8")
        assert check_cancellation(quad).detail.endswith("up to total length 6")


class TestControls:
    """Tests for the non-FC negative controls."""

    def test_fc_refusal(self, aff: ArtinPresentation) -> None:
        """Test that the Deligne ball is refused with the clique named."""
        item = check_fc_refusal(aff, 1)

        assert item.status is Status.PASS
        assert "{a,b,c}" in item.witness

    def test_fc_refusal_fails_on_fc(self, tri: ArtinPresentation) -> None:
        """Test that an FC presentation makes the control fail."""
        assert check_fc_refusal(tri, 1).status is Status.FAIL

    def test_cutoff(self, aff: ArtinPresentation) -> None:
        """Test that the lcm search stops at the cutoff."""
        item = check_cutoff(aff, 12)

        assert item.status is Status.PASS
        assert item.witness.endswith("Unknown(12)")


class TestScoreboard:
    """Tests for verify_all."""

    @pytest.fixture(scope="class")
    def scoreboard(self, workspace: Workspace) -> Report:
        return verify_all(workspace, ToolOptions())

    def test_all_pass(self, scoreboard: Report) -> None:
        """Test that the stock workspace verifies."""
        failing = [f"{i.key}: {i.witness}" for i in scoreboard.items if not i.status.is_success]

        assert failing == []

    def test_sorted(self, scoreboard: Report) -> None:
        """Test that items are ordered by key."""
        keys = [item.key for item in scoreboard.items]

        assert keys == sorted(keys)
        assert len(keys) == len(set(keys))

    def test_controls_present(self, scoreboard: Report) -> None:
        """Test the negative controls and the expected failure."""
        assert scoreboard.get("control:AFF:fc").status is Status.PASS
        assert scoreboard.get("control:AFF:cutoff").status is Status.PASS
        assert scoreboard.get("map:BROKEN:rejected").status is Status.PASS
        assert scoreboard.get("map:XY:nf").status is Status.EXPECTED_FAIL
        assert scoreboard.get("presentation:AFF:oracle") is None

    def test_default_radius(self, scoreboard: Report) -> None:
        """Test that the Deligne checks are decided at the default radius."""
        for key in ("presentation:TRI:ncp", "presentation:QUAD:ncp", "presentation:TRI:span",
                    "map:FREEMAP:stabilizer", "map:FOLD:proccn"):
            assert scoreboard.get(key).status is Status.PASS

    def test_map_items(self, scoreboard: Report) -> None:
        """Test the per-map suite for the folding map."""
        keys = {item.key for item in scoreboard.items if item.key.startswith("map:FOLD:")}

        assert {"map:FOLD:L0", "map:FOLD:nf", "map:FOLD:salvetti", "map:FOLD:proccn",
                "map:FOLD:inj-group"} <= keys

    def test_empty_workspace(self) -> None:
        """Test the scoreboard of a workspace with nothing loaded."""
        report = verify_all(Workspace())

        assert report.items == []
        assert report.passed

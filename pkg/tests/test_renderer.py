"""Tests for report, value and DOT rendering."""

import json

import pytest

from artintool.deligne import DeligneBall, parse_vertex
from artintool.models import CheckItem, OutputFormat, Report, Status
from artintool.presentation import ArtinPresentation
from artintool.renderer import render_dot, render_human, render_records, render_report, render_value


@pytest.fixture
def report() -> Report:
    report = Report(title="Axioms of M")
    report.add("L0", Status.PASS, "images pairwise disjoint")
    report.add("L2", Status.FAIL, "brackets", detail="2 pairs", witness="s,t: (st)s = sts")
    return report


class TestReports:
    """Tests for human and records output."""

    def test_human(self, report: Report) -> None:
        """Test the fixed-width table and summary line."""
        lines = render_human(report).splitlines()

        assert lines[0] == "Axioms of M"
        assert lines[1] == "L0 ok            images pairwise disjoint"
        assert lines[2] == "L2 FAIL          brackets"
        assert lines[3] == "    2 pairs"
        assert lines[4] == "    witness: s,t: (st)s = sts"
        assert lines[-1] == "1/2 passed"

    def test_human_empty(self) -> None:
        """Test a report with no items."""
        assert render_human(Report(title="Nothing")) == "Nothing\n  (no checks)\n"

    def test_records(self, report: Report) -> None:
        """Test one JSON object per item."""
        records = [json.loads(line) for line in render_records(report).splitlines()]

        assert [r["key"] for r in records] == ["L0", "L2"]
        assert records[1]["status"] == "FAIL"
        assert records[1]["witness"] == "s,t: (st)s = sts"

    def test_dispatch(self, report: Report) -> None:
        """Test that render_report follows the format."""
        assert render_report(report, OutputFormat.RECORDS) == render_records(report)
        with pytest.raises(ValueError, match="Unknown output format"):
            render_report(report, "xml")  # type: ignore[arg-type]

    def test_value(self) -> None:
        """Test single values in both formats."""
        assert render_value("nf", "sts . t", OutputFormat.HUMAN) == "sts . t\n"
        record = CheckItem.model_validate_json(render_value("nf", "sts . t", OutputFormat.RECORDS))
        assert record.key == "nf"
        assert record.detail == "sts . t"


class TestDot:
    """Tests for Graphviz output."""

    def test_ball(self, tri: ArtinPresentation) -> None:
        """Test header, node count and stability."""
        ball = DeligneBall.around_identity(tri, 1)
        text = render_dot(ball)

        assert text.startswith('graph "TRI" {')
        assert text.endswith("}\n")
        assert text.count("[label=") == len(ball)
        assert text == render_dot(DeligneBall.around_identity(tri, 1))

    def test_path_highlighted(self, tri: ArtinPresentation) -> None:
        """Test that a path adds clusters and bold edges."""
        ball = DeligneBall.around_identity(tri, 1)
        path = ball.normal_cube_path(parse_vertex(tri, "1@{}"), parse_vertex(tri, "a@{}"))
        text = render_dot(ball, path)

        assert "subgraph cluster_0" in text
        assert "subgraph cluster_1" in text
        assert text.count("style=bold") == 2

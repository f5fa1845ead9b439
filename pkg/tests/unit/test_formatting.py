"""Unit tests for formatting module."""
from rich.console import Console

from arctest.algebra.perm import Perm
from arctest.core.formatting import STATUS_STYLES, format_cycles, render_summary, summary_table
from arctest.core.report import Report


class TestFormatCycles:
    """Test format_cycles() function."""

    def test_identity(self):
        """Test the identity is written ()."""
        assert format_cycles(Perm.identity(4)) == "()"

    def test_one_based_by_default(self):
        """Test points are shifted by one."""
        assert format_cycles(Perm([1, 4, 3, 0, 2])) == "(1 2 5 3 4)"

    def test_zero_based(self):
        """Test one_based=False keeps 0-based points."""
        assert format_cycles(Perm([1, 0, 2]), one_based=False) == "(0 1)"

    def test_fixed_points_omitted(self):
        """Test a product of two cycles with a fixed point."""
        assert format_cycles(Perm.from_cycles(6, [(0, 1), (3, 4, 5)])) == "(1 2)(4 5 6)"


class TestSummaryTable:
    """Test summary_table() and render_summary()."""

    def setup_method(self):
        """One claim of each status."""
        self.report = Report()
        self.report.check("x.pass", "holds", lambda: (True, {}))
        self.report.check("x.fail", "fails", lambda: (False, {}))
        self.report.skip("x.skip", "skipped", "too large")

    def test_one_row_per_claim(self):
        """Test row count and caption totals."""
        table = summary_table(self.report)
        assert table.row_count == 3
        assert table.caption == "1 pass, 1 fail, 1 skipped"

    def test_every_status_has_a_style(self):
        """Test the style map covers every status."""
        assert set(STATUS_STYLES) == {"pass", "fail", "skipped"}

    def test_render_to_console(self):
        """Test the rendered table shows ids and skip reasons."""
        console = Console(record=True, width=120)
        render_summary(self.report, console)
        text = console.export_text()
        assert "x.fail" in text
        assert "too large" in text

    def test_empty_report(self):
        """Test an empty report renders a zero caption."""
        assert summary_table(Report()).caption == "0 pass, 0 fail, 0 skipped"

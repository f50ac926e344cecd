"""
Tests for report sections and their text and JSON renderings.
"""

import json

import pytest

from ihull_report import Report, Section


class TestSection:
    """Tests for Section."""

    def test_cell_count(self):
        sec = Section("lcm", ["s", "t", "lcm"])
        with pytest.raises(ValueError, match="expects 3 cells"):
            sec.add_row("a", "b")

    def test_render_aligns_and_formats_cells(self):
        sec = Section("elements", ["element", "prime", "right unit", "divisors"])
        sec.add_row("a", True, None, ["1", "a"])
        sec.add_row("aa", False, "1", [])
        sec.note("2 elements")
        assert sec.render() == [
            "== elements ==",
            "element  prime  right unit  divisors",
            "a        yes    -           {1,a}",
            "aa       no     1           {}",
            "2 elements",
        ]


class TestReport:
    """Tests for Report."""

    def make(self):
        report = Report("hull", "fixture:A")
        report.section("elements", ["#", "map"]).add_row(0, "{}")
        return report

    def test_text_header(self):
        text = self.make().to_text()
        assert text.startswith("ihull hull: fixture:A\n\n== elements ==\n")
        assert "status" not in text

    def test_failed_status_is_shown(self):
        report = self.make()
        report.status = "failed"
        assert report.to_text().endswith("\nstatus: failed\n")

    def test_json_is_sorted(self):
        data = json.loads(self.make().to_json())
        assert list(data) == ["command", "sections", "status", "subject"]
        assert data["sections"][0]["rows"] == [[0, "{}"]]

    def test_from_json(self):
        report = self.make()
        again = Report.from_json(report.to_json())
        assert again == report

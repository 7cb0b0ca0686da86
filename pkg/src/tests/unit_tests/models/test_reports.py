"""Unit tests for the reports module in the models package."""

from models.reports import ReportBuilder, ValidationReport


def test_empty_report_is_ok():
    report = ValidationReport()
    assert report.ok
    assert bool(report)
    assert report.to_document() == {"valid": True, "violations": [], "structural_errors": []}


def test_builder_separates_violations_and_structural_errors():
    builder = ReportBuilder()
    builder.violation("B3", "independent", 0, 1)
    builder.structural("non-total", "missing row", (0,))
    report = builder.build()
    assert not report.ok
    assert report.rules() == ["B3", "non-total"]
    doc = report.to_document()
    assert doc["valid"] is False
    assert doc["violations"][0]["witness"] == [0, 1]
    assert doc["structural_errors"][0]["rule"] == "non-total"


def test_merge_concatenates():
    a = ReportBuilder()
    a.violation("A1", "x")
    b = ReportBuilder()
    b.violation("B3", "y")
    assert a.build().merge(b.build()).rules() == ["A1", "B3"]

import pytest

from exactreal.report import Entry, Report, Tally


def test_entry_lines():
    assert Entry("modulus", True, "n=10").line() == "LAW modulus PASS n=10"
    assert Entry("located", False).line() == "LAW located FAIL"


def test_report_collects_and_indexes():
    report = Report()
    report.add("a", True)
    report.add("b", False, "q=1/2")
    assert not report.ok
    assert [e.name for e in report.failures] == ["b"]
    assert report["b"].witness == "q=1/2"
    assert report.render() == "LAW a PASS\nLAW b FAIL q=1/2"
    with pytest.raises(KeyError):
        report["c"]
    assert len(Report().extend(report)) == 2


def test_tally_keeps_first_witness_and_counts():
    t = Tally("law")
    calls = []
    t.record(True, lambda: calls.append("pass") or "unused")
    t.record(False, lambda: "first")
    t.record(False, "second")
    report = Report()
    entry = t.into(report, "note")
    assert calls == []
    assert entry.line() == "LAW law FAIL 2/3 failed; first: first note"
    assert entry.checked == 3

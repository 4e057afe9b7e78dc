from fractions import Fraction

import pytest

from exactreal import suites
from exactreal.cli import main
from exactreal.rationals import parse_rational
from exactreal.report import Report


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "geo(1/2)", "--digits", "6")
    assert code == 0
    assert abs(parse_rational(out.strip()) - 1) < Fraction(1, 10**6)


def test_bounds_prints_tab_separated_rationals(capsys):
    code, out, _ = run(capsys, "bounds", "1/3", "10")
    assert code == 0
    lower, upper, width = map(parse_rational, out.strip().split("\t"))
    assert lower < Fraction(1, 3) < upper
    assert width == upper - lower < Fraction(1, 2**10)


def test_eval_lies_inside_bounds_at_matching_precision(capsys):
    _, printed, _ = run(capsys, "eval", "third + geo(-1/3)", "-d", "5")
    _, bounds, _ = run(capsys, "bounds", "third + geo(-1/3)", "17")
    lower, upper, _ = map(parse_rational, bounds.strip().split("\t"))
    assert lower <= parse_rational(printed.strip()) <= upper


def test_check_models_passes(capsys):
    code, out, _ = run(capsys, "check", "models")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("LAW ") and " PASS" in line for line in lines)


def test_check_laws_is_deterministic(capsys):
    first = run(capsys, "check", "laws", "--seed", "42", "--instances", "60")
    second = run(capsys, "check", "laws", "--seed", "42", "--instances", "60")
    assert first == second and first[0] == 0


@pytest.mark.parametrize("suite", ["limits", "cuts", "midpoint"])
def test_other_suites_small(capsys, suite):
    code, out, _ = run(capsys, "check", suite, "--instances", "4")
    assert code == 0, out
    assert all(line.startswith("LAW ") for line in out.strip().splitlines())


def test_failed_check_exits_one(capsys, monkeypatch):
    failing = Report()
    failing.add("always-fails", False, "forced")
    monkeypatch.setattr(suites, "models", lambda **kwargs: failing)
    code, out, _ = run(capsys, "check", "models")
    assert code == 1
    assert out.strip() == "LAW always-fails FAIL forced"


def test_out_writes_the_same_text(capsys, tmp_path):
    path = tmp_path / "report.txt"
    code, out, _ = run(capsys, "check", "models", "--out", str(path))
    assert code == 0
    assert path.read_text() == out


def test_no_files_without_out(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(capsys, "eval", "1/3")
    assert list(tmp_path.iterdir()) == []


@pytest.mark.parametrize("argv", [
    ["eval", "geo(3/2)"],
    ["eval", "1 + * 2"],
    ["eval", "1", "--digits", "0"],
    ["bounds", "1/3", "-1"],
    ["check", "bogus"],
    ["check", "laws", "--slack", "0"],
    [],
])
def test_usage_and_parse_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_parse_error_shows_pointer(capsys):
    _, _, err = run(capsys, "eval", "mid(1 2)")
    assert "position 6" in err
    assert "mid(1 2)\n      ^" in err


def test_plot_writes_a_png(capsys, tmp_path):
    path = tmp_path / "bracket.png"
    code, _, _ = run(capsys, "bounds", "geo(1/3)", "8", "--plot", str(path))
    assert code == 0
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

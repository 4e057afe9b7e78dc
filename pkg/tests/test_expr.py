from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exactreal.arith import rational_bounds
from exactreal.expr import (
    Abs,
    Add,
    BigMid,
    DomainError,
    Family,
    Lim,
    Mid,
    Neg,
    ParseError,
    Rat,
    Seq,
    Sub,
    bits_for_digits,
    evaluate,
    parse,
    to_real,
)
from exactreal.rationals import parse_rational


def test_parse_examples():
    assert parse("1/3 + abs(-1/4)") == Add(Rat(Fraction(1, 3)), Abs(Neg(Rat(Fraction(1, 4)))))
    assert parse("mid(0, 1)") == Mid(Rat(Fraction(0)), Rat(Fraction(1)))


def test_precedence_and_associativity():
    assert parse("1 - 2 + 3") == Add(Sub(Rat(Fraction(1)), Rat(Fraction(2))), Rat(Fraction(3)))
    assert parse("-1 - -2") == Sub(Neg(Rat(Fraction(1))), Neg(Rat(Fraction(2))))
    assert parse("-(1 + 2)") == Neg(Add(Rat(Fraction(1)), Rat(Fraction(2))))


def test_builtins():
    assert parse("third") == Lim(Family("trunc", Fraction(1, 3)))
    assert parse("quarter") == Lim(Family("trunc", Fraction(1, 4)))
    assert parse("geo(-1/2)") == Lim(Family("geo", Fraction(-1, 2)))
    assert parse("bigmid(const(-3/7))") == BigMid(Seq("const", Fraction(-3, 7)))
    assert parse("bigmid(alt)") == BigMid(Seq("alt"))
    assert parse("lim(const(third))") == Lim(Family("const", Lim(Family("trunc", Fraction(1, 3)))))
    assert parse("0.125") == Rat(Fraction(1, 8))


@pytest.mark.parametrize("text", ["geo(3/2)", "geo(1)", "geo(-1)", "lim(geo(2))"])
def test_geo_domain_errors(text):
    with pytest.raises(DomainError):
        parse(text)


@pytest.mark.parametrize("text, position", [
    ("1 +", 3),
    ("1 + * 2", 4),
    ("mid(1 2)", 6),
    ("abs(1", 5),
    ("foo(1)", 0),
    ("1 2", 2),
    ("bigmid(3)", 7),
    ("lim(third)", 4),
    ("1/0", 0),
])
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position
    assert info.value.pointer().splitlines()[1] == " " * position + "^"


@pytest.mark.parametrize("text, digits, exact", [
    ("1/3 + 1/6", 6, Fraction(1, 2)),
    ("mid(0,1)", 3, Fraction(1, 2)),
    ("geo(1/2)", 6, Fraction(1)),
])
def test_eval_examples(text, digits, exact):
    printed = evaluate(text, digits)
    assert abs(parse_rational(printed) - exact) < Fraction(1, 10**digits)
    assert len(printed.split(".")[1]) >= digits


def test_eval_validates_digits():
    with pytest.raises(ValueError):
        evaluate("1", 0)


def test_bits_for_digits():
    for d in range(1, 15):
        n = bits_for_digits(d)
        assert Fraction(1, 2**n) < Fraction(1, 10**d) <= Fraction(1, 2 ** (n - 1))


def test_to_real_rejects_foreign_nodes():
    with pytest.raises(TypeError):
        to_real(42)


atoms = st.sampled_from(["1/3", "-2/5", "0.75", "third", "quarter", "geo(1/3)", "bigmid(alt)", "7"])
exprs = st.recursive(atoms, lambda inner: st.one_of(
    st.builds(lambda a, b: f"{a} + {b}", inner, inner),
    st.builds(lambda a, b: f"{a} - ({b})", inner, inner),
    st.builds(lambda a: f"abs({a})", inner),
    st.builds(lambda a, b: f"mid({a}, {b})", inner, inner),
    st.builds(lambda a: f"lim(const({a}))", inner),
), max_leaves=6)


@settings(max_examples=40, deadline=None)
@given(exprs, st.integers(1, 9))
def test_printed_value_lies_in_matching_bounds(text, digits):
    printed = parse_rational(evaluate(text, digits))
    b = rational_bounds(to_real(text), bits_for_digits(digits))
    assert b.lower <= printed <= b.upper

import pytest
from hypothesis import given

from conftest import polys
from folcalc.errors import ExpressionSyntaxError, UnknownVariable
from folcalc.expr import parse_expression, print_expression


def test_parse_canonical():
    p = parse_expression("x^2 - 2/3*y")
    assert str(p) == "x^2 - 2/3*y"
    assert len(p.terms) == 2


def test_syntax_error_position():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("x + ")
    assert info.value.position == 4
    assert "offset 4" in str(info.value)


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_expression("x + q", ("x",))


@pytest.mark.parametrize("bad", ["x^y", "x^1/2", "(x", "x**2", "2x", "X"])
def test_rejects(bad):
    with pytest.raises(Exception):
        parse_expression(bad, ("x", "y"))


def test_unary_and_parentheses():
    assert parse_expression("-(x - 1)^2", ("x",)) == parse_expression("-x^2 + 2*x - 1", ("x",))


@given(polys())
def test_print_parse_roundtrip(p):
    assert parse_expression(print_expression(p), p.variables) == p

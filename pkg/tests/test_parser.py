import pytest
from hypothesis import given, settings

from venlab.arith import MultiPoly, render
from venlab.maps import V, W, Y, p, v, w, x, y, z
from venlab.parser import ParseError, UnknownVariable, parse_expr
from venlab import venereau as ven

from conftest import polys


def test_f1_expression():
    assert parse_expr("y + x^1*(x*z + y*(y*u+z^2))") == ven.f(1)


def test_sugar_names():
    assert parse_expr("p - (y*u + z^2)") == 0
    assert parse_expr("y*w + v^2 - x^2*p") == 0
    assert parse_expr("p0 - (y*w0 + v0^2)") == 0


def test_double_operator_offset():
    with pytest.raises(ParseError) as err:
        parse_expr("y + + z")
    assert err.value.offset == 4


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as err:
        parse_expr("y + q")
    assert err.value.offset == 4 and err.value.name == "q"
    with pytest.raises(UnknownVariable):
        parse_expr("Y + V", mode="ring")


@pytest.mark.parametrize("text,offset", [
    ("(y + z", 6), ("y^", 2), ("3/0", 2), ("y $ z", 2), ("", 0), ("y z", 2), ("z^-1", 2),
])
def test_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as err:
        parse_expr(text)
    assert err.value.offset == offset


def test_rationals_and_unary_minus():
    assert parse_expr("-3/4*y + 1/2") == y.scale(MultiPoly.const("-3/4").constant_value()) + MultiPoly.const("1/2")
    assert parse_expr("-(y - z)") == z - y
    assert parse_expr("x^-2*y") == MultiPoly.monomial(1, x=-2, y=1)


def test_presentation_mode():
    assert parse_expr("v*w + Y", mode="presentation") == V * W + Y
    assert parse_expr("y*w + v^2", mode="presentation") == Y * W + V * V
    with pytest.raises(ValueError):
        parse_expr("y", mode="other")


@settings(max_examples=500)
@given(polys(max_terms=5))
def test_render_roundtrip(q):
    assert parse_expr(render(q)) == q

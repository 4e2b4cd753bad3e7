from fractions import Fraction

import pytest

from app.core.exceptions import ExprSyntaxError, UnknownBuiltinError
from app.services.verification_service import random_expression
from app.utils.expr import Add, Literal, Mul, Name, Neg, Pow, Scale, parse_expr, to_text, tokenize


def test_parse_builtins():
    assert parse_expr("pi") == Name("pi")
    assert parse_expr("log(2)") == Name("log", (Fraction(2),))
    assert parse_expr("pi_log(7/2)") == Name("pi_log", (Fraction(7, 2),))
    assert parse_expr("zeta(4)") == Name("zeta", (Fraction(4),))
    assert parse_expr("-3/4") == Literal(Fraction(-3, 4))


def test_parse_combinators():
    assert parse_expr("mul(pi, log(2))") == Mul(Name("pi"), Name("log", (Fraction(2),)))
    assert parse_expr("add(pi, neg(pi))") == Add(Name("pi"), Neg(Name("pi")))
    assert parse_expr("pow( pi ,3 )") == Pow(Name("pi"), 3)
    assert parse_expr("scale(1/2 - 3i, pi)") == Scale(Fraction(1, 2), Fraction(-3), Name("pi"))
    assert parse_expr("scale(-2, pi)") == Scale(Fraction(-2), Fraction(0), Name("pi"))


def test_printer():
    assert to_text(Scale(Fraction(0), Fraction(1), Name("pi"))) == "scale(0 + 1i, pi)"
    assert to_text(parse_expr("mul(pi,log(3))")) == "mul(pi, log(3))"


def test_round_trip_random_expressions(rng):
    for _ in range(200):
        node = random_expression(rng, 3)
        assert parse_expr(to_text(node)) == node


@pytest.mark.parametrize("text, offset, expected", [
    ("mul(pi log(2))", 7, [","]),
    ("pi)", 2, ["end of input"]),
    ("pow(pi, 0)", 8, ["positive integer"]),
    ("log(1/0)", 6, ["positive integer"]),
    ("scale(1 + 2, pi)", 11, ["i"]),
    ("neg(pi", 6, [")"]),
])
def test_syntax_errors(text, offset, expected):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert info.value.offset == offset
    assert info.value.expected == expected
    assert info.value.to_payload()["error"] == "syntax_error"


def test_empty_input_lists_expression_starts():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("")
    assert info.value.offset == 0
    assert {"pi", "add", "integer"} <= set(info.value.expected)


def test_unexpected_character():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("pi $")
    assert info.value.offset == 3


def test_offsets_are_bytes():
    # a no-break space is one character but two bytes
    assert [t.offset for t in tokenize("\u00a0pi)")] == [2, 4, 5]
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("\u00a0pi)")
    assert info.value.offset == 4


def test_unknown_names():
    with pytest.raises(UnknownBuiltinError):
        parse_expr("mul(pi, e)")
    with pytest.raises(UnknownBuiltinError) as info:
        parse_expr("foo")
    assert "pi" in info.value.detail["expected"]

"""
Expression language for periods.

Fully parenthesised prefix syntax, parsed LL(1):

    expr     := term | add(expr, expr) | mul(expr, expr) | neg(expr)
              | scale(gauss, expr) | pow(expr, int)
    term     := pi | pi_log2 | pi_squared | log(rational) | pi_log(rational)
              | zeta(int) | sqrt(int) | rational
    gauss    := rational [("+" | "-") rational "i"]
    rational := ["-"] int ["/" int]

Syntax errors carry the byte offset of the offending token and the set of
tokens that would have been accepted there.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Set, Tuple, Union

from ..core.exceptions import ExprSyntaxError, UnknownBuiltinError
from .exactnum import format_rational

# name -> parameter kind
CONSTANTS = ("pi", "pi_log2", "pi_squared")
RATIONAL_BUILTINS = ("log", "pi_log")
INTEGER_BUILTINS = ("zeta", "sqrt")
COMBINATORS = ("add", "mul", "neg", "scale", "pow")

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[(),/+\-]))")


class Token(NamedTuple):
    kind: str  # "int", "ident", "sym" or "end"
    text: str
    offset: int


# -- AST ------------------------------------------------------------------------

@dataclass(frozen=True)
class Name:
    name: str
    params: Tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class Literal:
    value: Fraction


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Scale:
    re: Fraction
    im: Fraction
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Name, Literal, Add, Mul, Neg, Scale, Pow]


# -- tokenizer --------------------------------------------------------------------

def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    raw = text.encode()
    while True:
        match = _TOKEN.match(text, pos)
        if match is None:
            rest = text[pos:]
            if not rest.strip():
                break
            start = pos + len(rest) - len(rest.lstrip())
            raise ExprSyntaxError(f"Unexpected character {text[start]!r}",
                                  offset=_byte_offset(text, start),
                                  expected=["identifier", "integer", "(", ")", ",", "/", "+", "-"])
        kind = match.lastgroup or "sym"
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), _byte_offset(text, start)))
        pos = match.end()
    tokens.append(Token("end", "", len(raw)))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode())


# -- parser -------------------------------------------------------------------------

_EXPR_START = set(CONSTANTS + RATIONAL_BUILTINS + INTEGER_BUILTINS + COMBINATORS) | {"integer", "-"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected: Set[str], message: Optional[str] = None) -> ExprSyntaxError:
        tok = self.current
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        return ExprSyntaxError(message or f"Unexpected {found}", offset=tok.offset, expected=expected)

    def accept(self, text: str) -> bool:
        if self.current.kind == "sym" and self.current.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.fail({text})

    def integer(self) -> int:
        tok = self.current
        if tok.kind != "int":
            raise self.fail({"integer"})
        self.pos += 1
        return int(tok.text)

    def rational(self) -> Fraction:
        sign = -1 if self.accept("-") else 1
        num = self.integer()
        if self.accept("/"):
            den_tok = self.current
            den = self.integer()
            if den == 0:
                raise ExprSyntaxError("Zero denominator", offset=den_tok.offset, expected={"positive integer"})
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def parse(self) -> Expr:
        node = self.expr()
        if self.current.kind != "end":
            raise self.fail({"end of input"})
        return node

    def expr(self) -> Expr:
        tok = self.current
        if tok.kind == "int" or (tok.kind == "sym" and tok.text == "-"):
            return Literal(self.rational())
        if tok.kind != "ident":
            raise self.fail(_EXPR_START)
        name = tok.text
        self.pos += 1
        if name in CONSTANTS:
            return Name(name)
        if name in RATIONAL_BUILTINS:
            self.expect("(")
            q = self.rational()
            self.expect(")")
            return Name(name, (q,))
        if name in INTEGER_BUILTINS:
            self.expect("(")
            n = self.integer()
            self.expect(")")
            return Name(name, (Fraction(n),))
        if name in ("add", "mul"):
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return Add(left, right) if name == "add" else Mul(left, right)
        if name == "neg":
            self.expect("(")
            operand = self.expr()
            self.expect(")")
            return Neg(operand)
        if name == "scale":
            self.expect("(")
            re_part = self.rational()
            im_part = Fraction(0)
            if self.current.kind == "sym" and self.current.text in "+-":
                sign = -1 if self.current.text == "-" else 1
                self.pos += 1
                im_part = sign * self.rational()
                if not (self.current.kind == "ident" and self.current.text == "i"):
                    raise self.fail({"i"})
                self.pos += 1
            self.expect(",")
            operand = self.expr()
            self.expect(")")
            return Scale(re_part, im_part, operand)
        if name == "pow":
            self.expect("(")
            base = self.expr()
            self.expect(",")
            exp_tok = self.current
            exponent = self.integer()
            if exponent < 1:
                raise ExprSyntaxError("pow exponent must be a positive integer",
                                      offset=exp_tok.offset, expected={"positive integer"})
            self.expect(")")
            return Pow(base, exponent)
        raise UnknownBuiltinError(f"Unknown name {name!r}", name=name, offset=tok.offset,
                                  expected=sorted(_EXPR_START - {"integer", "-"}))


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


# -- printer --------------------------------------------------------------------------

def to_text(node: Expr) -> str:
    """Canonical text; parse_expr(to_text(e)) == e."""
    if isinstance(node, Literal):
        return format_rational(node.value)
    if isinstance(node, Name):
        if not node.params:
            return node.name
        return f"{node.name}({', '.join(format_rational(p) for p in node.params)})"
    if isinstance(node, Add):
        return f"add({to_text(node.left)}, {to_text(node.right)})"
    if isinstance(node, Mul):
        return f"mul({to_text(node.left)}, {to_text(node.right)})"
    if isinstance(node, Neg):
        return f"neg({to_text(node.operand)})"
    if isinstance(node, Scale):
        coeff = format_rational(node.re)
        if node.im != 0:
            op = "-" if node.im < 0 else "+"
            coeff = f"{coeff} {op} {format_rational(abs(node.im))}i"
        return f"scale({coeff}, {to_text(node.operand)})"
    if isinstance(node, Pow):
        return f"pow({to_text(node.base)}, {node.exponent})"
    raise TypeError(f"Not an expression node: {node!r}")


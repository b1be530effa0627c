"""Scalar expression grammar for matrix files and its inverse.

Grammar (whitespace ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | atom
    atom    := INTEGER | "sqrt" "(" INTEGER ")" | "t" | NAME | "(" expr ")"

``sqrt(D)`` is accepted when √D lies in the declared field (a radicand, the
product of both radicands, or a square multiple of either). ``t`` is the
family parameter and only allowed with ``allow_parameter``. ``NAME`` refers to
a named definition (e.g. ``mu``/``nu`` of a family file).
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from coxlib.numfield import AlgNumber, FieldMismatchError, FieldSpec
from coxlib.ratfunc import Polynomial, RationalFunction

Value = AlgNumber | RationalFunction

PARAMETER = "t"

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class ExpressionError(ValueError):
    """Syntax or semantic error in an expression; ``position`` is a 0-based offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        assert m is not None
        start = m.start(m.lastindex or 0)
        if m.group(1) is not None:
            tokens.append(_Token("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(_Token("name", m.group(2), start))
        else:
            op = m.group(3)
            if op not in "+-*/()":
                raise ExpressionError(f"unexpected character {op!r}", text, start)
            tokens.append(_Token("op", op, start))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(
        self,
        text: str,
        spec: FieldSpec,
        allow_parameter: bool,
        definitions: Mapping[str, Value],
    ):
        self.text = text
        self.spec = spec
        self.allow_parameter = allow_parameter
        self.definitions = definitions
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> _Token:
        return self.tokens[self.index]

    def _next(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _error(self, message: str, tok: _Token | None = None) -> ExpressionError:
        return ExpressionError(message, self.text, (tok or self._peek()).pos)

    def _expect(self, op: str) -> None:
        tok = self._next()
        if tok.kind != "op" or tok.value != op:
            raise self._error(f"expected {op!r}", tok)

    def parse(self) -> Value:
        if self._peek().kind == "end":
            raise self._error("empty expression")
        value = self._expr()
        if self._peek().kind != "end":
            raise self._error(f"unexpected {self._peek().value!r}")
        return value

    def _expr(self) -> Value:
        value = self._term()
        while self._peek().kind == "op" and self._peek().value in "+-":
            op = self._next().value
            rhs = self._term()
            value = _combine(value, rhs, op)
        return value

    def _term(self) -> Value:
        value = self._unary()
        while self._peek().kind == "op" and self._peek().value in "*/":
            tok = self._next()
            rhs = self._unary()
            try:
                value = _combine(value, rhs, tok.value)
            except ZeroDivisionError:
                raise self._error("division by zero", tok) from None
        return value

    def _unary(self) -> Value:
        tok = self._peek()
        if tok.kind == "op" and tok.value == "-":
            self._next()
            return -self._unary()
        if tok.kind == "op" and tok.value == "+":
            self._next()
            return self._unary()
        return self._atom()

    def _atom(self) -> Value:
        tok = self._next()
        if tok.kind == "int":
            return self.spec.rational(int(tok.value))
        if tok.kind == "op" and tok.value == "(":
            value = self._expr()
            self._expect(")")
            return value
        if tok.kind == "name":
            if tok.value == "sqrt":
                self._expect("(")
                arg = self._next()
                if arg.kind != "int":
                    raise self._error("sqrt expects an integer literal", arg)
                self._expect(")")
                try:
                    return self.spec.sqrt(int(arg.value))
                except FieldMismatchError:
                    raise self._error(
                        f"undeclared radicand sqrt({arg.value}) for field {self.spec}", arg
                    ) from None
            if tok.value == PARAMETER:
                if not self.allow_parameter:
                    raise self._error("parameter 't' not allowed here", tok)
                return RationalFunction.parameter(self.spec)
            if tok.value in self.definitions:
                return self.definitions[tok.value]
            raise self._error(f"unknown name {tok.value!r}", tok)
        if tok.kind == "end":
            raise self._error("unexpected end of expression", tok)
        raise self._error(f"unexpected {tok.value!r}", tok)


def _combine(lhs: Value, rhs: Value, op: str) -> Value:
    if isinstance(rhs, RationalFunction) and not isinstance(lhs, RationalFunction):
        lhs = RationalFunction.constant(lhs, rhs.spec)
    if op == "+":
        return lhs + rhs
    if op == "-":
        return lhs - rhs
    if op == "*":
        return lhs * rhs
    return lhs / rhs


def parse_expression(
    text: str,
    spec: FieldSpec,
    allow_parameter: bool = False,
    definitions: Mapping[str, Value] | None = None,
) -> Value:
    """Parse ``text`` exactly.

    Returns an :class:`AlgNumber` unless the parameter (or a parametric
    definition) occurs, in which case a reduced :class:`RationalFunction`.
    """
    return _Parser(str(text), spec, allow_parameter, definitions or {}).parse()


def parse_number(text: str | int, spec: FieldSpec) -> AlgNumber:
    """Parse a constant; the parameter is rejected."""
    value = parse_expression(str(text), spec, allow_parameter=False)
    assert isinstance(value, AlgNumber)
    return value


def as_ratfunc(value: Value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction.constant(value, value.spec)


# ── Formatting ───────────────────────────────────────────────────


def format_number(x: AlgNumber | int | Fraction) -> str:
    """Grammar text for an exact number (re-parses to the same value)."""
    if isinstance(x, AlgNumber):
        return str(x)
    return str(Fraction(x))


def _format_coeff(c: AlgNumber) -> str:
    text = str(c)
    if " " in text:
        return f"({text})"
    return text


def format_polynomial(poly: Polynomial) -> str:
    if poly.is_zero:
        return "0"
    parts: list[str] = []
    for power, coeff in enumerate(poly.coeffs):
        if coeff.is_zero:
            continue
        if power == 0:
            parts.append(_format_coeff(coeff))
            continue
        var = "*".join([PARAMETER] * power)
        if coeff == 1:
            parts.append(var)
        elif coeff == -1:
            parts.append(f"-{var}")
        else:
            parts.append(f"{_format_coeff(coeff)}*{var}")
    text = parts[0]
    for part in parts[1:]:
        text += f" - {part[1:]}" if part.startswith("-") and not part.startswith("-(") else f" + {part}"
    return text


def format_ratfunc(f: RationalFunction) -> str:
    num = format_polynomial(f.numerator)
    if f.denominator.degree == 0:
        return num
    if len([c for c in f.numerator.coeffs if not c.is_zero]) > 1:
        num = f"({num})"
    return f"{num}/({format_polynomial(f.denominator)})"


def format_value(value: Value) -> str:
    if isinstance(value, RationalFunction):
        return format_ratfunc(value)
    return format_number(value)

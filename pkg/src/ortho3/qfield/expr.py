"""Recursive-descent parser for exact scalar expressions.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := rational | 'sqrt' '(' expr ')' | '(' expr ')' | '-' factor
    rational := integer ('/' integer)?

Square roots route through :func:`ortho3.qfield.tower.sqrt`, so parsing may
extend the working field; the result element carries the final field.  All
division (including a zero rational-literal denominator) is checked when the
value is formed, not at scan time.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DivisionByZero, ParseError
from .tower import QQ, TowerElem, TowerField, sqrt


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"expected '{ch}'", self.pos)
        self.pos += 1

    def try_char(self, chars: str) -> str:
        c = self.peek()
        if c and c in chars:
            self.pos += 1
            return c
        return ""

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected integer", start)
        return int(self.text[start:self.pos])

    def at_integer(self) -> bool:
        self.skip_ws()
        return self.pos < len(self.text) and self.text[self.pos].isdigit()

    def at_word(self, word: str) -> bool:
        self.skip_ws()
        end = self.pos + len(word)
        if self.text[self.pos:end] != word:
            return False
        return not (end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"))


def parse_scalar(text: str, field: TowerField = QQ) -> TowerElem:
    """Parse ``text`` into an exact scalar over ``field`` (possibly extended).

    Raises :class:`ParseError` with the byte offset of the failure;
    :class:`NegativeRadicand` and :class:`DivisionByZero` propagate from
    evaluation.
    """
    sc = _Scanner(text)
    value = _expr(sc, field)
    sc.skip_ws()
    if sc.pos != len(text):
        raise ParseError("unexpected trailing input", sc.pos)
    return value


def _expr(sc: _Scanner, field: TowerField) -> TowerElem:
    value = _term(sc, field)
    while True:
        op = sc.try_char("+-")
        if not op:
            return value
        rhs = _term(sc, value.field)
        value = value + rhs if op == "+" else value - rhs


def _term(sc: _Scanner, field: TowerField) -> TowerElem:
    value = _factor(sc, field)
    while True:
        op = sc.try_char("*/")
        if not op:
            return value
        rhs = _factor(sc, value.field)
        value = value * rhs if op == "*" else value / rhs


def _factor(sc: _Scanner, field: TowerField) -> TowerElem:
    c = sc.peek()
    if c == "-":
        sc.pos += 1
        return -_factor(sc, field)
    if c == "(":
        sc.pos += 1
        value = _expr(sc, field)
        sc.expect(")")
        return value
    if sc.at_word("sqrt"):
        sc.pos += 4
        sc.expect("(")
        inner = _expr(sc, field)
        sc.expect(")")
        return sqrt(inner)
    if sc.at_integer():
        num = sc.integer()
        mark = sc.pos
        if sc.try_char("/"):
            if sc.at_integer():
                den = sc.integer()
                if den == 0:
                    raise DivisionByZero("rational literal with zero denominator")
                return field.rational(Fraction(num, den))
            sc.pos = mark  # '/' starts a term-level division, not a literal
        return field.rational(num)
    raise ParseError("expected a factor", sc.pos)

"""A small expression language for motives and series.

Symbols: ``L`` (Lefschetz), ``Mt`` and ``Mt2`` (formal equivariant
generators), ``mu3`` (``= 1 - Mt``) and ``t`` (series variable).  Operators
``+ - * / ^ **`` and parentheses; juxtaposition means multiplication, so
``(2L-1)/(L-1)*t/(1-t)`` and ``2 L t^2`` both parse.  ``L^(1/2)`` gives the
half power.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction

from .errors import ParseError
from .motive import MotiveClass, MotiveRatio
from .series import Series

_SYMBOLS = {
    "L": MotiveClass.lefschetz,
    "Mt": MotiveClass.mtilde,
    "Mt2": MotiveClass.mtilde2,
    "mu3": MotiveClass.mu3,
}

_ALLOWED = re.compile(r"^[\sA-Za-z0-9_+\-*/^().]*$")


def _insert_products(text: str) -> str:
    text = text.replace("^", "**")
    text = re.sub(r"(\d)\s*(?=[A-Za-z(])", r"\1*", text)
    text = re.sub(r"\)\s*(?=[A-Za-z0-9(])", ")*", text)
    text = re.sub(r"([A-Za-z_]\w*)\s*(?=\()", r"\1*", text)
    text = re.sub(r"([A-Za-z_]\w*)\s+(?=[A-Za-z0-9])", r"\1*", text)
    return text


class _Evaluator:
    def __init__(self, order: int | None):
        self.order = order

    # levels: Fraction < MotiveRatio < Series
    def _level(self, v) -> int:
        if isinstance(v, Series):
            return 2
        if isinstance(v, (MotiveRatio, MotiveClass)):
            return 1
        return 0

    def _lift(self, v, level: int):
        if level == 2 and not isinstance(v, Series):
            return Series.monomial(MotiveRatio.coerce(v), 0, self.order)
        if level == 1:
            return MotiveRatio.coerce(v)
        return v

    def _binop(self, op, a, b):
        level = max(self._level(a), self._level(b))
        a, b = self._lift(a, level), self._lift(b, level)
        if isinstance(op, ast.Add):
            return a + b
        if isinstance(op, ast.Sub):
            return a - b
        if isinstance(op, ast.Mult):
            return a * b
        if isinstance(op, ast.Div):
            if level == 0:
                return Fraction(a) / Fraction(b)
            return a / b
        raise ParseError(f"unsupported operator {type(op).__name__}")

    def eval(self, node):
        if isinstance(node, ast.Expression):
            return self.eval(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ParseError(f"unsupported literal {node.value!r}", node.col_offset)
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id == "t":
                if self.order is None:
                    raise ParseError("the series variable t needs a truncation order", node.col_offset)
                return Series.monomial(1, 1, self.order)
            if node.id not in _SYMBOLS:
                raise ParseError(f"unknown symbol {node.id!r}", node.col_offset)
            return MotiveRatio(_SYMBOLS[node.id]())
        if isinstance(node, ast.UnaryOp):
            value = self.eval(node.operand)
            if isinstance(node.op, ast.USub):
                return -value
            if isinstance(node.op, ast.UAdd):
                return value
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                return self._power(node)
            return self._binop(node.op, self.eval(node.left), self.eval(node.right))
        raise ParseError(f"unsupported syntax {type(node).__name__}", getattr(node, "col_offset", None))

    def _power(self, node: ast.BinOp):
        exponent = self.eval(node.right)
        if not isinstance(exponent, Fraction):
            raise ParseError("exponents must be rational constants", node.right.col_offset)
        if isinstance(node.left, ast.Name) and node.left.id == "L" and exponent.denominator == 2:
            return MotiveRatio(MotiveClass.lefschetz(exponent))
        if exponent.denominator != 1:
            raise ParseError("only L admits half-integer powers", node.right.col_offset)
        base = self.eval(node.left)
        k = exponent.numerator
        if isinstance(base, Fraction):
            return base ** k
        return base ** k


def _parse(text: str, order: int | None):
    if not _ALLOWED.match(text):
        bad = next(i for i, ch in enumerate(text) if not _ALLOWED.match(ch))
        raise ParseError(f"unexpected character {text[bad]!r}", bad)
    source = _insert_products(text.strip())
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"malformed expression {text!r}", exc.offset) from None
    return _Evaluator(order).eval(tree)


def parse_motive(text: str) -> MotiveClass | MotiveRatio:
    """Parse a motive; returns a class when no denominator remains."""
    value = _parse(text, None)
    if isinstance(value, Fraction):
        value = MotiveRatio.coerce(value)
    if value.den == 1:
        return value.num
    return value


def parse_series(text: str, order: int) -> Series:
    value = _parse(text, order)
    if isinstance(value, Series):
        return value
    return Series.monomial(MotiveRatio.coerce(value), 0, order)

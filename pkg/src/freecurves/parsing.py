"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*        # "/" only by nonzero constants
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := NUMBER | "x" | "y" | "z" | "i" | "(" expr ")"

``i`` is the imaginary unit and is accepted only over Q(i).  The output of
:func:`freecurves.polys.format_poly` is always re-parsable.
"""
from __future__ import annotations

from .errors import ParseError, UnknownVariable
from .polys import Poly
from .scalars import QQ, Field

_VARS = {"x": 0, "y": 1, "z": 2}


class _Parser:
    def __init__(self, text: str, field: Field):
        self.text = text
        self.field = field
        self.pos = 0

    def error(self, msg, expected=()):
        raise ParseError(msg, self.pos, expected)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Poly:
        if not self.text.strip():
            self.error("empty expression", ("number", "variable", "("))
        p = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}", ("+", "-", "*", "/", "^", "end of input"))
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            start = self.pos
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self.pos = start
                    self.error("division only by nonzero constants", ("number",))
                p = p.scale(self.field.inv(q.constant_value()))
        return p

    def unary(self) -> Poly:
        c = self.peek()
        if c == "-":
            self.pos += 1
            return -self.unary()
        if c == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("exponent must be a nonnegative integer", ("integer",))
            base = base ** int(self.text[start:self.pos])
        return base

    def atom(self) -> Poly:
        c = self.peek()
        if not c:
            self.error("unexpected end of input", ("number", "variable", "("))
        if c == "(":
            self.pos += 1
            p = self.expr()
            if self.peek() != ")":
                self.error("unbalanced parenthesis", (")",))
            self.pos += 1
            return p
        if c.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Poly.const(self.field, int(self.text[start:self.pos]))
        if c.isalpha() or c == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name in _VARS:
                return Poly.var(self.field, name)
            if name == "i":
                if self.field.kind != "QI":
                    self.pos = start
                    raise UnknownVariable("imaginary unit i requires --field qi", start, ("x", "y", "z"))
                return Poly.const(self.field, self.field.i)
            self.pos = start
            raise UnknownVariable(f"unknown variable {name!r}", start, ("x", "y", "z"))
        self.error(f"unexpected {c!r}", ("number", "variable", "("))


def parse_poly(text: str, field: Field = QQ) -> Poly:
    return _Parser(text, field).parse()


def parse_point(text: str, field: Field = QQ):
    """Parse ``a,b,c`` (optionally wrapped in parentheses) into raw field values."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    parts = [p for p in s.split(",")]
    if len(parts) != 3:
        raise ParseError(f"point needs three coordinates, got {len(parts)}", 0, ("a,b,c",))
    vals = []
    for part in parts:
        p = parse_poly(part, field)
        if not p.is_constant():
            raise ParseError(f"coordinate {part!r} is not a constant", 0)
        vals.append(p.constant_value())
    return tuple(vals)

"""Parser for field-element expressions such as ``a^2 + 2*a - 1`` or ``(1/2)*a - 3``.

Grammar (usual precedence, ``^`` binds tighter than unary minus)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := INT | 'a' | '(' expr ')'

Division is only allowed by nonzero rational constants.
"""

from __future__ import annotations

import re

from .field import FieldContext, FieldElement

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([A-Za-z_]\w*))")


class ParseError(ValueError):
    def __init__(self, msg: str, src: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {src!r}")
        self.pos = pos
        self.src = src


def _tokenize(src: str):
    toks = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            bad = len(src) - len(src[pos:].lstrip())
            raise ParseError("unexpected character", src, bad)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("op", m.group(2), start))
        else:
            toks.append(("name", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, ctx: FieldContext):
        self.src = src
        self.ctx = ctx
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.src, tok[2])

    def expr(self) -> FieldElement:
        val = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> FieldElement:
        val = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                val = val * rhs
            else:
                if not rhs.is_rational():
                    raise self.error("division only by rational constants", tok)
                if rhs.is_zero():
                    raise self.error("division by zero", tok)
                val = val / rhs
        return val

    def unary(self) -> FieldElement:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> FieldElement:
        base = self.atom()
        if self.peek()[:2] in (("op", "^"), ("op", "**")):
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("exponent must be a nonnegative integer", tok)
            return base ** tok[1]
        return base

    def atom(self) -> FieldElement:
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return self.ctx.rational(val)
        if kind == "name":
            if val != self.ctx.generator_name:
                raise self.error(f"unknown symbol {val!r}", tok)
            return self.ctx.gen
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                raise self.error("expected ')'", close)
            return inner
        raise self.error("unexpected token" if kind != "end" else "unexpected end of input", tok)

    def parse(self) -> FieldElement:
        val = self.expr()
        if self.peek()[0] != "end":
            raise self.error("trailing input")
        return val


def parse_element(src: str, ctx: FieldContext) -> FieldElement:
    """Exact element of ``ctx`` described by ``src``."""
    return _Parser(src, ctx).parse()

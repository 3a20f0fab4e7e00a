"""Text grammar for scalars and algebra elements.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' ['-'] INT]
    atom   := INT | 'v' | 'q' | 'I' | '(' expr ')'
            | 'E'INT | 'F'INT | 'K[' ints ']' | 'xi[' ints ']'

Division is only allowed by scalars.  ``q`` is sugar for ``v^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .scalars import I, ONE, Scalar, V
from .weights import LatticeError


class ParseError(ValueError):
    """Syntax error with the 0-based character offset of the culprit."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        where = f" at position {position}"
        if text:
            where += f": {text[:position]}<<HERE>>{text[position:]}"
        super().__init__(message + where)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_]+)(?P<idx>\d+)?|(?P<list>\[[^\]]*\])|(?P<op>[-+*/^(),]))"
)


@dataclass
class _Tok:
    kind: str
    value: object
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group("num") is not None:
            toks.append(_Tok("num", int(m.group("num")), start))
        elif m.group("name") is not None:
            toks.append(_Tok("name", (m.group("name"), m.group("idx")), start))
        elif m.group("list") is not None:
            body = m.group("list")[1:-1].strip()
            try:
                items = [int(x) for x in body.split(",")] if body else []
            except ValueError:
                raise ParseError("malformed integer list", start, text) from None
            toks.append(_Tok("list", items, start))
        else:
            toks.append(_Tok("op", m.group("op"), start))
        pos = m.end()
    toks.append(_Tok("end", None, n))
    return toks


class ExpressionParser:
    """Recursive-descent evaluator; atoms beyond scalars come from ``atom``.

    ``atom(name, index, bracket_list, position)`` returns a value or None.
    """

    def __init__(self, text: str, atom=None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.atom = atom

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str):
        t = self.take()
        if t.kind != "op" or t.value != op:
            raise ParseError(f"expected {op!r}", t.pos, self.text)

    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0, self.text)
        val = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError("unexpected trailing input", t.pos, self.text)
        return val

    def expr(self):
        t = self.peek()
        sign = 1
        if t.kind == "op" and t.value in "+-":
            self.take()
            sign = -1 if t.value == "-" else 1
        val = self.term()
        if sign < 0:
            val = -val
        while True:
            t = self.peek()
            if t.kind == "op" and t.value in "+-":
                self.take()
                rhs = self.term()
                val = val + rhs if t.value == "+" else val - rhs
            else:
                return val

    def term(self):
        val = self.factor()
        while True:
            t = self.peek()
            if t.kind == "op" and t.value in "*/":
                self.take()
                rhs = self.factor()
                if t.value == "*":
                    val = val * rhs
                else:
                    if not isinstance(rhs, Scalar):
                        raise ParseError("division by a non-scalar", t.pos, self.text)
                    if rhs.is_zero():
                        raise ParseError("division by zero", t.pos, self.text)
                    val = val / rhs
            else:
                return val

    def factor(self):
        base = self.atom_value()
        t = self.peek()
        if t.kind == "op" and t.value == "^":
            self.take()
            neg = False
            t2 = self.peek()
            if t2.kind == "op" and t2.value == "-":
                self.take()
                neg = True
            t3 = self.take()
            if t3.kind != "num":
                raise ParseError("expected integer exponent", t3.pos, self.text)
            n = -t3.value if neg else t3.value
            try:
                return base ** n
            except (ValueError, ZeroDivisionError, TypeError) as exc:
                raise ParseError(str(exc), t.pos, self.text) from None
        return base

    def atom_value(self):
        t = self.take()
        if t.kind == "num":
            return Scalar.coerce(t.value)
        if t.kind == "op" and t.value == "(":
            val = self.expr()
            self.expect_op(")")
            return val
        if t.kind == "name":
            name, idx = t.value
            if idx is None and name == "v":
                return V
            if idx is None and name == "q":
                return V * V
            if idx is None and name == "I":
                return I
            bracket = None
            if self.peek().kind == "list":
                bracket = self.take().value
            if self.atom is not None:
                try:
                    val = self.atom(name, None if idx is None else int(idx), bracket, t.pos)
                except (ParseError, LatticeError):
                    raise
                except (ValueError, IndexError) as exc:
                    raise ParseError(str(exc), t.pos, self.text) from None
                if val is not None:
                    return val
            raise ParseError(f"unknown symbol {name}{idx or ''}", t.pos, self.text)
        raise ParseError("expected a value", t.pos, self.text)


def parse_scalar(text: str) -> Scalar:
    val = ExpressionParser(text).parse()
    return Scalar.coerce(val)


# -- printing ---------------------------------------------------------------


def _fmt_rational(x) -> str:
    return str(x)


def _fmt_coeff(a, b) -> str:
    if b == 0:
        return _fmt_rational(a)
    if a == 0:
        if b == 1:
            return "I"
        if b == -1:
            return "-I"
        return f"{_fmt_rational(b)}*I"
    sign = "+" if b > 0 else "-"
    mag = b if b > 0 else -b
    im = "I" if mag == 1 else f"{_fmt_rational(mag)}*I"
    return f"({_fmt_rational(a)} {sign} {im})"


def _fmt_terms(terms) -> str:
    """terms: iterable of (exponent, re, im)."""
    parts = []
    for e, a, b in terms:
        mono = "" if e == 0 else ("v" if e == 1 else f"v^{e}")
        if not mono:
            s = _fmt_coeff(a, b)
        elif b == 0 and a == 1:
            s = mono
        elif b == 0 and a == -1:
            s = "-" + mono
        else:
            s = _fmt_coeff(a, b) + "*" + mono
        parts.append(s)
    if not parts:
        return "0"
    out = parts[0]
    for s in parts[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


def _poly_terms(re, im, shift=0):
    top = max(re.degree(), im.degree())
    for k in range(top + 1):
        a = re[k] if k <= re.degree() else 0
        b = im[k] if k <= im.degree() else 0
        if a != 0 or b != 0:
            yield k - shift, a, b


def format_scalar(x: Scalar) -> str:
    if x.is_zero():
        return "0"
    if x.is_laurent():
        return _fmt_terms(_poly_terms(x.re, x.im, x.den.degree()))
    num = _fmt_terms(_poly_terms(x.re, x.im))
    den = _fmt_terms(_poly_terms(x.den, x.den * 0))
    return f"({num})/({den})"


def format_coefficient(x: Scalar) -> str:
    """Scalar text safe to place in front of ``*word``."""
    s = format_scalar(x)
    if " + " in s or " - " in s or s.startswith("("):
        return f"({s})"
    return s


def format_linear_combination(items) -> str:
    """items: iterable of (Scalar, word_text) with word_text '1' for the unit."""
    parts = []
    for c, w in items:
        if w == "1":
            s = format_coefficient(c)
        elif c == ONE:
            s = w
        elif c == -ONE:
            s = "-" + w
        else:
            s = format_coefficient(c) + "*" + w
        parts.append(s)
    if not parts:
        return "0"
    out = parts[0]
    for s in parts[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out

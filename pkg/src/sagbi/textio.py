"""Problem files and polynomial expressions.

A problem file is a small line-based format::

    # comment
    ring = int            # or rat
    vars = x, y           # first variable is the largest
    order = deglex        # lex | deglex | degrevlex
    max_passes = 16       # optional
    [F]
    4*x^2*y^2 + 2*x*y^3 + 3*x*y
    2*x^2 + x*y
    [G]
    ...

Expressions use ``+ - * ^`` and parentheses; multiplication must be
written out.  Over ``rat`` a literal may be a fraction ``n/d``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .poly import ORDER_KINDS, PolyRing, Polynomial
from .ring import Domain

SECTIONS = ("F", "G", "H")


class ProblemError(ValueError):
    """A parse or validation error, positioned when possible."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str, line: int, offset: int):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        col = offset + start + 1
        if m.group(1) is not None:
            out.append(("num", m.group(1), col))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*^()/":
                raise ProblemError(f"unexpected character {ch!r}", line, col)
            out.append((ch, ch, col))
        pos = m.end()
    out.append(("end", "", offset + len(text.rstrip()) + 1))
    return out


class _Parser:
    def __init__(self, text: str, ring: PolyRing, line: int, offset: int):
        self.ring = ring
        self.line = line
        self.toks = _tokenize(text, line, offset)
        self.i = 0
        self.var = {name: k for k, name in enumerate(ring.names)}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ProblemError(msg, self.line, tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("num", "name", "("):
                self.fail(f"implicit multiplication before {tok[1]!r} (write '*')")
            self.fail(f"unexpected {tok[1]!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.unary()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            q = self.unary()
            p = p + q if op == "+" else p - q
        return p

    def unary(self) -> Polynomial:
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.product()

    def product(self) -> Polynomial:
        p = self.power()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.power()
        return p

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("exponent must be a nonnegative integer", tok)
            return base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind = tok[0]
        if kind == "num":
            value: Union[int, Fraction] = int(tok[1])
            if self.peek()[0] == "/":
                slash = self.take()
                den = self.take()
                if self.ring.domain is not Domain.QQ:
                    self.fail("fractions need ring = rat", slash)
                if den[0] != "num" or int(den[1]) == 0:
                    self.fail("expected a nonzero integer denominator", den)
                value = Fraction(value, int(den[1]))
            return self.ring.const(value)
        if kind == "name":
            k = self.var.get(tok[1])
            if k is None:
                self.fail(f"unknown variable {tok[1]!r}", tok)
            return self.ring.gen(k)
        if kind == "(":
            p = self.expr()
            close = self.take()
            if close[0] != ")":
                self.fail("expected ')'", close)
            return p
        if kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected {tok[1]!r}", tok)


def parse_polynomial(text: str, ring: PolyRing, line: int = 1, offset: int = 0) -> Polynomial:
    return _Parser(text, ring, line, offset).parse()


@dataclass
class ProblemFile:
    ring: PolyRing
    sections: dict[str, list[Polynomial]] = field(default_factory=dict)
    max_passes: Optional[int] = None

    @property
    def domain(self) -> Domain:
        return self.ring.domain

    @property
    def order(self) -> str:
        return self.ring.order.kind

    def section(self, name: str) -> list[Polynomial]:
        return self.sections.get(name, [])


_HEADER = re.compile(r"^\[([A-Za-z]+)\]$")
_SETTING = re.compile(r"^([A-Za-z_]+)\s*=\s*(.*)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_problem(source: Union[str, Path]) -> ProblemFile:
    """Parse a problem from a path or from the file's text."""
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    else:
        text = source
    settings: dict[str, tuple[str, int]] = {}
    raw: dict[str, list[tuple[str, int, int]]] = {}
    header_line: dict[str, int] = {}
    current = None
    for lineno, full in enumerate(text.splitlines(), start=1):
        body = full.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        h = _HEADER.match(stripped)
        if h:
            name = h.group(1)
            if name not in SECTIONS:
                raise ProblemError(f"unknown section [{name}]", lineno, 1)
            if name in raw:
                raise ProblemError(f"repeated section [{name}]", lineno, 1)
            raw[name] = []
            header_line[name] = lineno
            current = name
            continue
        if current is None:
            s = _SETTING.match(stripped)
            if not s:
                raise ProblemError("expected 'key = value' before the first section", lineno, 1)
            key = s.group(1)
            if key not in ("ring", "vars", "order", "max_passes"):
                raise ProblemError(f"unknown setting {key!r}", lineno, 1)
            if key in settings:
                raise ProblemError(f"repeated setting {key!r}", lineno, 1)
            settings[key] = (s.group(2).strip(), lineno)
            continue
        offset = len(body) - len(body.lstrip())
        raw[current].append((stripped, lineno, offset))

    if "vars" not in settings:
        raise ProblemError("missing 'vars = ...' setting")
    value, ln = settings["vars"]
    names = [v.strip() for v in value.split(",")]
    for v in names:
        if not _NAME.match(v):
            raise ProblemError(f"bad variable name {v!r}", ln)
    if len(set(names)) != len(names):
        raise ProblemError("variable names must be distinct", ln)
    domain = Domain.ZZ
    if "ring" in settings:
        value, ln = settings["ring"]
        try:
            domain = Domain.parse(value)
        except ValueError as e:
            raise ProblemError(str(e), ln) from None
    order = "deglex"
    if "order" in settings:
        order, ln = settings["order"]
        if order not in ORDER_KINDS:
            raise ProblemError(f"unknown order {order!r} (expected lex, deglex or degrevlex)", ln)
    max_passes = None
    if "max_passes" in settings:
        value, ln = settings["max_passes"]
        if not value.isdigit() or int(value) < 1:
            raise ProblemError("max_passes must be a positive integer", ln)
        max_passes = int(value)

    ring = PolyRing.make(names, order, domain)
    if ("G" in raw or "H" in raw) and "F" not in raw:
        raise ProblemError("[G] and [H] need an [F] section")
    sections = {}
    for name in SECTIONS:
        if name not in raw:
            continue
        if not raw[name]:
            raise ProblemError("empty generator section", header_line[name], 1)
        sections[name] = [parse_polynomial(t, ring, ln, off) for t, ln, off in raw[name]]
    return ProblemFile(ring, sections, max_passes)

"""Parser for element expressions, matrix literals and infinite-path literals.

Element grammar::

    expr    := ["-"] term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := "-" factor | postfix
    postfix := primary ("'" | "^" INT)*
    primary := INT ["/" INT] | NAME ["(" expr ")"] | "(" expr ")"

Names resolve to vertices and edges first, then to caller bindings. A bound
callable applied as ``name(expr)`` is how scripts apply endomorphisms. An
integer or fraction literal ``k`` stands for ``k`` times the unit (the sum of
all vertices, or the corner vertex inside matrix literals).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element
from .graph import Graph

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_\-]*[A-Za-z0-9_]|[A-Za-z])|(?P<sym>[-+*^'()/\[\],;:]))")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None, src: str | None = None):
        self.pos = pos
        self.src = src
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(msg + where)


@dataclass
class Tok:
    kind: str
    text: str
    pos: int


def tokenize(src: str, allow_dash_names: bool = False) -> list[Tok]:
    toks = []
    i = 0
    n = len(src)
    while i < n:
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {src[i]!r}", i, src)
        kind = m.lastgroup
        text = m.group(kind)
        start = m.start(kind)
        if kind == "name" and "-" in text and not allow_dash_names:
            # plain expressions never contain dashed names: split at the first dash
            text = text.split("-", 1)[0]
            toks.append(Tok(kind, text, start))
            i = start + len(text)
            continue
        toks.append(Tok(kind, text, start))
        i = m.end()
    toks.append(Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, src: str, g: Graph, env: dict | None, unit: Element | None):
        self.src = src
        self.g = g
        self.env = env or {}
        self.unit = unit if unit is not None else Element.one(g)
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Tok | None = None):
        t = tok or self.tok
        raise ParseError(msg, t.pos, self.src)

    def take(self, text: str | None = None, kind: str | None = None) -> Tok:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "end" else "end of input"
            self.error(f"expected {want}, found {got}")
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "sym" and self.tok.text == text

    def parse(self) -> Element:
        if self.tok.kind == "end":
            self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Element:
        acc = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Element:
        acc = self.factor()
        while self.at("*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Element:
        if self.at("-"):
            self.take()
            return -self.factor()
        return self.postfix()

    def postfix(self) -> Element:
        val = self.primary()
        while True:
            if self.at("'"):
                self.take()
                val = val.star()
            elif self.at("^"):
                self.take()
                t = self.take(kind="num")
                val = val ** int(t.text)
            else:
                return val

    def primary(self) -> Element:
        t = self.tok
        if t.kind == "num":
            self.take()
            c = Fraction(int(t.text))
            if self.at("/"):
                self.take()
                d = self.take(kind="num")
                if int(d.text) == 0:
                    self.error("zero denominator", d)
                c = c / int(d.text)
            return self.unit.scale(c)
        if t.kind == "name":
            self.take()
            return self.resolve(t)
        if self.at("("):
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if t.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {t.text!r}")

    def resolve(self, t: Tok) -> Element:
        g = self.g
        name = t.text
        if self.at("("):
            fn = self.env.get(name)
            if not callable(fn):
                self.error(f"{name!r} is not a bound map", t)
            self.take()
            arg = self.expr()
            self.take(")")
            return fn(arg)
        if name in g.vindex:
            return Element.vertex(g, name)
        if name in g.eindex:
            return Element.edge(g, name)
        if name in self.env:
            val = self.env[name]
            if isinstance(val, Element):
                return val
            self.error(f"{name!r} is not an element", t)
        self.error(f"unknown name {name!r}", t)


def parse_element(src: str, g: Graph, env: dict | None = None, unit: Element | None = None) -> Element:
    """Parse an element expression over ``g`` into normal form."""
    return _Parser(src, g, env, unit).parse()


def split_matrix(src: str) -> list[list[str]]:
    """Split ``[a, b; c, d]`` into entry source strings (top-level separators only)."""
    s = src.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("a matrix literal is enclosed in [ ]", 0, src)
    body = s[1:-1]
    offset = src.index("[") + 1
    rows, row, depth, start = [], [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", offset + i, src)
        elif depth == 0 and ch in ",;":
            row.append(body[start:i])
            start = i + 1
            if ch == ";":
                rows.append(row)
                row = []
    row.append(body[start:])
    rows.append(row)
    rows = [[c.strip() for c in r] for r in rows]
    if any(c == "" for r in rows for c in r):
        raise ParseError("empty matrix entry", None, src)
    if len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows have different lengths", None, src)
    return rows


def parse_matrix(src: str, g: Graph, w: str | int | None = None, env: dict | None = None) -> list[list[Element]]:
    """Parse a matrix literal; scalar literals mean multiples of the corner vertex ``w``."""
    if w is None:
        if g.num_vertices != 1:
            raise ParseError("matrix literals over graphs with several vertices need a corner vertex")
        w = 0
    unit = Element.vertex(g, w)
    rows = split_matrix(src)
    out = []
    for r in rows:
        out.append([parse_element(c, g, env, unit) for c in r])
    return out


@dataclass(frozen=True)
class PathLiteral:
    """Unresolved infinite-path literal: a finite prefix followed by a tail."""

    prefix: tuple
    cycle: tuple = ()
    oracle: str | None = None
    letters: tuple = ()


def parse_path_literal(src: str) -> PathLiteral:
    """Parse ``e2 (e1 e2)^inf`` or ``e2 oracle:thue-morse[e1,e2]``."""
    toks = tokenize(src, allow_dash_names=True)
    i = 0
    prefix = []

    def err(msg, t):
        raise ParseError(msg, t.pos, src)

    while toks[i].kind == "name" and toks[i].text != "oracle":
        prefix.append(toks[i].text)
        i += 1
    t = toks[i]
    if t.kind == "name" and t.text == "oracle":
        i += 1
        if toks[i].text != ":":
            err("expected ':' after 'oracle'", toks[i])
        i += 1
        if toks[i].kind != "name":
            err("expected an oracle name", toks[i])
        name = toks[i].text
        i += 1
        letters = []
        if toks[i].text == "[":
            i += 1
            while True:
                if toks[i].kind != "name":
                    err("expected an edge name", toks[i])
                letters.append(toks[i].text)
                i += 1
                if toks[i].text == ",":
                    i += 1
                    continue
                if toks[i].text != "]":
                    err("expected ']'", toks[i])
                i += 1
                break
        if toks[i].kind != "end":
            err("unexpected trailing input", toks[i])
        return PathLiteral(tuple(prefix), (), name, tuple(letters))
    if t.text != "(":
        err("expected '(' opening the repeated cycle", t)
    i += 1
    cycle = []
    while toks[i].kind == "name":
        cycle.append(toks[i].text)
        i += 1
    if not cycle:
        err("empty cycle", toks[i])
    if toks[i].text != ")":
        err("expected ')'", toks[i])
    i += 1
    if toks[i].text != "^" or toks[i + 1].text != "inf":
        err("expected '^inf'", toks[i])
    i += 2
    if toks[i].kind != "end":
        err("unexpected trailing input", toks[i])
    return PathLiteral(tuple(prefix), tuple(cycle))

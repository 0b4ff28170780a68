"""A small expression language for graphs.

Grammar (whitespace between tokens is ignored)::

    expr    := GEN | comp | line | union | cycles | msub | djoin
    GEN     := ("C" | "K" | "E") INT          e.g. C4, K 5
    comp    := "comp" "(" expr ")"
    line    := "line" "(" expr ")"
    union   := "union" "(" expr ("," expr)* ")"
    cycles  := "cycles" "(" INT ("," INT)* ")"
    msub    := "msub" "(" expr (";" option)* ")"
    option  := ("h1" | "h2") "=" IDENT
    djoin   := "djoin" "(" msub "," expr "," expr ")"

Each production is chosen by its first token, so one token of lookahead
suffices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import ParseError
from .graph import (
    Graph,
    complement,
    disjoint_union,
    line_graph,
    make_complete,
    make_cycle,
    make_empty,
)
from .transforms import (
    BlockedGraph,
    H1Kind,
    H2Kind,
    MergedSubdivision,
    double_join,
    merged_subdivision,
)


@dataclass(frozen=True)
class Gen:
    kind: str  # "C", "K" or "E"
    n: int


@dataclass(frozen=True)
class Comp:
    arg: "Expr"


@dataclass(frozen=True)
class Line:
    arg: "Expr"


@dataclass(frozen=True)
class Union_:
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class Cycles:
    sizes: tuple[int, ...]


@dataclass(frozen=True)
class MSub:
    base: "Expr"
    h1: H1Kind = H1Kind.EMPTY
    h2: H2Kind = H2Kind.EMPTY


@dataclass(frozen=True)
class DJoin:
    core: MSub
    g1: "Expr"
    g2: "Expr"


Expr = Union[Gen, Comp, Line, Union_, Cycles, MSub, DJoin]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),;=]))")
_GEN = re.compile(r"^([CKE])(\d+)$")
_KEYWORDS = ("comp", "line", "union", "cycles", "msub", "djoin")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "punct" or "eof"
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    raw = text.encode("utf-8")
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            offset = len(text[:pos].encode("utf-8"))
            raise ParseError(f"unexpected character {text[pos]!r}", offset)
        kind = mt.lastgroup
        start = mt.start(kind)
        tokens.append(Token(kind, mt.group(kind), len(text[:start].encode("utf-8"))))
        pos = mt.end()
    tokens.append(Token("eof", "", len(raw)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, expected) -> ParseError:
        tok = self.tok
        what = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"unexpected {what}", tok.offset, expected)

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "eof":
            raise self.fail([repr(text)])
        tok = self.tok
        self.i += 1
        return tok

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.fail(["integer"])
        value = int(self.tok.text)
        self.i += 1
        return value

    def expr(self) -> Expr:
        tok = self.tok
        first = ["C<n>", "K<n>", "E<n>", *_KEYWORDS]
        if tok.kind != "ident":
            raise self.fail(first)
        gen = _GEN.match(tok.text)
        if gen:
            self.i += 1
            return Gen(gen.group(1), int(gen.group(2)))
        if tok.text in ("C", "K", "E"):
            self.i += 1
            return Gen(tok.text, self.integer())
        if tok.text not in _KEYWORDS:
            raise self.fail(first)
        self.i += 1
        return getattr(self, "_" + tok.text)()

    def _comp(self):
        self.expect("(")
        arg = self.expr()
        self.expect(")")
        return Comp(arg)

    def _line(self):
        self.expect("(")
        arg = self.expr()
        self.expect(")")
        return Line(arg)

    def _union(self):
        self.expect("(")
        args = [self.expr()]
        while self.tok.text == ",":
            self.i += 1
            args.append(self.expr())
        self.expect(")")
        return Union_(tuple(args))

    def _cycles(self):
        self.expect("(")
        sizes = [self.integer()]
        while self.tok.text == ",":
            self.i += 1
            sizes.append(self.integer())
        self.expect(")")
        return Cycles(tuple(sizes))

    def _msub(self):
        self.expect("(")
        base = self.expr()
        opts = {}
        while self.tok.text == ";":
            self.i += 1
            key = self.tok
            if key.kind != "ident" or key.text not in ("h1", "h2"):
                raise self.fail(["h1", "h2"])
            if key.text in opts:
                raise ParseError(f"option {key.text} given twice", key.offset)
            self.i += 1
            self.expect("=")
            val = self.tok
            enum = H1Kind if key.text == "h1" else H2Kind
            choices = [k.value for k in enum]
            if val.kind != "ident" or val.text not in choices:
                raise self.fail(choices)
            self.i += 1
            opts[key.text] = enum(val.text)
        if self.tok.text != ")":
            raise self.fail(["';'", "')'"])
        self.i += 1
        return MSub(base, opts.get("h1", H1Kind.EMPTY), opts.get("h2", H2Kind.EMPTY))

    def _djoin(self):
        self.expect("(")
        if not (self.tok.kind == "ident" and self.tok.text == "msub"):
            raise self.fail(["msub"])
        core = self.expr()
        self.expect(",")
        g1 = self.expr()
        self.expect(",")
        g2 = self.expr()
        self.expect(")")
        return DJoin(core, g1, g2)


def parse(text: str) -> Expr:
    p = _Parser(text)
    tree = p.expr()
    if p.tok.kind != "eof":
        raise p.fail(["end of input"])
    return tree


def pretty(e: Expr) -> str:
    """Canonical text for an expression; ``parse(pretty(e)) == e``."""
    if isinstance(e, Gen):
        return f"{e.kind}{e.n}"
    if isinstance(e, Comp):
        return f"comp({pretty(e.arg)})"
    if isinstance(e, Line):
        return f"line({pretty(e.arg)})"
    if isinstance(e, Union_):
        return "union(" + ", ".join(pretty(a) for a in e.args) + ")"
    if isinstance(e, Cycles):
        return "cycles(" + ", ".join(map(str, e.sizes)) + ")"
    if isinstance(e, MSub):
        return f"msub({pretty(e.base)}; h1={e.h1.value}; h2={e.h2.value})"
    if isinstance(e, DJoin):
        return f"djoin({pretty(e.core)}, {pretty(e.g1)}, {pretty(e.g2)})"
    raise TypeError(f"not an expression: {e!r}")


def evaluate(e: Expr) -> Graph | MergedSubdivision | BlockedGraph:
    if isinstance(e, Gen):
        return {"C": make_cycle, "K": make_complete, "E": make_empty}[e.kind](e.n)
    if isinstance(e, Comp):
        return complement(evaluate_graph(e.arg))
    if isinstance(e, Line):
        return line_graph(evaluate_graph(e.arg))
    if isinstance(e, Union_):
        return disjoint_union([evaluate_graph(a) for a in e.args])
    if isinstance(e, Cycles):
        return disjoint_union([make_cycle(k) for k in e.sizes])
    if isinstance(e, MSub):
        return merged_subdivision(evaluate_graph(e.base), e.h1, e.h2)
    if isinstance(e, DJoin):
        return double_join(evaluate(e.core), evaluate_graph(e.g1), evaluate_graph(e.g2))
    raise TypeError(f"not an expression: {e!r}")


def as_graph(obj) -> Graph:
    return obj if isinstance(obj, Graph) else obj.graph


def evaluate_graph(e: Expr) -> Graph:
    return as_graph(evaluate(e))

"""Recursive-descent parser for ``.qid`` identity catalogs.

    catalog  := identity*
    identity := 'identity' (STRING | NAME) option* '{' 'lhs' '=' expr [';'] 'rhs' '=' expr [';'] '}'
    option   := 'order' INT | 'ring' NAME ('-' NAME)* | 'tags' STRING (',' STRING)*
    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := primary ['^' ('-' primary | primary)]
    primary  := INT | NAME | 'inf' | '(' expr ')' | call | sum | subst
    sum      := 'sum' '(' NAME '>=' INT (',' NAME '>=' INT)* ';' expr ')'
    subst    := 'subst' '(' expr ',' NAME '->' expr ')'
    call     := NAME '(' [group (';' group)*] ')'      group := expr (',' expr)*

``#`` starts a comment running to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError, UndeclaredVariable
from .ast import (BUILTIN_VARS, FUNCTIONS, BinOp, Call, Expr, IdentityEntry, Inf, Neg, Num, Pow,
                  Subst, Sum, Var)

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<string>"[^"\n]*")
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|>=|[-+*/^(){};,=])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.scope: list[str] = []

    # --- token helpers --------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("op", "name")

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text: str, opener: Token | None = None) -> Token:
        if not self.at(text):
            if opener is not None:
                raise self.error(f"unclosed '{opener.text}' (expected '{text}', found "
                                 f"{self.tok.text or 'end of input'!r})", opener)
            raise self.error(f"expected '{text}', found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def expect_kind(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.error(f"expected {kind}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    # --- catalog --------------------------------------------------------

    def catalog(self) -> list[IdentityEntry]:
        entries = []
        while self.tok.kind != "eof":
            entries.append(self.identity())
        return entries

    def identity(self) -> IdentityEntry:
        start = self.expect("identity")
        if self.tok.kind == "string":
            name = self.advance().text[1:-1]
        else:
            name = self.expect_kind("name").text
        order = ring = None
        tags: list[str] = []
        while not self.at("{"):
            if self.at("order"):
                self.advance()
                order = int(self.expect_kind("int").text)
            elif self.at("ring"):
                self.advance()
                ring = self.expect_kind("name").text
                while self.at("-"):
                    self.advance()
                    ring += "-" + self.expect_kind("name").text
            elif self.at("tags"):
                self.advance()
                tags.append(self.expect_kind("string").text[1:-1])
                while self.at(","):
                    self.advance()
                    tags.append(self.expect_kind("string").text[1:-1])
            else:
                raise self.error(f"unexpected {self.tok.text!r} in identity header")
        brace = self.expect("{")
        self.expect("lhs")
        self.expect("=")
        lhs = self.expr()
        if self.at(";"):
            self.advance()
        self.expect("rhs")
        self.expect("=")
        rhs = self.expr()
        if self.at(";"):
            self.advance()
        self.expect("}", brace)
        return IdentityEntry(name, lhs, rhs, order, ring, tuple(tags), line=start.line)

    # --- expressions ----------------------------------------------------

    def expr(self) -> Expr:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.at("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.at("^"):
            self.advance()
            if self.at("-"):
                self.advance()
                return Pow(base, Neg(self.primary()))
            return Pow(base, self.primary())
        return base

    def primary(self) -> Expr:
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return Num(int(tok.text))
        if self.at("("):
            opener = self.advance()
            node = self.expr()
            self.expect(")", opener)
            return node
        if tok.kind == "name":
            if tok.text == "inf":
                self.advance()
                return Inf()
            if tok.text == "sum":
                return self.sum_expr()
            if tok.text == "subst":
                return self.subst_expr()
            if self.tokens[self.i + 1].text == "(":
                return self.call()
            self.advance()
            if tok.text in BUILTIN_VARS or tok.text in self.scope:
                return Var(tok.text)
            raise UndeclaredVariable(f"undeclared variable {tok.text!r} at line {tok.line}, column {tok.col}")
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def call(self) -> Expr:
        name_tok = self.advance()
        if name_tok.text not in FUNCTIONS:
            raise self.error(f"unknown function {name_tok.text!r}", name_tok)
        opener = self.expect("(")
        groups = []
        if not self.at(")"):
            while True:
                group = [self.expr()]
                while self.at(","):
                    self.advance()
                    group.append(self.expr())
                groups.append(tuple(group))
                if not self.at(";"):
                    break
                self.advance()
        self.expect(")", opener)
        return Call(name_tok.text, tuple(groups))

    def sum_expr(self) -> Expr:
        self.advance()
        opener = self.expect("(")
        binders = []
        while True:
            name = self.expect_kind("name").text
            self.expect(">=")
            neg = False
            if self.at("-"):
                self.advance()
                neg = True
            lo = int(self.expect_kind("int").text)
            binders.append((name, -lo if neg else lo))
            if not self.at(","):
                break
            self.advance()
        self.expect(";")
        names = [n for n, _ in binders]
        self.scope.extend(names)
        try:
            body = self.expr()
        finally:
            del self.scope[len(self.scope) - len(names):]
        self.expect(")", opener)
        return Sum(tuple(binders), body)

    def subst_expr(self) -> Expr:
        self.advance()
        opener = self.expect("(")
        body = self.expr()
        self.expect(",")
        var = self.expect_kind("name").text
        if var not in ("q", "a", "z"):
            raise self.error(f"cannot substitute for {var!r}")
        self.expect("->")
        rep = self.expr()
        self.expect(")", opener)
        return Subst(body, var, rep)


def parse_expr(text: str) -> Expr:
    p = Parser(text)
    node = p.expr()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after expression")
    return node


def parse(text: str, check_rings: bool = True) -> list[IdentityEntry]:
    """Parse a catalog; with ``check_rings`` every entry's coefficient ring is inferred."""
    entries = Parser(text).catalog()
    if check_rings:
        from .lower import infer_ring
        for entry in entries:
            infer_ring(entry)
    return entries


def parse_file(path) -> list[IdentityEntry]:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())

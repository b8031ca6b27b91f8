"""Recursive-descent parser for the ASCII formula syntax.

Grammar (loosest binding first)::

    formula := quant | iff
    quant   := ("forall" | "exists") var "." formula
    iff     := imp ("<->" imp)*
    imp     := or ("->" imp)?            (right associative)
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "!" unary | quant | atom | "(" formula ")"
    atom    := "E(" var "," var ")" | var "=" var | "L[" label "](" var ")"
             | "true" | "false"

``<->`` is taken left-associative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .formula import (
    FALSE, TRUE, And, Edge, Eq, Exists, Forall, Formula, Iff, Implies, Label, Not, Or,
)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<label>L\[(?P<lname>[^\]\s]+)\])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[()!&|=.,])
""", re.VERBOSE)

_KEYWORDS = {"forall", "exists", "true", "false"}


def _tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            line, col = _line_col(text, pos)
            raise FormulaSyntaxError(f"unknown token {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "lname":
            kind = "label"
        if kind == "label":
            tokens.append(Token("label", m.group("lname"), pos))
        elif kind == "ident":
            word = m.group()
            tokens.append(Token(word if word in _KEYWORDS else "ident", word, pos))
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), pos))
        elif kind in ("iff", "imp"):
            tokens.append(Token(m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        line, col = _line_col(self.text, tok.pos)
        found = tok.text or "end of input"
        raise FormulaSyntaxError(f"{message}, found {found!r}", line, col)

    def expect(self, kind: str) -> Token:
        tok = self.tok
        if tok.kind != kind:
            self.error(f"expected {kind!r}")
        self.i += 1
        return tok

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    def parse(self) -> Formula:
        f = self.formula()
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")
        return f

    def formula(self) -> Formula:
        if self.tok.kind in ("forall", "exists"):
            return self.quant()
        return self.iff()

    def quant(self) -> Formula:
        kind = self.tok.kind
        self.i += 1
        var = self.expect("ident").text
        self.expect(".")
        body = self.formula()
        return Forall(var, body) if kind == "forall" else Exists(var, body)

    def iff(self) -> Formula:
        left = self.imp()
        while self.accept("<->"):
            left = Iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.accept("->"):
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.accept("|"):
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.accept("&"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.tok
        if self.accept("!"):
            return Not(self.unary())
        if tok.kind in ("forall", "exists"):
            return self.quant()
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        if self.accept("true"):
            return TRUE
        if self.accept("false"):
            return FALSE
        if tok.kind == "label":
            self.i += 1
            self.expect("(")
            var = self.expect("ident").text
            self.expect(")")
            return Label(tok.text, var)
        if tok.kind == "ident":
            if tok.text == "E" and self.tokens[self.i + 1].kind == "(":
                self.i += 2
                x = self.expect("ident").text
                self.expect(",")
                y = self.expect("ident").text
                self.expect(")")
                return Edge(x, y)
            self.i += 1
            self.expect("=")
            y = self.expect("ident").text
            return Eq(tok.text, y)
        self.error("expected a formula")


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()


def load_formula(path: str | Path) -> Formula:
    return parse_formula(Path(path).read_text(encoding="utf-8"))

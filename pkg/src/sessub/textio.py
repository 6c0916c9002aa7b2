"""Concrete text grammar: tokenizer, recursive-descent parser, printer.

Grammar (whitespace-insensitive, "#" line comments):

    T ::= "end" | IDENT | "rec" IDENT "." T
        | "?" "[" T ("," T)* "]" "." T
        | "!" "[" T ("," T)* "]" "." T
        | "+" "{" LABEL ":" T ("," LABEL ":" T)* "}"
        | "&" "{" LABEL ":" T ("," LABEL ":" T)* "}"
        | "(" T ")"

"." is right-associative: a continuation or rec body extends maximally.
Parsing accepts duplicate labels and non-contractive terms; those are
rejected later by syntax.validate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .syntax import (
    Branch,
    End,
    Input,
    Output,
    Rec,
    Select,
    SessionType,
    Var,
)

KEYWORDS = ("end", "rec")
PUNCT = "?![],.{}()+&:"


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "end", "rec", a punctuation character, or "eof"
    text: str
    span: SourceSpan


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, expected: Tuple[str, ...]):
        self.span = span
        self.expected = expected
        want = ", ".join(expected)
        super().__init__(f"{message} at line {span.line}, column {span.column} (expected: {want})")


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[?!\[\],.{}()+&:])"
)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    line = 1
    col = 1

    def advance(lexeme: str) -> None:
        nonlocal line, col
        nl = lexeme.count("\n")
        if nl:
            line += nl
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)

    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            span = SourceSpan(pos, pos + 1, line, col)
            raise ParseError(f"unexpected character {text[pos]!r}", span, ("token",))
        lexeme = m.group(0)
        span = SourceSpan(pos, m.end(), line, col)
        if m.lastgroup == "ident":
            kind = lexeme if lexeme in KEYWORDS else "ident"
            tokens.append(Token(kind, lexeme, span))
        elif m.lastgroup == "punct":
            tokens.append(Token(lexeme, lexeme, span))
        advance(lexeme)
        pos = m.end()
    tokens.append(Token("eof", "", SourceSpan(pos, pos, line, col)))
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.span, (kind,))
        return self.next()

    def parse_type(self) -> SessionType:
        tok = self.peek()
        if tok.kind == "end":
            self.next()
            return End()
        if tok.kind == "ident":
            self.next()
            return Var(tok.text)
        if tok.kind == "rec":
            self.next()
            binder = self.expect("ident").text
            self.expect(".")
            return Rec(binder, self.parse_type())
        if tok.kind in ("?", "!"):
            self.next()
            self.expect("[")
            payloads = [self.parse_type()]
            while self.peek().kind == ",":
                self.next()
                payloads.append(self.parse_type())
            self.expect("]")
            self.expect(".")
            cont = self.parse_type()
            cls = Input if tok.kind == "?" else Output
            return cls(tuple(payloads), cont)
        if tok.kind in ("+", "&"):
            self.next()
            self.expect("{")
            alts = [self.parse_alt()]
            while self.peek().kind == ",":
                self.next()
                alts.append(self.parse_alt())
            self.expect("}")
            cls = Select if tok.kind == "+" else Branch
            return cls(tuple(alts))
        if tok.kind == "(":
            self.next()
            inner = self.parse_type()
            self.expect(")")
            return inner
        raise ParseError(
            f"unexpected {tok.text or 'end of input'!r}",
            tok.span,
            ("end", "ident", "rec", "?", "!", "+", "&", "("),
        )

    def parse_alt(self) -> Tuple[str, SessionType]:
        label = self.expect("ident").text
        self.expect(":")
        return label, self.parse_type()


def parse(text: str) -> SessionType:
    parser = _Parser(tokenize(text))
    t = parser.parse_type()
    parser.expect("eof")
    return t


def print_type(t: SessionType) -> str:
    """Grammar-conformant text; the grammar is prefix-delimited so no
    parentheses are ever required."""
    if isinstance(t, End):
        return "end"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Rec):
        return f"rec {t.binder}. {print_type(t.body)}"
    if isinstance(t, (Input, Output)):
        head = "?" if isinstance(t, Input) else "!"
        inner = ", ".join(print_type(p) for p in t.payloads)
        return f"{head}[{inner}].{print_type(t.cont)}"
    if isinstance(t, (Select, Branch)):
        head = "+" if isinstance(t, Select) else "&"
        inner = ", ".join(f"{l}: {print_type(v)}" for l, v in t.alts)
        return f"{head}{{{inner}}}"
    raise TypeError(f"not a session type: {t!r}")


def encode_judgement(j) -> Dict:
    """Deterministic record for a judgement: sorted sigma entries plus goal."""
    entries = sorted(
        ({"lhs": print_type(c.lhs), "rhs": print_type(c.rhs)} for c in j.sigma),
        key=lambda e: (e["lhs"], e["rhs"]),
    )
    return {
        "sigma": entries,
        "goal": {"lhs": print_type(j.goal.lhs), "rhs": print_type(j.goal.rhs)},
    }

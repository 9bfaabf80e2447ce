"""MiniC tokenizer.

``//@ <kind> ... ;`` line comments become a single annotation token whose
value holds the tokens of the predicate.  Other comments are dropped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Tuple

from ..kernel_services.ast import Location
from ..kernel_services.errors import IllegalCharacter, MiniSyntaxError

KEYWORDS = {"int": "kw_int", "if": "kw_if", "else": "kw_else",
            "while": "kw_while", "return": "kw_return"}
ANNOTATION_KINDS = ("assert", "requires", "ensures")

PUNCTUATION = {
    ";": "semi", ",": "comma", "(": "lparen", ")": "rparen",
    "{": "lbrace", "}": "rbrace", "[": "lbracket", "]": "rbracket",
}
OPERATORS = ("<=", ">=", "==", "!=", "&&", "||",
             "+", "-", "*", "/", "%", "<", ">", "!", "=", "&")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    loc: Location = field(compare=False)

    def __repr__(self) -> str:
        if self.kind in ("ident", "number", "op"):
            return f"{self.kind}({self.value})"
        if self.kind.startswith("annot_"):
            return f"{self.kind}({list(self.value)})"
        return self.kind


def tokenize(text: str, file: str = "<input>") -> List[Token]:
    return _Lexer(text, file).run()


class _Lexer:
    def __init__(self, text: str, file: str):
        self.text = text
        self.file = file
        self.pos = 0
        self.line = 1
        self.col = 1

    def loc(self) -> Location:
        return Location(self.file, self.line, self.col)

    def advance(self, n: int) -> None:
        for ch in self.text[self.pos:self.pos + n]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n

    def run(self) -> List[Token]:
        tokens: List[Token] = []
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch in " \t\r\n":
                self.advance(1)
            elif text.startswith("//@", self.pos):
                tokens.append(self.annotation())
            elif text.startswith("//", self.pos):
                end = text.find("\n", self.pos)
                self.advance((len(text) if end < 0 else end) - self.pos)
            elif text.startswith("/*", self.pos):
                end = text.find("*/", self.pos + 2)
                if end < 0:
                    raise MiniSyntaxError(self.loc(), ["*/"], "end of file")
                self.advance(end + 2 - self.pos)
            else:
                tokens.append(self.token(in_annotation=False))
        return tokens

    def token(self, in_annotation: bool) -> Token:
        text = self.text
        loc = self.loc()
        m = _IDENT.match(text, self.pos)
        if m:
            word = m.group()
            self.advance(len(word))
            if word in KEYWORDS:
                return Token(KEYWORDS[word], word, loc)
            return Token("ident", word, loc)
        m = _NUMBER.match(text, self.pos)
        if m:
            self.advance(len(m.group()))
            return Token("number", int(m.group()), loc)
        ch = text[self.pos]
        if ch in PUNCTUATION:
            self.advance(1)
            return Token(PUNCTUATION[ch], ch, loc)
        for op in OPERATORS:
            if text.startswith(op, self.pos):
                self.advance(len(op))
                return Token("op", op, loc)
        if in_annotation and text.startswith("\\result", self.pos):
            self.advance(len("\\result"))
            return Token("result", "\\result", loc)
        raise IllegalCharacter(loc, f"illegal character {ch!r}")

    def annotation(self) -> Token:
        loc = self.loc()
        self.advance(3)
        end = self.text.find("\n", self.pos)
        if end < 0:
            end = len(self.text)
        inner: List[Token] = []
        while self.pos < end:
            if self.text[self.pos] in " \t\r":
                self.advance(1)
            elif self.text.startswith("//", self.pos):
                self.advance(end - self.pos)
            else:
                inner.append(self.token(in_annotation=True))
        if not inner or inner[0].kind != "ident" or inner[0].value not in ANNOTATION_KINDS:
            where = inner[0].loc if inner else loc
            raise MiniSyntaxError(where, ["assert", "requires", "ensures"],
                                  repr(inner[0]) if inner else "end of line")
        if inner[-1].kind != "semi":
            raise MiniSyntaxError(inner[-1].loc, ["';' closing the annotation"], repr(inner[-1]))
        pred: Tuple[Token, ...] = tuple(inner[1:-1])
        return Token("annot_" + inner[0].value, pred, loc)

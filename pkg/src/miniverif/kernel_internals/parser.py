"""Recursive-descent MiniC parser.

Grammar::

    unit     := fundef*
    fundef   := contract* "int" ident "(" params? ")" "{" decl* stmt* "}"
    contract := "//@ requires" pred ";" | "//@ ensures" pred ";"
    params   := "int" ident ("," "int" ident)*
    decl     := "int" ident ";" | "int" ident "[" number "]" ";"
              | "int" "(" "*" ident ")" "(" ("int" ident? ("," "int" ident?)*)? ")" ";"
    stmt     := annot* (assign | if | while | return | call ";" | block)
    annot    := "//@ assert" pred ";"
    assign   := ident ("[" expr "]")? "=" expr ";" | ident "=" "&" ident ";"

Binary operators are left-associative; precedence from loosest to tightest
is ``||``, ``&&``, comparisons, ``+ -``, ``* / %``, unary ``- !``.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Set, Tuple

from ..kernel_services.ast import (
    INT, AddrOfFn, Annotation, ArrayAssign, ArrayRead, ArrayType, Assign,
    Binop, Block, Call, Decl, Expr, ExprStmt, FnPtrType, FunctionDef, If,
    IndirectCall, IntLit, Location, ResultRef, Return, Stmt, TranslationUnit,
    Unop, Var, While,
)
from ..kernel_services.errors import MiniSyntaxError
from .lexer import Token

BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("<", "<=", ">", ">=", "==", "!="),
    ("+", "-"),
    ("*", "/", "%"),
)


def _describe(tok: Optional[Token]) -> str:
    if tok is None:
        return "end of input"
    if tok.kind in ("ident", "number", "op"):
        return repr(str(tok.value))
    if tok.kind.startswith("annot_"):
        return "'//@ " + tok.kind[len("annot_"):] + "'"
    return repr(str(tok.value))


class Parser:
    def __init__(self, tokens: Sequence[Token], eof: Location, in_annotation: bool = False):
        self.tokens = list(tokens)
        self.pos = 0
        self.eof = eof
        self.in_annotation = in_annotation
        self.fnptrs: Set[str] = set()

    # -- token helpers ------------------------------------------------------

    def peek(self, offset: int = 0) -> Optional[Token]:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, kind: str, value: object = None, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind == kind and (value is None or tok.value == value)

    def here(self) -> Location:
        tok = self.peek()
        return tok.loc if tok is not None else self.eof

    def fail(self, *expected: str):
        raise MiniSyntaxError(self.here(), expected, _describe(self.peek()))

    def expect(self, kind: str, value: object = None, label: Optional[str] = None) -> Token:
        if not self.at(kind, value):
            self.fail(label or repr(value if value is not None else kind))
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    # -- top level ----------------------------------------------------------

    def unit(self) -> TranslationUnit:
        functions = []
        while self.peek() is not None:
            functions.append(self.fundef())
        return TranslationUnit(tuple(functions), loc=self.tokens[0].loc if self.tokens else self.eof)

    def fundef(self) -> FunctionDef:
        requires: List[Annotation] = []
        ensures: List[Annotation] = []
        while self.peek() is not None and self.peek().kind in ("annot_requires", "annot_ensures"):
            tok = self.tokens[self.pos]
            self.pos += 1
            annot = self.annotation(tok)
            (requires if annot.kind == "requires" else ensures).append(annot)
        if self.at("annot_assert"):
            self.fail("'//@ requires'", "'//@ ensures'", "'int'")
        start = self.expect("kw_int", label="'int'")
        name = self.expect("ident", label="function name").value
        self.expect("lparen", label="'('")
        params: List[Decl] = []
        if not self.at("rparen"):
            while True:
                ptok = self.expect("kw_int", label="'int'")
                pname = self.expect("ident", label="parameter name").value
                params.append(Decl(pname, INT, loc=ptok.loc))
                if not self.at("comma"):
                    break
                self.pos += 1
        self.expect("rparen", label="')'")
        self.expect("lbrace", label="'{'")
        self.fnptrs = set()
        locals_: List[Decl] = []
        while self.at("kw_int"):
            locals_.append(self.decl())
        body = self.stmts_until_rbrace()
        return FunctionDef(name, tuple(params), tuple(locals_), body,
                           tuple(requires), tuple(ensures), loc=start.loc)

    def decl(self) -> Decl:
        start = self.expect("kw_int")
        if self.at("lparen"):
            self.pos += 1
            self.expect("op", "*", "'*'")
            name = self.expect("ident", label="identifier").value
            self.expect("rparen", label="')'")
            self.expect("lparen", label="'('")
            arity = 0
            if not self.at("rparen"):
                while True:
                    self.expect("kw_int", label="'int'")
                    if self.at("ident"):
                        self.pos += 1
                    arity += 1
                    if not self.at("comma"):
                        break
                    self.pos += 1
            self.expect("rparen", label="')'")
            self.expect("semi", label="';'")
            self.fnptrs.add(name)
            return Decl(name, FnPtrType(arity), loc=start.loc)
        name = self.expect("ident", label="identifier").value
        if self.at("lbracket"):
            self.pos += 1
            size = self.expect("number", label="array size").value
            self.expect("rbracket", label="']'")
            self.expect("semi", label="';'")
            return Decl(name, ArrayType(size), loc=start.loc)
        self.expect("semi", label="';'")
        return Decl(name, INT, loc=start.loc)

    # -- statements ---------------------------------------------------------

    def stmts_until_rbrace(self) -> Tuple[Stmt, ...]:
        stmts: List[Stmt] = []
        while not self.at("rbrace"):
            if self.peek() is None:
                self.fail("'}'")
            stmts.append(self.stmt())
        self.pos += 1
        return tuple(stmts)

    def stmt(self) -> Stmt:
        asserts: List[Annotation] = []
        while self.at("annot_assert"):
            tok = self.tokens[self.pos]
            self.pos += 1
            asserts.append(self.annotation(tok))
        if asserts and (self.peek() is None or self.at("rbrace")):
            # an assert must be followed by the statement it is attached to
            self.fail("statement after '//@ assert'")
        if self.at("annot_requires") or self.at("annot_ensures"):
            self.fail("statement")
        if self.at("kw_int"):
            self.fail("statement (declarations only at the start of a function body)")
        stmt = self.core_stmt()
        if asserts:
            object.__setattr__(stmt, "asserts", tuple(asserts))
        return stmt

    def core_stmt(self) -> Stmt:
        tok = self.peek()
        if tok is None:
            self.fail("statement")
        loc = tok.loc
        if tok.kind == "lbrace":
            self.pos += 1
            return Block(self.stmts_until_rbrace(), loc=loc)
        if tok.kind == "kw_if":
            self.pos += 1
            self.expect("lparen", label="'('")
            cond = self.expr()
            self.expect("rparen", label="')'")
            then = self.stmt()
            orelse = None
            if self.at("kw_else"):
                self.pos += 1
                orelse = self.stmt()
            return If(cond, then, orelse, loc=loc)
        if tok.kind == "kw_while":
            self.pos += 1
            self.expect("lparen", label="'('")
            cond = self.expr()
            self.expect("rparen", label="')'")
            return While(cond, self.stmt(), loc=loc)
        if tok.kind == "kw_return":
            self.pos += 1
            value = self.expr()
            self.expect("semi", label="';'")
            return Return(value, loc=loc)
        if tok.kind == "ident":
            name = tok.value
            if self.at("lparen", offset=1):
                call = self.primary()
                self.expect("semi", label="';'")
                return ExprStmt(call, loc=loc)
            self.pos += 1
            if self.at("lbracket"):
                self.pos += 1
                index = self.expr()
                self.expect("rbracket", label="']'")
                self.expect("op", "=", "'='")
                value = self.expr()
                self.expect("semi", label="';'")
                return ArrayAssign(name, index, value, loc=loc)
            self.expect("op", "=", "'=' or '['")
            if self.at("op", "&"):
                amp = self.tokens[self.pos]
                self.pos += 1
                target = self.expect("ident", label="function name").value
                self.expect("semi", label="';'")
                return Assign(name, AddrOfFn(target, loc=amp.loc), loc=loc)
            value = self.expr()
            self.expect("semi", label="';'")
            return Assign(name, value, loc=loc)
        self.fail("statement")

    # -- annotations --------------------------------------------------------

    def annotation(self, tok: Token) -> Annotation:
        kind = tok.kind[len("annot_"):]
        inner = Parser(tok.value, tok.loc, in_annotation=True)
        inner.fnptrs = self.fnptrs
        if not tok.value:
            raise MiniSyntaxError(tok.loc, ["predicate"], "';'")
        pred = inner.expr()
        if inner.peek() is not None:
            inner.fail("';'")
        return Annotation(kind, pred, "source", loc=tok.loc)

    # -- expressions --------------------------------------------------------

    def expr(self, level: int = 0) -> Expr:
        if level == len(BINARY_LEVELS):
            return self.unary()
        ops = BINARY_LEVELS[level]
        left = self.expr(level + 1)
        while self.peek() is not None and self.peek().kind == "op" and self.peek().value in ops:
            op_tok = self.tokens[self.pos]
            self.pos += 1
            right = self.expr(level + 1)
            left = Binop(op_tok.value, left, right, loc=left.loc)
        return left

    def unary(self) -> Expr:
        if self.at("op", "-") or self.at("op", "!"):
            tok = self.tokens[self.pos]
            self.pos += 1
            return Unop(tok.value, self.unary(), loc=tok.loc)
        return self.primary()

    def primary(self) -> Expr:
        tok = self.peek()
        if tok is None:
            self.fail("expression")
        if tok.kind == "number":
            self.pos += 1
            return IntLit(tok.value, loc=tok.loc)
        if tok.kind == "result":
            self.pos += 1
            return ResultRef(loc=tok.loc)
        if tok.kind == "lparen":
            self.pos += 1
            inner = self.expr()
            self.expect("rparen", label="')'")
            return inner
        if tok.kind == "ident":
            self.pos += 1
            if self.at("lparen"):
                self.pos += 1
                args: List[Expr] = []
                if not self.at("rparen"):
                    while True:
                        args.append(self.expr())
                        if not self.at("comma"):
                            break
                        self.pos += 1
                self.expect("rparen", label="')'")
                cls = IndirectCall if tok.value in self.fnptrs else Call
                return cls(tok.value, tuple(args), loc=tok.loc)
            if self.at("lbracket"):
                self.pos += 1
                index = self.expr()
                self.expect("rbracket", label="']'")
                return ArrayRead(tok.value, index, loc=tok.loc)
            return Var(tok.value, loc=tok.loc)
        self.fail("expression")


def parse(tokens: Sequence[Token], file: str = "<input>") -> TranslationUnit:
    """Parse one file's tokens.  Node ids are left unassigned (-1)."""
    last = tokens[-1].loc if tokens else Location(file, 1, 1)
    return Parser(tokens, last).unit()

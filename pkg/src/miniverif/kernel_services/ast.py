"""Typed syntax tree of a MiniC translation unit.

Nodes are frozen dataclasses.  Source locations do not take part in
equality, so two parses of equivalent text compare equal even when the
layout differs.  Node ids are assigned once, in pre-order, by
:func:`number_nodes`; statement-level ``//@ assert`` annotations are
numbered just before the statement they are attached to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, Optional, Tuple, Union


@dataclass(frozen=True, order=True)
class Location:
    file: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


NOWHERE = Location("<generated>", 1, 1)


# -- types -------------------------------------------------------------------


@dataclass(frozen=True)
class IntType:
    def __str__(self) -> str:
        return "int"


@dataclass(frozen=True)
class BoolType:
    def __str__(self) -> str:
        return "bool"


@dataclass(frozen=True)
class ArrayType:
    size: int

    def __str__(self) -> str:
        return f"int[{self.size}]"


@dataclass(frozen=True)
class FnPtrType:
    arity: int

    def __str__(self) -> str:
        return "int (*)(" + ", ".join(["int"] * self.arity) + ")"


Type = Union[IntType, BoolType, ArrayType, FnPtrType]
INT = IntType()
BOOL = BoolType()


# -- nodes -------------------------------------------------------------------


@dataclass(frozen=True, kw_only=True)
class Node:
    loc: Location = field(default=NOWHERE, compare=False, repr=False)
    node_id: int = -1


class Expr(Node):
    pass


class Stmt(Node):
    pass


ARITH_OPS = ("+", "-", "*", "/", "%")
COMPARE_OPS = ("<", "<=", ">", ">=", "==", "!=")
LOGIC_OPS = ("&&", "||")
BINARY_OPS = ARITH_OPS + COMPARE_OPS + LOGIC_OPS


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class ResultRef(Expr):
    """``\\result`` inside an ensures clause."""


@dataclass(frozen=True)
class ArrayRead(Expr):
    name: str
    index: Expr


@dataclass(frozen=True)
class Binop(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Unop(Expr):
    op: str
    operand: Expr


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: Tuple[Expr, ...]


@dataclass(frozen=True)
class IndirectCall(Expr):
    """Call through the function-pointer variable ``name``."""

    name: str
    args: Tuple[Expr, ...]


@dataclass(frozen=True)
class AddrOfFn(Expr):
    name: str


@dataclass(frozen=True)
class Annotation(Node):
    """A mini-ACSL clause.

    ``kind`` is one of ``assert``, ``requires``, ``ensures``.  ``origin`` is
    ``"source"`` or the name of the plugin that generated it.
    """

    kind: str
    pred: Expr
    origin: str = "source"


@dataclass(frozen=True)
class Assign(Stmt):
    name: str
    value: Expr
    asserts: Tuple[Annotation, ...] = ()


@dataclass(frozen=True)
class ArrayAssign(Stmt):
    name: str
    index: Expr
    value: Expr
    asserts: Tuple[Annotation, ...] = ()


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    then: Stmt
    orelse: Optional[Stmt] = None
    asserts: Tuple[Annotation, ...] = ()


@dataclass(frozen=True)
class While(Stmt):
    cond: Expr
    body: Stmt
    asserts: Tuple[Annotation, ...] = ()


@dataclass(frozen=True)
class Return(Stmt):
    value: Expr
    asserts: Tuple[Annotation, ...] = ()


@dataclass(frozen=True)
class ExprStmt(Stmt):
    expr: Expr
    asserts: Tuple[Annotation, ...] = ()


@dataclass(frozen=True)
class Block(Stmt):
    stmts: Tuple[Stmt, ...]
    asserts: Tuple[Annotation, ...] = ()


@dataclass(frozen=True)
class Decl(Node):
    name: str
    type: Type


@dataclass(frozen=True)
class FunctionDef(Node):
    name: str
    params: Tuple[Decl, ...]
    locals: Tuple[Decl, ...]
    body: Tuple[Stmt, ...]
    requires: Tuple[Annotation, ...] = ()
    ensures: Tuple[Annotation, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class TranslationUnit(Node):
    functions: Tuple[FunctionDef, ...]

    def function(self, name: str) -> Optional[FunctionDef]:
        for f in self.functions:
            if f.name == name:
                return f
        return None


# -- traversal ---------------------------------------------------------------


def children(node: Node) -> Iterator[Node]:
    """Direct children in pre-order position (asserts precede their stmt)."""
    if isinstance(node, TranslationUnit):
        yield from node.functions
    elif isinstance(node, FunctionDef):
        yield from node.requires
        yield from node.ensures
        yield from node.params
        yield from node.locals
        for s in node.body:
            yield from s.asserts
            yield s
    elif isinstance(node, Annotation):
        yield node.pred
    elif isinstance(node, Block):
        for s in node.stmts:
            yield from s.asserts
            yield s
    elif isinstance(node, If):
        yield node.cond
        yield from node.then.asserts
        yield node.then
        if node.orelse is not None:
            yield from node.orelse.asserts
            yield node.orelse
    elif isinstance(node, While):
        yield node.cond
        yield from node.body.asserts
        yield node.body
    elif isinstance(node, Assign):
        yield node.value
    elif isinstance(node, ArrayAssign):
        yield node.index
        yield node.value
    elif isinstance(node, Return):
        yield node.value
    elif isinstance(node, ExprStmt):
        yield node.expr
    elif isinstance(node, ArrayRead):
        yield node.index
    elif isinstance(node, Binop):
        yield node.left
        yield node.right
    elif isinstance(node, Unop):
        yield node.operand
    elif isinstance(node, (Call, IndirectCall)):
        yield from node.args


def walk(node: Node) -> Iterator[Node]:
    """Pre-order traversal.  Does not descend into statement asserts twice."""
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(list(children(current))))


def number_nodes(unit: TranslationUnit) -> TranslationUnit:
    """Assign pre-order ids in place.  Only the front-end calls this."""
    for next_id, node in enumerate(walk(unit)):
        object.__setattr__(node, "node_id", next_id)
    return unit


def subexpressions(expr: Expr) -> Iterator[Expr]:
    for node in walk(expr):
        assert isinstance(node, Expr)
        yield node


def statement_exprs(stmt: Stmt) -> Tuple[Expr, ...]:
    """Expressions evaluated by the statement itself (not nested statements)."""
    if isinstance(stmt, Assign):
        return (stmt.value,)
    if isinstance(stmt, ArrayAssign):
        return (stmt.index, stmt.value)
    if isinstance(stmt, (If, While)):
        return (stmt.cond,)
    if isinstance(stmt, Return):
        return (stmt.value,)
    if isinstance(stmt, ExprStmt):
        return (stmt.expr,)
    return ()


def iter_statements(body) -> Iterator[Stmt]:
    """Every statement of a body, nested ones included, in source order."""
    for s in body:
        yield s
        if isinstance(s, Block):
            yield from iter_statements(s.stmts)
        elif isinstance(s, If):
            yield from iter_statements((s.then,))
            if s.orelse is not None:
                yield from iter_statements((s.orelse,))
        elif isinstance(s, While):
            yield from iter_statements((s.body,))


@dataclass
class NodeIndex:
    """Lookup tables over a numbered unit."""

    nodes: Dict[int, Node]
    enclosing_stmt: Dict[int, int]
    enclosing_function: Dict[int, str]

    @classmethod
    def build(cls, unit: TranslationUnit) -> "NodeIndex":
        nodes: Dict[int, Node] = {}
        enclosing_stmt: Dict[int, int] = {}
        enclosing_function: Dict[int, str] = {}
        for fn in unit.functions:
            for node in walk(fn):
                nodes[node.node_id] = node
                enclosing_function[node.node_id] = fn.name
            for stmt in iter_statements(fn.body):
                for annot in stmt.asserts:
                    for sub in subexpressions(annot.pred):
                        enclosing_stmt[sub.node_id] = stmt.node_id
                for expr in statement_exprs(stmt):
                    for sub in subexpressions(expr):
                        enclosing_stmt[sub.node_id] = stmt.node_id
        nodes[unit.node_id] = unit
        return cls(nodes, enclosing_stmt, enclosing_function)

    def __contains__(self, node_id: int) -> bool:
        return node_id in self.nodes

    def __getitem__(self, node_id: int) -> Node:
        return self.nodes[node_id]


@dataclass(frozen=True)
class TypedAst:
    """Output of the front-end: a numbered unit plus typing results."""

    unit: TranslationUnit
    types: Dict[int, Type]
    symbols: Dict[str, Dict[str, Type]]
    index: NodeIndex = field(compare=False, repr=False)

    @property
    def functions(self) -> Tuple[FunctionDef, ...]:
        return self.unit.functions

    def function(self, name: str) -> Optional[FunctionDef]:
        return self.unit.function(name)

    def type_of(self, expr: Expr) -> Type:
        return self.types[expr.node_id]

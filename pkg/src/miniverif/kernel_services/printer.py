"""Pretty-printer.  Its output re-parses to an equal AST."""

from __future__ import annotations

from typing import List

from .ast import (
    AddrOfFn, Annotation, ArrayAssign, ArrayRead, ArrayType, Assign, Binop,
    Block, Call, Decl, Expr, ExprStmt, FnPtrType, FunctionDef, If,
    IndirectCall, IntLit, ResultRef, Return, Stmt, TranslationUnit, Unop, Var,
    While,
)

PRECEDENCE = {
    "||": 1, "&&": 2,
    "<": 3, "<=": 3, ">": 3, ">=": 3, "==": 3, "!=": 3,
    "+": 4, "-": 4,
    "*": 5, "/": 5, "%": 5,
}
UNARY_PRECEDENCE = 6
ATOM_PRECEDENCE = 7


def _prec(expr: Expr) -> int:
    if isinstance(expr, Binop):
        return PRECEDENCE[expr.op]
    if isinstance(expr, Unop) or (isinstance(expr, IntLit) and expr.value < 0):
        return UNARY_PRECEDENCE
    return ATOM_PRECEDENCE


def print_expr(expr: Expr) -> str:
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, ResultRef):
        return "\\result"
    if isinstance(expr, ArrayRead):
        return f"{expr.name}[{print_expr(expr.index)}]"
    if isinstance(expr, (Call, IndirectCall)):
        return f"{expr.name}(" + ", ".join(print_expr(a) for a in expr.args) + ")"
    if isinstance(expr, AddrOfFn):
        return "&" + expr.name
    if isinstance(expr, Unop):
        inner = print_expr(expr.operand)
        if _prec(expr.operand) <= UNARY_PRECEDENCE:
            inner = f"({inner})"
        return expr.op + inner
    if isinstance(expr, Binop):
        p = PRECEDENCE[expr.op]
        left = print_expr(expr.left)
        right = print_expr(expr.right)
        if _prec(expr.left) < p:
            left = f"({left})"
        # operators are left-associative
        if _prec(expr.right) <= p:
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    raise TypeError(f"not an expression: {expr!r}")


def print_annotation(annot: Annotation) -> str:
    return f"//@ {annot.kind} {print_expr(annot.pred)};"


def _decl(d: Decl) -> str:
    if isinstance(d.type, ArrayType):
        return f"int {d.name}[{d.type.size}];"
    if isinstance(d.type, FnPtrType):
        return f"int (*{d.name})(" + ", ".join(["int"] * d.type.arity) + ");"
    return f"int {d.name};"


def _stmt(stmt: Stmt, indent: int, out: List[str]) -> None:
    pad = "  " * indent
    for a in stmt.asserts:
        out.append(pad + print_annotation(a))
    if isinstance(stmt, Assign):
        out.append(f"{pad}{stmt.name} = {print_expr(stmt.value)};")
    elif isinstance(stmt, ArrayAssign):
        out.append(f"{pad}{stmt.name}[{print_expr(stmt.index)}] = {print_expr(stmt.value)};")
    elif isinstance(stmt, Return):
        out.append(f"{pad}return {print_expr(stmt.value)};")
    elif isinstance(stmt, ExprStmt):
        out.append(f"{pad}{print_expr(stmt.expr)};")
    elif isinstance(stmt, Block):
        out.append(pad + "{")
        for s in stmt.stmts:
            _stmt(s, indent + 1, out)
        out.append(pad + "}")
    elif isinstance(stmt, If):
        out.append(f"{pad}if ({print_expr(stmt.cond)})")
        _stmt(stmt.then, indent + 1, out)
        if stmt.orelse is not None:
            out.append(pad + "else")
            _stmt(stmt.orelse, indent + 1, out)
    elif isinstance(stmt, While):
        out.append(f"{pad}while ({print_expr(stmt.cond)})")
        _stmt(stmt.body, indent + 1, out)
    else:
        raise TypeError(f"not a statement: {stmt!r}")


def print_function(fn: FunctionDef) -> str:
    out = [print_annotation(a) for a in fn.requires + fn.ensures]
    params = ", ".join(f"int {p.name}" for p in fn.params)
    out.append(f"int {fn.name}({params}) {{")
    out.extend("  " + _decl(d) for d in fn.locals)
    for s in fn.body:
        _stmt(s, 1, out)
    out.append("}")
    return "\n".join(out)


def print_unit(unit: TranslationUnit) -> str:
    return "\n\n".join(print_function(f) for f in unit.functions) + "\n"

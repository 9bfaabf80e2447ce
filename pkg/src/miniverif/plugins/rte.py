"""Runtime-error guard generation.

Generates one ``assert`` per potential runtime error and leaves the
proof to other analyzers: it only ever emits ``Maybe`` with no
hypotheses.
"""

from __future__ import annotations

from typing import Iterator, List, Tuple

from ..kernel_services.ast import (
    ArrayAssign, ArrayRead, ArrayType, Annotation, Binop, Expr, IntLit, Stmt,
    TypedAst, children, iter_statements, statement_exprs,
)
from ..kernel_services.context import KernelContext
from ..kernel_services.interval import signed_range
from ..kernel_services.parameters import PluginDescriptor, switch
from ..kernel_services.properties import ASSERTION, Local

NAME = "rte"
OVERFLOW_OPS = ("+", "-", "*")


def _div_guard(divisor: Expr) -> Expr:
    return Binop("!=", divisor, IntLit(0))


def _bounds_guard(index: Expr, size: int) -> Expr:
    return Binop("&&", Binop("<=", IntLit(0), index), Binop("<", index, IntLit(size)))


def _overflow_guard(expr: Expr, bits: int) -> Expr:
    r = signed_range(bits)
    return Binop("&&", Binop("<=", IntLit(r.lo), expr), Binop("<=", expr, IntLit(r.hi)))


def _expr_guards(expr: Expr, arrays, div: bool, bounds: bool, overflow: bool,
                 bits: int, under_arith: bool = False) -> Iterator[Expr]:
    if isinstance(expr, Binop):
        if div and expr.op in ("/", "%"):
            yield _div_guard(expr.right)
        if overflow and expr.op in OVERFLOW_OPS and not under_arith:
            yield _overflow_guard(expr, bits)
    elif isinstance(expr, ArrayRead) and bounds:
        yield _bounds_guard(expr.index, arrays[expr.name].size)
    arith = isinstance(expr, Binop) and expr.op in OVERFLOW_OPS
    for child in children(expr):
        yield from _expr_guards(child, arrays, div, bounds, overflow, bits, arith)


def generate_guards(ast: TypedAst, div: bool = True, bounds: bool = True,
                    overflow: bool = False, bits: int = 32) -> List[Tuple[Stmt, Expr]]:
    """All (statement, guard predicate) pairs, in source order."""
    guards = []
    for fn in ast.functions:
        arrays = {n: t for n, t in ast.symbols[fn.name].items() if isinstance(t, ArrayType)}
        for stmt in iter_statements(fn.body):
            if isinstance(stmt, ArrayAssign) and bounds:
                guards.append((stmt, _bounds_guard(stmt.index, arrays[stmt.name].size)))
            for expr in statement_exprs(stmt):
                for pred in _expr_guards(expr, arrays, div, bounds, overflow, bits):
                    guards.append((stmt, pred))
    return guards


def configure(ctx: KernelContext) -> None:
    if not any(ctx.switch(k) for k in ("-rte-div", "-rte-bounds", "-rte-overflow")):
        ctx.warning("every guard class is off; nothing will be generated")


def rte_main(ctx: KernelContext) -> None:
    guards = generate_guards(
        ctx.ast,
        div=ctx.switch("-rte-div"),
        bounds=ctx.switch("-rte-bounds"),
        overflow=ctx.switch("-rte-overflow"),
        bits=ctx.machdep,
    )
    before = len(ctx.properties)
    for stmt, pred in guards:
        annot = Annotation("assert", pred, NAME, loc=stmt.loc)
        pid = ctx.register_property(annot, ASSERTION, stmt.node_id)
        ctx.emit(pid, Local.MAYBE)
    ctx.info(f"{len(ctx.properties) - before} new guards ({len(guards)} sites)")


DESCRIPTOR = PluginDescriptor(
    name=NAME,
    main=rte_main,
    configure=configure,
    help="generate assertions guarding against runtime errors",
    parameters=(
        switch("-rte-div", True, "guard divisions and remainders by zero"),
        switch("-rte-bounds", True, "guard array accesses"),
        switch("-rte-overflow", False, "guard signed arithmetic overflow (width from -machdep)"),
    ),
)


def register(kernel) -> None:
    kernel.register_plugin(DESCRIPTOR)

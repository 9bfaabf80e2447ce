"""MiniC typechecker.  Collects every error before failing."""

from __future__ import annotations

from typing import Dict, List, Optional

from ..kernel_services.ast import (
    BOOL, INT, AddrOfFn, Annotation, ArrayAssign, ArrayRead, ArrayType,
    Assign, Binop, BoolType, Call, Expr, ExprStmt, FnPtrType, FunctionDef,
    If, IndirectCall, IntLit, IntType, NodeIndex, ResultRef, Return, Stmt,
    TranslationUnit, Type, TypedAst, Unop, Var, While, ARITH_OPS,
    COMPARE_OPS, iter_statements, subexpressions,
)
from ..kernel_services.errors import TypecheckFailure, TypeError_

_SCALAR = (IntType, BoolType)


class _Checker:
    def __init__(self, unit: TranslationUnit):
        self.unit = unit
        self.errors: List[TypeError_] = []
        self.types: Dict[int, Type] = {}
        self.symbols: Dict[str, Dict[str, Type]] = {}
        self.arities: Dict[str, int] = {}

    def error(self, kind: str, node, message: str) -> None:
        self.errors.append(TypeError_(kind, node.loc, message))

    def run(self) -> None:
        for fn in self.unit.functions:
            if fn.name in self.arities:
                self.error("DuplicateDefinition", fn, f"function {fn.name} already defined")
                continue
            self.arities[fn.name] = fn.arity
        for fn in self.unit.functions:
            self.function(fn)

    def function(self, fn: FunctionDef) -> None:
        scope: Dict[str, Type] = {}
        for d in fn.params + fn.locals:
            if d.name in scope:
                self.error("DuplicateDefinition", d, f"{d.name} already declared in {fn.name}")
            elif d.name in self.arities:
                self.error("DuplicateDefinition", d, f"{d.name} is already a function name")
            else:
                scope[d.name] = d.type
            if isinstance(d.type, ArrayType) and d.type.size <= 0:
                self.error("TypeMismatch", d, f"array {d.name} must have a positive size")
        self.symbols.setdefault(fn.name, scope)

        params = {p.name: p.type for p in fn.params}
        for annot in fn.requires:
            self.predicate(annot, params)
        assigned = {s.name for s in iter_statements(fn.body) if isinstance(s, Assign)}
        for annot in fn.ensures:
            self.predicate(annot, params)
            for node in _vars(annot.pred):
                if node.name in assigned:
                    self.error("TypeMismatch", node,
                               f"ensures refers to parameter {node.name}, which the body assigns")
        for stmt in fn.body:
            self.stmt(stmt, scope)

    def predicate(self, annot: Annotation, scope: Dict[str, Type]) -> None:
        t = self.expr(annot.pred, scope, annot.kind)
        if t is not None and not isinstance(t, BoolType):
            self.error("TypeMismatch", annot.pred, f"{annot.kind} predicate must be boolean, got {t}")

    def stmt(self, stmt: Stmt, scope: Dict[str, Type]) -> None:
        for annot in stmt.asserts:
            self.predicate(annot, scope)
        if isinstance(stmt, Assign):
            target = scope.get(stmt.name)
            if target is None:
                self.error("UndeclaredVariable", stmt, f"undeclared variable {stmt.name}")
                self.expr(stmt.value, scope)
            elif isinstance(target, FnPtrType):
                self.fnptr_value(stmt.value, target, scope)
            elif isinstance(target, ArrayType):
                self.error("TypeMismatch", stmt, f"cannot assign to array {stmt.name}")
            else:
                self.want_int(stmt.value, scope)
        elif isinstance(stmt, ArrayAssign):
            target = scope.get(stmt.name)
            if target is None:
                self.error("UndeclaredVariable", stmt, f"undeclared variable {stmt.name}")
            elif not isinstance(target, ArrayType):
                self.error("TypeMismatch", stmt, f"{stmt.name} is not an array")
            self.want_int(stmt.index, scope)
            self.want_int(stmt.value, scope)
        elif isinstance(stmt, (If, While)):
            t = self.expr(stmt.cond, scope)
            if t is not None and not isinstance(t, _SCALAR):
                self.error("TypeMismatch", stmt.cond, f"condition must be int or bool, got {t}")
            if isinstance(stmt, If):
                self.stmt(stmt.then, scope)
                if stmt.orelse is not None:
                    self.stmt(stmt.orelse, scope)
            else:
                self.stmt(stmt.body, scope)
        elif isinstance(stmt, Return):
            self.want_int(stmt.value, scope)
        elif isinstance(stmt, ExprStmt):
            self.expr(stmt.expr, scope)
        else:
            for s in stmt.stmts:
                self.stmt(s, scope)

    def fnptr_value(self, value: Expr, target: FnPtrType, scope: Dict[str, Type]) -> None:
        if isinstance(value, AddrOfFn):
            arity = self.arities.get(value.name)
            if arity is None:
                self.error("UndeclaredVariable", value, f"undeclared function {value.name}")
                return
            if arity != target.arity:
                self.error("ArityMismatch", value,
                           f"{value.name} takes {arity} arguments, pointer expects {target.arity}")
            self.types[value.node_id] = FnPtrType(arity)
        elif isinstance(value, Var) and isinstance(scope.get(value.name), FnPtrType):
            if scope[value.name] != target:
                self.error("TypeMismatch", value, f"{value.name} has type {scope[value.name]}")
            self.types[value.node_id] = scope[value.name]
        else:
            self.error("TypeMismatch", value, "function pointer expects '&function' or a pointer")

    def want_int(self, expr: Expr, scope: Dict[str, Type], ctx: Optional[str] = None) -> None:
        t = self.expr(expr, scope, ctx)
        if t is not None and not isinstance(t, IntType):
            self.error("TypeMismatch", expr, f"expected int, got {t}")

    def expr(self, expr: Expr, scope: Dict[str, Type], ctx: Optional[str] = None) -> Optional[Type]:
        t = self._expr(expr, scope, ctx)
        if t is not None:
            self.types[expr.node_id] = t
        return t

    def _expr(self, expr: Expr, scope: Dict[str, Type], ctx: Optional[str]) -> Optional[Type]:
        if isinstance(expr, IntLit):
            return INT
        if isinstance(expr, ResultRef):
            if ctx != "ensures":
                self.error("TypeMismatch", expr, "\\result is only allowed in ensures clauses")
                return None
            return INT
        if isinstance(expr, Var):
            t = scope.get(expr.name)
            if t is None:
                self.error("UndeclaredVariable", expr, f"undeclared variable {expr.name}")
                return None
            if not isinstance(t, IntType):
                self.error("TypeMismatch", expr, f"{expr.name} of type {t} used as a value")
                return None
            return t
        if isinstance(expr, ArrayRead):
            t = scope.get(expr.name)
            if t is None:
                self.error("UndeclaredVariable", expr, f"undeclared variable {expr.name}")
            elif not isinstance(t, ArrayType):
                self.error("TypeMismatch", expr, f"{expr.name} is not an array")
            self.want_int(expr.index, scope, ctx)
            return INT
        if isinstance(expr, Unop):
            t = self.expr(expr.operand, scope, ctx)
            if expr.op == "-":
                if t is not None and not isinstance(t, IntType):
                    self.error("TypeMismatch", expr, f"unary minus on {t}")
                return INT
            if t is not None and not isinstance(t, _SCALAR):
                self.error("TypeMismatch", expr, f"negation of {t}")
            return BOOL
        if isinstance(expr, Binop):
            if expr.op in ARITH_OPS or expr.op in COMPARE_OPS:
                self.want_int(expr.left, scope, ctx)
                self.want_int(expr.right, scope, ctx)
                return INT if expr.op in ARITH_OPS else BOOL
            for side in (expr.left, expr.right):
                t = self.expr(side, scope, ctx)
                if t is not None and not isinstance(t, _SCALAR):
                    self.error("TypeMismatch", side, f"operand of {expr.op} has type {t}")
            return BOOL
        if isinstance(expr, (Call, IndirectCall)):
            if ctx is not None:
                self.error("TypeMismatch", expr, "calls are not allowed in annotations")
            if isinstance(expr, Call):
                arity = self.arities.get(expr.name)
                if arity is None:
                    self.error("UndeclaredVariable", expr, f"undeclared function {expr.name}")
            else:
                t = scope.get(expr.name)
                arity = t.arity if isinstance(t, FnPtrType) else None
                if arity is None:
                    self.error("TypeMismatch", expr, f"{expr.name} is not a function pointer")
            if arity is not None and arity != len(expr.args):
                self.error("ArityMismatch", expr,
                           f"{expr.name} takes {arity} arguments, {len(expr.args)} given")
            for a in expr.args:
                self.want_int(a, scope, ctx)
            return INT
        if isinstance(expr, AddrOfFn):
            self.error("TypeMismatch", expr, "'&function' only appears on the right of '='")
            return None
        raise AssertionError(f"unexpected node {expr!r}")


def _vars(expr: Expr):
    return [e for e in subexpressions(expr) if isinstance(e, Var)]


def typecheck(unit: TranslationUnit) -> TypedAst:
    """Type a numbered unit.  Raises :class:`TypecheckFailure` with all errors."""
    checker = _Checker(unit)
    checker.run()
    if checker.errors:
        raise TypecheckFailure(checker.errors)
    return TypedAst(unit, checker.types, checker.symbols, NodeIndex.build(unit))

"""Independent reference implementations used by the tests.

Nothing here shares code with the analyzers it checks: the interpreter
runs MiniC concretely, the consolidation oracle re-evaluates naively until
nothing changes, and the guard counter walks the AST on its own.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Tuple

from miniverif.kernel_services.ast import (
    AddrOfFn, ArrayAssign, ArrayRead, ArrayType, Assign, Binop, Block, Call,
    ExprStmt, FnPtrType, If, IndirectCall, IntLit, Return, ResultRef, Unop, Var,
    While, walk,
)
from miniverif.kernel_services.printer import print_expr

# -- consolidation -------------------------------------------------------------


def naive_consolidate(n: int, emissions: Iterable[Tuple[int, str, Tuple[int, ...]]]) -> Dict[int, str]:
    """``emissions`` are (property, status, hypotheses) with status True/False/Maybe."""
    emissions = list(emissions)
    justified = set()
    while True:
        new = {p for p, s, hs in emissions if s == "True" and set(hs) <= justified}
        if new == justified:
            break
        justified = new
    refuted = {p for p, s, hs in emissions if s == "False" and set(hs) <= justified}
    out = {}
    for p in range(n):
        j, r = p in justified, p in refuted
        out[p] = "Inconsistent" if j and r else "Valid" if j else "Invalid" if r else "Unknown"
    return out


# -- rte site counting -----------------------------------------------------------


def count_rte_sites(ast, div=True, bounds=True, overflow=False) -> int:
    """Distinct (statement, guard) pairs by a plain walk over statements."""
    keys = set()
    for fn in ast.functions:
        arrays = {d.name for d in fn.locals if isinstance(d.type, ArrayType)}
        for stmt in _statements(fn.body):
            roots = _own_exprs(stmt)
            if bounds and isinstance(stmt, ArrayAssign):
                keys.add((stmt.node_id, "idx", print_expr(stmt.index)))
            for root in roots:
                for node in walk(root):
                    if div and isinstance(node, Binop) and node.op in ("/", "%"):
                        keys.add((stmt.node_id, "div", print_expr(node.right)))
                    if bounds and isinstance(node, ArrayRead) and node.name in arrays:
                        keys.add((stmt.node_id, "idx", print_expr(node.index)))
                if overflow:
                    for node in _top_arith(root):
                        keys.add((stmt.node_id, "ovf", print_expr(node)))
    return len(keys)


def _top_arith(expr, parent_arith=False):
    # an arithmetic node whose parent is not itself + - *
    arith = isinstance(expr, Binop) and expr.op in ("+", "-", "*")
    if arith and not parent_arith:
        yield expr
    for child in _expr_children(expr):
        yield from _top_arith(child, arith)


def _expr_children(e):
    if isinstance(e, Binop):
        return [e.left, e.right]
    if isinstance(e, Unop):
        return [e.operand]
    if isinstance(e, ArrayRead):
        return [e.index]
    if isinstance(e, (Call, IndirectCall)):
        return list(e.args)
    return []


def _statements(stmts):
    for s in stmts:
        yield s
        if isinstance(s, Block):
            yield from _statements(s.stmts)
        elif isinstance(s, If):
            yield from _statements([s.then] + ([s.orelse] if s.orelse else []))
        elif isinstance(s, While):
            yield from _statements([s.body])


def _own_exprs(s):
    if isinstance(s, Assign):
        return [s.value]
    if isinstance(s, ArrayAssign):
        return [s.index, s.value]
    if isinstance(s, (If, While)):
        return [s.cond]
    if isinstance(s, (Return,)):
        return [s.value]
    if isinstance(s, ExprStmt):
        return [s.expr]
    return []


# -- concrete interpreter ------------------------------------------------------


class Stop(Exception):
    """Execution ends: undefined behavior or a failed (assumed) property."""


class OutOfFuel(Exception):
    pass


class _Ret(Exception):
    def __init__(self, value):
        self.value = value


class Interpreter:
    """Big-step MiniC interpreter that snapshots variables before each statement.

    Locals start at zero.  Arithmetic is on unbounded integers, ``/``
    truncates toward zero and ``&&``/``||`` short-circuit.  When
    ``check`` is set, a false assert (of any origin) or a false callee
    precondition at a direct call stops the execution, which mirrors an
    analysis that assumes what it could not prove.
    """

    def __init__(self, ast, asserts: Dict[int, List[Tuple[object, str]]],
                 check: bool = True, fuel: int = 20000):
        self.ast = ast
        self.asserts = asserts
        self.check = check
        self.fuel = fuel
        self.snapshots: Dict[int, List[Tuple[dict, dict]]] = defaultdict(list)

    def run(self, fn_name: str, args: List[int]) -> Optional[int]:
        try:
            return self.call(fn_name, args, 0)
        except (Stop, OutOfFuel):
            return None

    # statements

    def call(self, name, args, depth):
        if depth > 60:
            raise OutOfFuel()
        fn = self.ast.function(name)
        ints = {p.name: a for p, a in zip(fn.params, args)}
        arrays = {}
        ptrs = {}
        for d in fn.locals:
            if isinstance(d.type, ArrayType):
                arrays[d.name] = [0] * d.type.size
            elif isinstance(d.type, FnPtrType):
                ptrs[d.name] = None
            else:
                ints[d.name] = 0
        frame = (ints, arrays, ptrs, depth)
        try:
            for s in fn.body:
                self.stmt(s, frame)
        except _Ret as r:
            return r.value
        return 0

    def _snap(self, s, frame):
        ints, arrays, _, _ = frame
        self.snapshots[s.node_id].append((dict(ints), {k: list(v) for k, v in arrays.items()}))

    def _check(self, s, frame, origins):
        if not self.check:
            return
        for pred, origin in self.asserts.get(s.node_id, ()):
            if origins(origin) and not self.expr(pred, frame):
                raise Stop()

    def stmt(self, s, frame):
        self.fuel -= 1
        if self.fuel < 0:
            raise OutOfFuel()
        ints, arrays, ptrs, depth = frame
        if isinstance(s, While):
            self._check(s, frame, lambda o: o == "source")
            while True:
                self._snap(s, frame)
                self._check(s, frame, lambda o: o != "source")
                self.fuel -= 1
                if self.fuel < 0:
                    raise OutOfFuel()
                if not self.expr(s.cond, frame):
                    return
                self.stmt(s.body, frame)
        self._snap(s, frame)
        self._check(s, frame, lambda o: True)
        if isinstance(s, Assign):
            if s.name in ptrs:
                ptrs[s.name] = s.value.name if isinstance(s.value, AddrOfFn) else ptrs[s.value.name]
            else:
                ints[s.name] = self.expr(s.value, frame)
        elif isinstance(s, ArrayAssign):
            i = self.expr(s.index, frame)
            v = self.expr(s.value, frame)
            if not 0 <= i < len(arrays[s.name]):
                raise Stop()
            arrays[s.name][i] = v
        elif isinstance(s, ExprStmt):
            self.expr(s.expr, frame)
        elif isinstance(s, Return):
            raise _Ret(self.expr(s.value, frame))
        elif isinstance(s, Block):
            for sub in s.stmts:
                self.stmt(sub, frame)
        elif isinstance(s, If):
            if self.expr(s.cond, frame):
                self.stmt(s.then, frame)
            elif s.orelse is not None:
                self.stmt(s.orelse, frame)

    # expressions

    def expr(self, e, frame) -> int:
        ints, arrays, ptrs, depth = frame
        if isinstance(e, IntLit):
            return e.value
        if isinstance(e, Var):
            return ints[e.name]
        if isinstance(e, ResultRef):
            return ints["\\result"]
        if isinstance(e, ArrayRead):
            i = self.expr(e.index, frame)
            if not 0 <= i < len(arrays[e.name]):
                raise Stop()
            return arrays[e.name][i]
        if isinstance(e, Unop):
            v = self.expr(e.operand, frame)
            return -v if e.op == "-" else int(not v)
        if isinstance(e, Binop):
            if e.op == "&&":
                return int(bool(self.expr(e.left, frame)) and bool(self.expr(e.right, frame)))
            if e.op == "||":
                return int(bool(self.expr(e.left, frame)) or bool(self.expr(e.right, frame)))
            a = self.expr(e.left, frame)
            b = self.expr(e.right, frame)
            if e.op in ("/", "%"):
                if b == 0:
                    raise Stop()
                q = abs(a) // abs(b)
                if (a < 0) != (b < 0):
                    q = -q
                return q if e.op == "/" else a - b * q
            return {
                "+": a + b, "-": a - b, "*": a * b,
                "<": int(a < b), "<=": int(a <= b), ">": int(a > b),
                ">=": int(a >= b), "==": int(a == b), "!=": int(a != b),
            }[e.op]
        if isinstance(e, Call):
            args = [self.expr(a, frame) for a in e.args]
            callee = self.ast.function(e.name)
            if self.check and callee.requires:
                env = ({p.name: a for p, a in zip(callee.params, args)}, {}, {}, depth)
                if not all(self.expr(r.pred, env) for r in callee.requires):
                    raise Stop()
            return self.call(e.name, args, depth + 1)
        if isinstance(e, IndirectCall):
            args = [self.expr(a, frame) for a in e.args]
            target = ptrs[e.name]
            if target is None:
                raise Stop()
            return self.call(target, args, depth + 1)
        raise TypeError(e)


def input_box(ast) -> List[range]:
    """Per-parameter ranges of main read off ``c <= x`` / ``x <= c`` conjuncts."""
    main = ast.function("main")
    lo = {p.name: None for p in main.params}
    hi = dict(lo)

    def conjuncts(e):
        if isinstance(e, Binop) and e.op == "&&":
            yield from conjuncts(e.left)
            yield from conjuncts(e.right)
        else:
            yield e

    def lit(e):
        if isinstance(e, IntLit):
            return e.value
        if isinstance(e, Unop) and e.op == "-" and isinstance(e.operand, IntLit):
            return -e.operand.value
        return None

    for r in main.requires:
        for c in conjuncts(r.pred):
            if not isinstance(c, Binop) or c.op not in ("<=", ">="):
                continue
            left, right = (c.left, c.right) if c.op == "<=" else (c.right, c.left)
            if isinstance(right, Var) and lit(left) is not None:
                lo[right.name] = lit(left)
            if isinstance(left, Var) and lit(right) is not None:
                hi[left.name] = lit(right)
    return [range(lo[p.name], hi[p.name] + 1) for p in main.params]


def execute_all(ast, asserts, check=True):
    """Run main on every input tuple of its box that satisfies its requires."""
    interp = Interpreter(ast, asserts, check)
    main = ast.function("main")
    box = input_box(ast)
    count = 0
    for args in itertools.product(*box):
        env = ({p.name: a for p, a in zip(main.params, args)}, {}, {}, 0)
        if not all(interp.expr(r.pred, env) for r in main.requires):
            continue
        interp.fuel = 20000
        interp.run("main", list(args))
        count += 1
    return interp.snapshots, count, box

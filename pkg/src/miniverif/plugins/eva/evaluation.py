"""Abstract evaluation of expressions and refinement by conditions."""

from __future__ import annotations

from typing import Callable, Optional

from ...kernel_services import interval as itv
from ...kernel_services.ast import (
    ArrayRead, Binop, Call, Expr, IndirectCall, IntLit, ResultRef, Unop, Var,
    ARITH_OPS, COMPARE_OPS,
)
from ...kernel_services.interval import BOTTOM, TOP, Interval, IntervalLike
from .domain import BOTTOM_ENV, Env

CallHandler = Callable[[Env, Expr], IntervalLike]

RESULT = "\\result"
_ARITH = {"+": itv.add, "-": itv.sub, "*": itv.mul, "/": itv.div, "%": itv.rem}
_TRUE = Interval(1, 1)
_FALSE = Interval(0, 0)
_BOOL = Interval(0, 1)


def _from_truth(v: Optional[bool]) -> Interval:
    if v is None:
        return _BOOL
    return _TRUE if v else _FALSE


def eval_expr(env: Env, expr: Expr, on_call: Optional[CallHandler] = None) -> IntervalLike:
    """Interval of ``expr``; booleans evaluate within [0, 1].

    Calls go to ``on_call``; without a handler their result is top.
    """
    if env.is_bottom:
        return BOTTOM
    if isinstance(expr, IntLit):
        return itv.const(expr.value)
    if isinstance(expr, Var):
        return env.get(expr.name)
    if isinstance(expr, ResultRef):
        return env.get(RESULT)
    if isinstance(expr, ArrayRead):
        if eval_expr(env, expr.index, on_call).is_bottom:
            return BOTTOM
        return env.array(expr.name)
    if isinstance(expr, Unop):
        if expr.op == "-":
            return itv.neg(eval_expr(env, expr.operand, on_call))
        inner = eval_pred(env, expr.operand, on_call)
        return _from_truth(None if inner is None else not inner)
    if isinstance(expr, Binop):
        if expr.op in ARITH_OPS:
            a = eval_expr(env, expr.left, on_call)
            b = eval_expr(env, expr.right, on_call)
            return _ARITH[expr.op](a, b)
        return _from_truth(eval_pred(env, expr, on_call))
    if isinstance(expr, (Call, IndirectCall)):
        if on_call is None:
            return TOP
        return on_call(env, expr)
    raise TypeError(f"cannot evaluate {expr!r}")


def eval_pred(env: Env, pred: Expr, on_call: Optional[CallHandler] = None) -> Optional[bool]:
    """True / False when ``pred`` holds in every / no concrete state of ``env``.

    Returns True on the bottom env (nothing reaches it).
    """
    if env.is_bottom:
        return True
    if isinstance(pred, Binop) and pred.op in COMPARE_OPS:
        a = eval_expr(env, pred.left, on_call)
        b = eval_expr(env, pred.right, on_call)
        if a.is_bottom or b.is_bottom:
            return True
        return itv.compare(pred.op, a, b)
    if isinstance(pred, Binop) and pred.op in ("&&", "||"):
        a = eval_pred(env, pred.left, on_call)
        b = eval_pred(env, pred.right, on_call)
        if pred.op == "&&":
            if a is False or b is False:
                return False
            return True if a and b else None
        if a is True or b is True:
            return True
        return False if a is False and b is False else None
    if isinstance(pred, Unop) and pred.op == "!":
        v = eval_pred(env, pred.operand, on_call)
        return None if v is None else not v
    value = eval_expr(env, pred, on_call)
    if value.is_bottom:
        return True
    return itv.compare("!=", value, _FALSE)


def refine(env: Env, cond: Expr, truth: bool) -> Env:
    """Restrict ``env`` to the states where ``cond`` evaluates to ``truth``."""
    if env.is_bottom:
        return env
    if isinstance(cond, Unop) and cond.op == "!":
        return refine(env, cond.operand, not truth)
    if isinstance(cond, Binop) and cond.op in ("&&", "||"):
        both = (cond.op == "&&") == truth
        if both:
            return refine(refine(env, cond.left, truth), cond.right, truth)
        return refine(env, cond.left, truth).join(refine(env, cond.right, truth))
    if isinstance(cond, Binop) and cond.op in COMPARE_OPS:
        op = cond.op if truth else itv.NEGATED[cond.op]
        return _refine_compare(env, op, cond.left, cond.right)
    # an int used as a condition means "!= 0"
    return _refine_compare(env, "!=" if truth else "==", cond, IntLit(0))


def _refine_compare(env: Env, op: str, left: Expr, right: Expr) -> Env:
    a = eval_expr(env, left)
    b = eval_expr(env, right)
    if a.is_bottom or b.is_bottom or itv.compare(op, a, b) is False:
        return BOTTOM_ENV
    if isinstance(left, Var):
        env = env.set(left.name, itv.constrain(op, a, b))
        a = env.get(left.name)
    if isinstance(right, Var) and not env.is_bottom:
        env = env.set(right.name, itv.constrain(itv.MIRRORED[op], b, a))
    return env

"""Literal folding prover.

Decides annotation predicates made only of integer literals and
operators.  Anything mentioning a variable is left alone.
"""

from __future__ import annotations

from typing import Optional

from ..kernel_services.ast import Binop, Expr, IntLit, Unop
from ..kernel_services.context import KernelContext
from ..kernel_services.parameters import PluginDescriptor, after_plugin_main
from ..kernel_services.properties import Local

NAME = "const"


def _trunc_div(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b > 0) else -q


def fold(expr: Expr) -> Optional[int]:
    """Value of a variable-free expression (booleans as 0/1), else None.

    None also covers division by zero.
    """
    if isinstance(expr, IntLit):
        return expr.value
    if isinstance(expr, Unop):
        v = fold(expr.operand)
        if v is None:
            return None
        return -v if expr.op == "-" else int(v == 0)
    if not isinstance(expr, Binop):
        return None
    a = fold(expr.left)
    b = fold(expr.right)
    if a is None or b is None:
        return None
    op = expr.op
    if op == "&&":
        return int(a != 0 and b != 0)
    if op == "||":
        return int(a != 0 or b != 0)
    if op in ("/", "%") and b == 0:
        return None
    if op == "/":
        return _trunc_div(a, b)
    if op == "%":
        return a - b * _trunc_div(a, b)
    return {
        "+": lambda: a + b, "-": lambda: a - b, "*": lambda: a * b,
        "<": lambda: int(a < b), "<=": lambda: int(a <= b),
        ">": lambda: int(a > b), ">=": lambda: int(a >= b),
        "==": lambda: int(a == b), "!=": lambda: int(a != b),
    }[op]()


def fold_all(ctx: KernelContext) -> int:
    emitted = 0
    for prop in ctx.properties:
        value = fold(prop.annotation.pred)
        if value is None:
            continue
        ctx.emit(prop.id, Local.TRUE if value else Local.FALSE)
        emitted += 1
    return emitted


def const_main(ctx: KernelContext) -> None:
    ctx.info(f"{fold_all(ctx)} literal predicates decided")


def configure(ctx: KernelContext) -> None:
    # fold again after every other analyzer so that properties generated
    # later in the session are decided whatever the flag order
    for other in ctx.enabled_plugins:
        if other != NAME:
            ctx.register_hook(after_plugin_main(other), fold_all)


DESCRIPTOR = PluginDescriptor(
    name=NAME,
    main=const_main,
    configure=configure,
    help="decide annotations made of literals only",
)


def register(kernel) -> None:
    kernel.register_plugin(DESCRIPTOR)

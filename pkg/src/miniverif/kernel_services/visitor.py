"""Read-only AST visitor service.

Subclass :class:`Visitor` and define ``visit_<node class in lowercase>``
methods (``visit_binop``, ``visit_while``, ...) and/or the category
callbacks ``visit_stmt``, ``visit_expr``, ``visit_annotation``.  Category
callbacks run before the specific one.
"""

from __future__ import annotations

from .ast import Annotation, Expr, Node, Stmt, TypedAst, walk


class Visitor:
    def visit_stmt(self, node: Stmt) -> None:
        pass

    def visit_expr(self, node: Expr) -> None:
        pass

    def visit_annotation(self, node: Annotation) -> None:
        pass


def visit(ast, visitor: Visitor) -> None:
    """Pre-order traversal of a unit (typed or not), i.e. in node id order."""
    root: Node = ast.unit if isinstance(ast, TypedAst) else ast
    for node in walk(root):
        if isinstance(node, Stmt):
            visitor.visit_stmt(node)
        elif isinstance(node, Expr):
            visitor.visit_expr(node)
        elif isinstance(node, Annotation):
            visitor.visit_annotation(node)
        method = getattr(visitor, "visit_" + type(node).__name__.lower(), None)
        if method is not None:
            method(node)

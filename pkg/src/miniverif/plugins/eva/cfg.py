"""Per-function control-flow graphs, one node per statement.

A ``while`` statement gives two nodes: ``loop_entry`` (reached once per
execution of the statement, where its source asserts are checked) and
``loop_head`` (reached at each evaluation of the condition).  Blocks get
a ``skip`` node so that their asserts have somewhere to live.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ...kernel_services.ast import (
    ArrayAssign, Assign, Block, Expr, ExprStmt, FunctionDef, If, Return, Stmt,
    While,
)

Guard = Optional[Tuple[Expr, bool]]


@dataclass
class CfgNode:
    index: int
    kind: str  # stmt | branch | loop_entry | loop_head | skip | exit
    stmt: Optional[Stmt] = None
    succs: List[Tuple[int, Guard]] = field(default_factory=list)
    preds: List[int] = field(default_factory=list)


@dataclass
class Cfg:
    function: FunctionDef
    nodes: List[CfgNode]
    entry: int
    exit: int
    rpo: Dict[int, int]

    @property
    def loop_heads(self) -> List[int]:
        return [n.index for n in self.nodes if n.kind == "loop_head"]

    def in_rpo(self) -> List[CfgNode]:
        return sorted((n for n in self.nodes if n.index in self.rpo), key=lambda n: self.rpo[n.index])

    def is_back_edge(self, src: int, dst: int) -> bool:
        return src in self.rpo and dst in self.rpo and self.rpo[src] >= self.rpo[dst]


class _Builder:
    def __init__(self) -> None:
        self.nodes: List[CfgNode] = []

    def node(self, kind: str, stmt: Optional[Stmt] = None) -> CfgNode:
        n = CfgNode(len(self.nodes), kind, stmt)
        self.nodes.append(n)
        return n

    def edge(self, src: CfgNode, dst: int, guard: Guard = None) -> None:
        src.succs.append((dst, guard))

    def seq(self, stmts, succ: int) -> int:
        for s in reversed(stmts):
            succ = self.stmt(s, succ)
        return succ

    def stmt(self, s: Stmt, succ: int) -> int:
        if isinstance(s, (Assign, ArrayAssign, ExprStmt)):
            n = self.node("stmt", s)
            self.edge(n, succ)
            return n.index
        if isinstance(s, Return):
            return self.node("stmt", s).index
        if isinstance(s, Block):
            n = self.node("skip", s)
            self.edge(n, self.seq(s.stmts, succ))
            return n.index
        if isinstance(s, If):
            n = self.node("branch", s)
            then_entry = self.stmt(s.then, succ)
            else_entry = self.stmt(s.orelse, succ) if s.orelse is not None else succ
            self.edge(n, then_entry, (s.cond, True))
            self.edge(n, else_entry, (s.cond, False))
            return n.index
        if isinstance(s, While):
            head = self.node("loop_head", s)
            body_entry = self.stmt(s.body, head.index)
            self.edge(head, body_entry, (s.cond, True))
            self.edge(head, succ, (s.cond, False))
            entry = self.node("loop_entry", s)
            self.edge(entry, head.index)
            return entry.index
        raise TypeError(f"unexpected statement {s!r}")


def build_cfg(fn: FunctionDef) -> Cfg:
    b = _Builder()
    exit_node = b.node("exit")
    entry = b.seq(fn.body, exit_node.index)
    for n in b.nodes:
        for dst, _ in n.succs:
            b.nodes[dst].preds.append(n.index)

    # reverse post-order from the entry
    order: List[int] = []
    seen = set()
    stack = [(entry, iter(b.nodes[entry].succs))]
    seen.add(entry)
    while stack:
        node, it = stack[-1]
        for dst, _ in it:
            if dst not in seen:
                seen.add(dst)
                stack.append((dst, iter(b.nodes[dst].succs)))
                break
        else:
            order.append(node)
            stack.pop()
    rpo = {n: i for i, n in enumerate(reversed(order))}
    return Cfg(fn, b.nodes, entry, exit_node.index, rpo)

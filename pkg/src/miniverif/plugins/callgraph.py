"""Call graph construction.

Indirect calls are resolved through the value analysis' published
``eva.fn_targets`` when it is in the plugin database.  Without it every
function of matching arity is a possible callee.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Set, Tuple

from ..kernel_services.ast import Call, IndirectCall, TypedAst, walk
from ..kernel_services.context import KernelContext
from ..kernel_services.errors import NotFound
from ..kernel_services.parameters import ParameterSpec, PluginDescriptor
from ..libraries.witness import NODE_ID, TEXT, function, list_of

NAME = "cg"
FN_TARGETS = "eva.fn_targets"
FN_TARGETS_TYPE = function(NODE_ID, returns=list_of(TEXT))

DIRECT = "Direct"
EVA_RESOLVED = "EvaResolved"
CONSERVATIVE = "Conservative"


@dataclass(frozen=True, order=True)
class Edge:
    caller: str
    callee: str
    site: int
    resolution: str


@dataclass
class CallGraph:
    nodes: List[str]
    edges: List[Edge]

    def at_site(self, site: int) -> Set[str]:
        return {e.callee for e in self.edges if e.site == site}

    def to_dot(self) -> str:
        lines = ["digraph cg {"]
        lines += [f'  "{n}";' for n in sorted(self.nodes)]
        pairs = sorted({(e.caller, e.callee, e.resolution) for e in self.edges})
        lines += [f'  "{a}" -> "{b}" [label="{r}"];' for a, b, r in pairs]
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_callgraph(ast: TypedAst,
                    resolve: Optional[Callable[[int], List[str]]] = None) -> CallGraph:
    """``resolve`` maps an IndirectCall node id to its callees, if known."""
    edges: Set[Edge] = set()
    for fn in ast.functions:
        for node in walk(fn):
            if isinstance(node, Call):
                edges.add(Edge(fn.name, node.name, node.node_id, DIRECT))
            elif isinstance(node, IndirectCall):
                if resolve is not None:
                    targets: List[str] = resolve(node.node_id)
                    kind = EVA_RESOLVED
                else:
                    targets = [f.name for f in ast.functions if f.arity == len(node.args)]
                    kind = CONSERVATIVE
                for t in targets:
                    edges.add(Edge(fn.name, t, node.node_id, kind))
    return CallGraph(sorted(f.name for f in ast.functions), sorted(edges))


def cg_main(ctx: KernelContext) -> None:
    try:
        resolve = ctx.get_value(FN_TARGETS, FN_TARGETS_TYPE)
    except NotFound:
        ctx.info("no function-pointer resolution available; using arity")
        resolve = None
    # a TypeMismatch is left to propagate: it means an incompatible eva
    graph = build_callgraph(ctx.ast, resolve)
    path = ctx.option("-cg-out")
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(graph.to_dot())
    except OSError as exc:
        ctx.log("fatal", f"cannot write {path}: {exc.strerror}")
        return
    ctx.info(f"{len(graph.edges)} edges written to {path}")


DESCRIPTOR = PluginDescriptor(
    name=NAME,
    main=cg_main,
    help="build the call graph, resolving function pointers when possible",
    parameters=(ParameterSpec("-cg-out", "string", "callgraph.dot", "DOT output path"),),
)


def register(kernel) -> None:
    kernel.register_plugin(DESCRIPTOR)

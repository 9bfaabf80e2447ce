"""Interval abstract interpretation of a whole MiniC program.

The analysis starts at ``main`` (its parameters bounded by its requires
clauses) and inlines direct and indirect calls up to
:data:`MAX_INLINE_DEPTH`.  A callee that is too deep or recursive gets a
top result at the call, and is analyzed once more on its own, with top
parameters, so that its statements are still covered.

Each function is solved with a worklist over its CFG: joins at loop heads
for the first ``wlevel`` updates, then widening, then (optionally) one
descending iteration.  A final pass over the stable states records the
per-statement table and the state at which every property is checked.

When ``assume`` is on, a property that cannot be proved at its check point
is assumed afterwards: the state is reduced by its predicate and the
property joins the hypothesis set carried along the path.  Hypothesis sets
are unioned at joins.
"""

from __future__ import annotations

import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ...kernel_services import interval as itv
from ...kernel_services.ast import (
    AddrOfFn, ArrayAssign, ArrayType, Assign, Call, Expr, ExprStmt, FnPtrType,
    IndirectCall, Location, Return, TypedAst, Var,
)
from ...kernel_services.interval import BOTTOM, TOP, IntervalLike
from ...kernel_services.properties import ASSERTION, POSTCONDITION, PRECONDITION, Property
from .cfg import Cfg, CfgNode, build_cfg
from .domain import BOTTOM_ENV, ANY_TARGET, Env, State, Targets, join_states
from .evaluation import RESULT, eval_expr, eval_pred, refine

MAX_INLINE_DEPTH = 3
VISIT_BUDGET = 1000
ZERO = itv.const(0)


class IterationBudgetExceeded(AssertionError):
    pass


@dataclass(frozen=True)
class EvaOptions:
    wlevel: int = 3
    narrow: bool = True
    assume: bool = True


@dataclass(frozen=True)
class _Frame:
    function: str
    depth: int
    stack: Tuple[str, ...]


@dataclass
class AnalysisResult:
    ast: TypedAst
    table: Dict[int, State] = field(default_factory=dict)
    checks: Dict[int, State] = field(default_factory=dict)
    targets: Dict[int, Targets] = field(default_factory=dict)
    exits: Dict[str, State] = field(default_factory=dict)

    def env_at(self, stmt_id: int) -> Env:
        state = self.table.get(stmt_id)
        return state.env if state is not None else BOTTOM_ENV

    def exit_env(self, function: str) -> Env:
        state = self.exits.get(function)
        return state.env if state is not None else BOTTOM_ENV

    def eval_at(self, node_id: int) -> IntervalLike:
        """Interval of an expression node in the state before its statement."""
        stmt = self.ast.index.enclosing_stmt.get(node_id)
        if stmt is None:
            return BOTTOM
        return eval_expr(self.env_at(stmt), self.ast.index[node_id])

    def fn_targets(self, node_id: int) -> List[str]:
        targets = self.targets.get(node_id)
        if targets is None:
            return []
        if targets.any:
            call = self.ast.index[node_id]
            return sorted(f.name for f in self.ast.functions if f.arity == len(call.args))
        return sorted(targets.names)


class Analyzer:
    def __init__(self, ast: TypedAst, options: EvaOptions = EvaOptions(),
                 properties: Iterable[Property] = (),
                 warn: Optional[Callable[[str, Optional[Location]], None]] = None):
        self.ast = ast
        self.options = options
        self.warn = warn or (lambda message, location=None: None)
        self.cfgs: Dict[str, Cfg] = {f.name: build_cfg(f) for f in ast.functions}
        self.asserts: Dict[int, List[Property]] = defaultdict(list)
        self.preconditions: Dict[int, List[Property]] = defaultdict(list)
        self.postconditions: Dict[str, List[Property]] = defaultdict(list)
        for prop in sorted(properties, key=lambda p: p.id):
            if prop.kind == ASSERTION:
                self.asserts[prop.attach].append(prop)
            elif prop.kind == PRECONDITION:
                self.preconditions[prop.attach].append(prop)
            elif prop.kind == POSTCONDITION:
                self.postconditions[prop.function].append(prop)
        self.result = AnalysisResult(ast)
        self.pending: Set[str] = set()
        self._warned: Set[int] = set()

    # -- entry points -------------------------------------------------------

    def run(self) -> AnalysisResult:
        main = self.ast.function("main")
        if main is not None:
            roots = ["main"]
        else:
            self.warn("no main function; analyzing every function on its own", None)
            roots = [f.name for f in self.ast.functions]
        done: Set[str] = set()
        for name in roots:
            self._analyze_root(name, use_requires=name == "main")
            done.add(name)
        while self.pending - done:
            name = min(self.pending - done)
            self._analyze_root(name, use_requires=False)
            done.add(name)
        return self.result

    def _analyze_root(self, name: str, use_requires: bool) -> None:
        fn = self.ast.function(name)
        env = self._initial_env(name, [TOP] * fn.arity)
        if use_requires:
            for annot in fn.requires:
                env = refine(env, annot.pred, True)
        self.analyze_function(name, State(env), _Frame(name, 0, (name,)), record=True)

    def _initial_env(self, name: str, args: List[IntervalLike]) -> Env:
        fn = self.ast.function(name)
        ints = {p.name: a for p, a in zip(fn.params, args)}
        arrays = {}
        # locals are zero-initialized
        for d in fn.locals:
            if isinstance(d.type, ArrayType):
                arrays[d.name] = ZERO
            elif not isinstance(d.type, FnPtrType):
                ints[d.name] = ZERO
        return Env(ints, arrays, {})

    # -- one function -------------------------------------------------------

    def analyze_function(self, name: str, entry: State, frame: _Frame,
                         record: bool) -> Tuple[IntervalLike, FrozenSet[int]]:
        cfg = self.cfgs[name]
        states = self._ascend(cfg, entry, frame)
        if self.options.narrow and cfg.loop_heads:
            states = self._descend(cfg, entry, frame, states)
        result: IntervalLike = BOTTOM
        hyps: Set[int] = set()
        for node in cfg.in_rpo():
            if node.index not in states:
                continue
            _, ret = self._transfer(frame, node, states[node.index], record)
            if ret is not None:
                result = itv.join(result, ret[0])
                hyps |= ret[1]
        return result, frozenset(hyps)

    def _ascend(self, cfg: Cfg, entry: State, frame: _Frame) -> Dict[int, State]:
        states: Dict[int, State] = {cfg.entry: entry}
        updates: Counter = Counter()
        work = [(cfg.rpo[cfg.entry], cfg.entry)]
        queued = {cfg.entry}
        visits = 0
        while work:
            _, i = heapq.heappop(work)
            queued.discard(i)
            visits += 1
            if visits > VISIT_BUDGET:
                raise IterationBudgetExceeded(
                    f"{cfg.function.name}: more than {VISIT_BUDGET} CFG node visits")
            outs, _ = self._transfer(frame, cfg.nodes[i], states[i], record=False)
            for dst, s in outs:
                old = states.get(dst)
                if old is None:
                    new = s
                elif s.leq(old):
                    continue
                elif cfg.nodes[dst].kind == "loop_head" and updates[dst] >= self.options.wlevel:
                    new = old.widen(old.join(s))
                else:
                    new = old.join(s)
                if old is not None and cfg.nodes[dst].kind == "loop_head":
                    updates[dst] += 1
                states[dst] = new
                if dst not in queued:
                    heapq.heappush(work, (cfg.rpo[dst], dst))
                    queued.add(dst)
        return states

    def _descend(self, cfg: Cfg, entry: State, frame: _Frame,
                 old: Dict[int, State]) -> Dict[int, State]:
        """One descending (narrowing) iteration, in reverse post-order."""
        old_outs = {i: self._transfer(frame, cfg.nodes[i], s, record=False)[0]
                    for i, s in old.items()}
        new: Dict[int, State] = {}
        new_outs: Dict[int, List[Tuple[int, State]]] = {}
        for node in cfg.in_rpo():
            i = node.index
            if i == cfg.entry:
                state: Optional[State] = entry
            else:
                state = None
                for p in set(node.preds):
                    outs = new_outs.get(p) if cfg.rpo.get(p, -1) < cfg.rpo[i] else old_outs.get(p)
                    for dst, s in outs or ():
                        if dst == i:
                            state = join_states(state, s)
                if state is None:
                    continue
                if node.kind == "loop_head" and i in old:
                    state = State(old[i].env.narrow(state.env), old[i].hyps | state.hyps)
            new[i] = state
            new_outs[i] = self._transfer(frame, node, state, record=False)[0]
        return new

    # -- transfer functions -------------------------------------------------

    def _checked_here(self, node: CfgNode) -> List[Property]:
        if node.stmt is None:
            return []
        props = self.asserts.get(node.stmt.node_id, [])
        if node.kind == "loop_entry":
            return [p for p in props if p.origin == "source"]
        if node.kind == "loop_head":
            return [p for p in props if p.origin != "source"]
        return props

    def _check(self, props: Iterable[Property], env: Env, hyps: Set[int],
               record: bool) -> Env:
        for prop in props:
            if record:
                self.result.checks[prop.id] = State(env, frozenset(hyps)).join(
                    self.result.checks.get(prop.id))
            if self.options.assume and eval_pred(env, prop.annotation.pred) is not True:
                env = refine(env, prop.annotation.pred, True)
                hyps.add(prop.id)
        return env

    def _transfer(self, frame: _Frame, node: CfgNode, state: State, record: bool):
        """Successor states, and (value, hypotheses) when the function returns."""
        res = self.result
        env = state.env
        hyps = set(state.hyps)
        if node.kind == "exit":
            if record:
                res.exits[frame.function] = state.join(res.exits.get(frame.function))
            return [], ((BOTTOM if env.is_bottom else TOP), frozenset(hyps))
        stmt = node.stmt
        if record and node.kind != "loop_entry":
            res.table[stmt.node_id] = state.join(res.table.get(stmt.node_id))
        env = self._check(self._checked_here(node), env, hyps, record)

        def on_call(call_env: Env, call: Expr) -> IntervalLike:
            return self._call(frame, call_env, call, hyps, record, on_call)

        if node.kind in ("skip", "loop_entry"):
            return [(dst, State(env, frozenset(hyps))) for dst, _ in node.succs], None
        if node.kind in ("branch", "loop_head"):
            eval_expr(env, stmt.cond, on_call)
            outs = []
            h = frozenset(hyps)
            for dst, (cond, truth) in node.succs:
                outs.append((dst, State(refine(env, cond, truth), h)))
            return outs, None

        if isinstance(stmt, Assign):
            target = self.ast.symbols[frame.function][stmt.name]
            if isinstance(target, FnPtrType):
                if isinstance(stmt.value, AddrOfFn):
                    env = env.point(stmt.name, Targets(frozenset([stmt.value.name])))
                elif isinstance(stmt.value, Var):
                    env = env.point(stmt.name, env.targets(stmt.value.name))
            else:
                env = env.set(stmt.name, eval_expr(env, stmt.value, on_call))
        elif isinstance(stmt, ArrayAssign):
            index = eval_expr(env, stmt.index, on_call)
            value = eval_expr(env, stmt.value, on_call)
            env = BOTTOM_ENV if index.is_bottom else env.store(stmt.name, value)
        elif isinstance(stmt, ExprStmt):
            if eval_expr(env, stmt.expr, on_call).is_bottom:
                env = BOTTOM_ENV
        elif isinstance(stmt, Return):
            value = eval_expr(env, stmt.value, on_call)
            if record:
                res.exits[frame.function] = State(env, frozenset(hyps)).join(
                    res.exits.get(frame.function))
                ret_env = env.set(RESULT, value)
                for prop in self.postconditions.get(frame.function, ()):
                    res.checks[prop.id] = State(ret_env, frozenset(hyps)).join(
                        res.checks.get(prop.id))
            return [], (value, frozenset(hyps))
        h = frozenset(hyps)
        return [(dst, State(env, h)) for dst, _ in node.succs], None

    def _call(self, frame: _Frame, env: Env, call: Expr, hyps: Set[int],
              record: bool, on_call) -> IntervalLike:
        if env.is_bottom:
            return BOTTOM
        args = [eval_expr(env, a, on_call) for a in call.args]
        if any(a.is_bottom for a in args):
            return BOTTOM
        if isinstance(call, Call):
            callees = [call.name]
        else:
            targets = env.targets(call.name)
            if record:
                res = self.result
                res.targets[call.node_id] = targets.join(res.targets.get(call.node_id, Targets()))
            if targets.any:
                callees = sorted(f.name for f in self.ast.functions if f.arity == len(args))
            else:
                callees = sorted(targets.names)

        result: IntervalLike = BOTTOM
        out_hyps: Set[int] = set()
        for callee in callees:
            entry_env = self._initial_env(callee, args)
            h = set(hyps)
            if isinstance(call, Call):
                entry_env = self._check(self.preconditions.get(call.node_id, ()), entry_env, h, record)
            if entry_env.is_bottom:
                out_hyps |= h
                continue
            if callee in frame.stack or frame.depth + 1 > MAX_INLINE_DEPTH:
                self.pending.add(callee)
                if record and call.node_id not in self._warned:
                    self._warned.add(call.node_id)
                    why = "recursive" if callee in frame.stack else "too deep to inline"
                    self.warn(f"call to {callee} is {why}; its result is top", call.loc)
                value, rh = TOP, frozenset(h)
            else:
                sub = _Frame(callee, frame.depth + 1, frame.stack + (callee,))
                value, rh = self.analyze_function(callee, State(entry_env, frozenset(h)), sub, record)
            result = itv.join(result, value)
            out_hyps |= rh
        hyps |= out_hyps
        return result


def analyze(ast: TypedAst, options: EvaOptions = EvaOptions(),
            properties: Iterable[Property] = (), warn=None) -> AnalysisResult:
    return Analyzer(ast, options, properties, warn).run()

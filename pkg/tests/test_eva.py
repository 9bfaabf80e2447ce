import math
import re
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from miniverif.kernel_internals.frontend import load_text
from miniverif.kernel_services import interval as itv
from miniverif.kernel_services.ast import (
    Assign, Binop, IndirectCall, IntLit, Unop, Var, walk,
)
from miniverif.kernel_services.interval import BOTTOM, TOP, Interval
from miniverif.kernel_services.properties import ASSERTION, Consolidated, Local
from miniverif.libraries.witness import INTERVAL, NODE_ID, TEXT, function, list_of
from miniverif.plugins.eva.analysis import Analyzer, EvaOptions, analyze
from miniverif.plugins.eva.domain import Env, Targets, MAX_TARGETS
from miniverif.plugins.eva.evaluation import eval_expr
from oracles import execute_all
from runner import analyze_session, corpus_files, read, session

INF = math.inf
LOOP = "int main()\n{\n  int i;\n  i = 0;\n  while (i < 10)\n    i = i + 1;\n  return i;\n}\n"


def I(lo, hi):
    return Interval(lo, hi)


def exit_i(narrow):
    res = analyze(load_text(LOOP), EvaOptions(narrow=narrow))
    return res.exit_env("main").get("i")


def test_eval_examples():
    env = Env({"x": I(1, 3), "y": I(2, 2)})
    assert eval_expr(env, Binop("+", Var("x"), Var("y"))) == I(3, 5)
    env = Env({"x": I(-2, 3)})
    assert eval_expr(env, Binop("*", Var("x"), Var("x"))) == I(-6, 9)


def test_constant_propagation():
    ast = load_text("int main()\n{\n  int x;\n  int y;\n  x = 1;\n  y = x + 2;\n  return y;\n}\n")
    res = analyze(ast)
    assert res.exit_env("main").get("y") == I(3, 3)
    y_stmt = ast.function("main").body[1]
    # the `y` in `return y` is evaluated in the env before the return
    ret = ast.function("main").body[2]
    assert res.eval_at(ret.value.node_id) == I(3, 3)
    assert res.eval_at(y_stmt.value.node_id) == I(3, 3)


def test_loop_narrowing_on():
    assert exit_i(True) == I(10, 10)


def test_loop_narrowing_off():
    assert exit_i(False) == I(10, INF)


def test_loop_matches_concrete_execution():
    ast = load_text(LOOP)
    snaps, _, _ = execute_all(ast, {}, check=True)
    ret = ast.function("main").body[-1]
    assert {s[0]["i"] for s in snaps[ret.node_id]} == {10}


@pytest.mark.parametrize("wlevel", [0, 1, 3, 20])
def test_wlevel_does_not_break_precision_with_narrowing(wlevel):
    res = analyze(load_text(LOOP), EvaOptions(wlevel=wlevel))
    assert res.exit_env("main").get("i") == I(10, 10)


def test_large_wlevel_reaches_bound_without_widening():
    res = analyze(load_text(LOOP), EvaOptions(wlevel=20, narrow=False))
    assert res.exit_env("main").get("i") == I(10, 10)


def test_requires_bound_main_parameters():
    src = "//@ requires 0 <= n && n <= 5;\nint main(int n)\n{\n  int y;\n  y = n * 2;\n  return y;\n}\n"
    res = analyze(load_text(src))
    assert res.exit_env("main").get("y") == I(0, 10)


def _statuses(text, pre=("-rte",), post=("-eva",)):
    report, _, log = session(list(pre) + list(post), [("t.mc", text)])
    return report, log


def test_assert_proved_without_hypotheses():
    src = "//@ requires 1 <= x && x <= 5;\nint main(int x)\n{\n  int y;\n  //@ assert x != 0;\n  y = x;\n  return y;\n}\n"
    report, _ = _statuses(src, pre=())
    (e,) = report.properties.emissions(0)
    assert (e.local, e.hypotheses) == (Local.TRUE, frozenset())


HYP = """//@ requires 0 <= y && y <= 3;
int main(int y)
{
  int z;
  int q;
  z = 10 / y;
  q = y * y;
  //@ assert q >= 1;
  return z;
}
"""


def test_assumed_guard_becomes_hypothesis():
    report, _ = _statuses(HYP)
    db = report.properties
    guard = next(p for p in db if p.origin == "rte")
    source = next(p for p in db if p.origin == "source")
    eva_on_source = next(e for e in db.emissions(source.id) if e.emitter == "eva")
    eva_on_guard = next(e for e in db.emissions(guard.id) if e.emitter == "eva")
    assert eva_on_guard.local is Local.MAYBE and eva_on_guard.hypotheses == frozenset()
    assert eva_on_source.local is Local.TRUE
    assert eva_on_source.hypotheses == {guard.id}
    assert db.status(source.id) is Consolidated.UNKNOWN


def test_hypothesis_set_witnessed_concretely():
    # every concrete run that passes the guard satisfies the assert
    ast = load_text(HYP)
    snaps, _, _ = execute_all(ast, {}, check=False)
    ret = ast.function("main").body[-1]
    for ints, _ in snaps[ret.node_id]:
        assert ints["y"] != 0 and ints["q"] >= 1


def test_without_assumption_no_proof():
    captured = analyze_session(HYP, ["-rte"], options=EvaOptions(assume=False))
    ast, db, res = captured
    source = next(p for p in db if p.origin == "source")
    state = res.checks[source.id]
    from miniverif.plugins.eva.evaluation import eval_pred
    assert eval_pred(state.env, source.annotation.pred) is None


def test_hypotheses_survive_joins():
    src = """//@ requires 0 <= y && y <= 3;
int main(int y)
{
  int z;
  int q;
  z = 10 / y;
  if (z > 0)
    q = 1;
  else
    q = 2;
  //@ assert y != 0;
  return q;
}
"""
    report, _ = _statuses(src)
    db = report.properties
    guard = next(p for p in db if p.origin == "rte")
    source = next(p for p in db if p.origin == "source")
    e = next(e for e in db.emissions(source.id) if e.emitter == "eva")
    assert e.local is Local.TRUE and e.hypotheses == {guard.id}


def test_vacuous_truth_after_infinite_loop():
    src = "int main()\n{\n  int i;\n  while (1)\n    i = i + 1;\n  //@ assert i == 42;\n  return i;\n}\n"
    report, log = _statuses(src, pre=())
    (e,) = report.properties.emissions(0)
    assert (e.local, e.hypotheses) == (Local.TRUE, frozenset())
    assert re.search(r"^\[eva\] info: .*vacuous", log, re.M)


def test_uncalled_function_properties_vacuous():
    src = "int dead(int a)\n{\n  int b;\n  //@ assert a > 100;\n  b = a;\n  return b;\n}\nint main() { return 0; }\n"
    report, log = _statuses(src, pre=())
    assert report.properties.status(0) is Consolidated.VALID
    assert "never reached" in log


def test_recursive_and_deep_calls_warn():
    for name in ("fact.mc", "deep_chain.mc"):
        report, _, log = session(["-eva"], [(name, read(Path(__file__).parent / "corpus/eva" / name))])
        assert "[eva] warning:" in log
        assert report.exit_code == 0


def test_no_main_analyzes_every_function():
    src = "int f(int a)\n{\n  int b;\n  b = 5;\n  //@ assert b == 5;\n  return b;\n}\n"
    report, log = _statuses(src, pre=())
    assert "no main" in log
    assert report.properties.status(0) is Consolidated.VALID


def test_eval_at_and_fn_targets_published():
    src = "int g() { return 1; }\nint h() { return 2; }\nint main()\n{\n  int (*f)();\n  int x;\n  int y;\n  x = 1;\n  y = x + 2;\n  f = &g;\n  x = f();\n  return y;\n}\n"
    got = {}

    def probe(ctx):
        eval_at = ctx.get_value("eva.eval_at", function(NODE_ID, returns=INTERVAL))
        fn_targets = ctx.get_value("eva.fn_targets", function(NODE_ID, returns=list_of(TEXT)))
        main = ctx.ast.function("main")
        ret = main.body[-1]
        call = next(n for n in walk(main) if isinstance(n, IndirectCall))
        got["y"] = eval_at(ret.value.node_id)
        got["targets"] = fn_targets(call.node_id)
        got["missing"] = eval_at(10_000)

    from miniverif.kernel_services.parameters import PluginDescriptor
    session(["-eva", "-probe"], [("t.mc", src)], extra=[PluginDescriptor("probe", probe)])
    assert got == {"y": I(3, 3), "targets": ["g"], "missing": BOTTOM}


def test_fn_targets_saturate():
    path = Path(__file__).parent / "corpus/eva/saturate.mc"
    ast, db, res = analyze_session(read(path))
    call = next(n for n in walk(ast.unit) if isinstance(n, IndirectCall))
    assert res.targets[call.node_id].any
    assert res.fn_targets(call.node_id) == ["k0", "k1", "k2", "k3", "k4"]
    assert MAX_TARGETS == 4


def test_four_targets_do_not_saturate():
    t = Targets()
    for name in ("a", "b", "c", "d"):
        t = t.join(Targets(frozenset([name])))
    assert not t.any and len(t.names) == 4
    assert t.join(Targets(frozenset(["e"]))).any


def test_iteration_budget_assertion():
    from miniverif.plugins.eva import analysis
    old = analysis.VISIT_BUDGET
    analysis.VISIT_BUDGET = 3
    try:
        with pytest.raises(AssertionError):
            analyze(load_text(LOOP))
    finally:
        analysis.VISIT_BUDGET = old


def test_never_emits_false_in_source():
    src = (Path(__file__).resolve().parent.parent / "src/miniverif/plugins/eva").rglob("*.py")
    for path in src:
        assert "Local.FALSE" not in path.read_text(), path


@pytest.mark.parametrize("path", corpus_files("eva") + corpus_files("fnptr"), ids=lambda p: p.name)
def test_never_emits_false_at_runtime(path):
    report, _, _ = session(["-rte", "-eva", "-rte-overflow", "on"], [(path.name, read(path))])
    assert all(e.local is not Local.FALSE for e in report.properties.emissions()
               if e.emitter == "eva")


# -- soundness against exhaustive concrete execution ---------------------------

CONFIGS = {
    "assume": (["-rte"], EvaOptions(), True),
    "no-assume": ([], EvaOptions(assume=False), False),
    "no-narrow-w0": (["-rte"], EvaOptions(narrow=False, wlevel=0), True),
}


def soundness_violations(path, config):
    pre, options, check = CONFIGS[config]
    ast, db, res = analyze_session(read(path), pre, path.name, options)
    asserts = {}
    for p in db:
        if p.kind == ASSERTION:
            asserts.setdefault(p.attach, []).append((p.annotation.pred, p.origin))
    snaps, runs, box = execute_all(ast, asserts, check)
    bad = []
    for sid, states in snaps.items():
        env = res.env_at(sid)
        for ints, arrays in states:
            if env.is_bottom:
                bad.append((sid, "reached but analyzed unreachable"))
                break
            for k, v in ints.items():
                if not itv.leq(itv.const(v), env.get(k)):
                    bad.append((sid, k, v, env.get(k)))
            for k, cells in arrays.items():
                for v in cells:
                    if not itv.leq(itv.const(v), env.array(k)):
                        bad.append((sid, k + "[]", v, env.array(k)))
    return bad, runs, box


@pytest.mark.parametrize("config", sorted(CONFIGS))
@pytest.mark.parametrize("path", corpus_files("eva"), ids=lambda p: p.name)
def test_soundness(path, config):
    bad, runs, box = soundness_violations(path, config)
    assert runs > 0
    assert len(box) <= 3 and all(len(r) <= 20 for r in box)
    assert bad == []


def test_oracle_detects_an_unsound_table():
    path = corpus_files("eva")[0]
    ast, db, res = analyze_session(read(path), [], path.name)
    sid = next(iter(res.table))
    env = res.table[sid].env
    squeezed = {k: itv.const(0) for k in env.ints}
    from miniverif.plugins.eva.domain import State
    res.table = {k: State(Env(squeezed)) for k in res.table}
    snaps, _, _ = execute_all(ast, {}, False)
    violations = sum(
        1 for s, states in snaps.items() for ints, _ in states
        for k, v in ints.items() if not itv.leq(itv.const(v), res.env_at(s).get(k)))
    assert violations > 0


# -- monotonicity of expression evaluation ------------------------------------

NAMES = ["a", "b", "c"]
leaf = st.one_of(st.integers(-5, 5).map(IntLit), st.sampled_from(NAMES).map(Var))


def grow(inner):
    return st.one_of(
        st.builds(Binop, st.sampled_from(["+", "-", "*", "/", "%"]), inner, inner),
        st.builds(lambda e: Unop("-", e), inner),
    )


exprs = st.recursive(leaf, grow, max_leaves=16)


def depth(e):
    if isinstance(e, Binop):
        return 1 + max(depth(e.left), depth(e.right))
    if isinstance(e, Unop):
        return 1 + depth(e.operand)
    return 0


@st.composite
def env_pairs(draw):
    small, big = {}, {}
    for n in NAMES:
        lo, hi = sorted((draw(st.integers(-6, 6)), draw(st.integers(-6, 6))))
        extra_lo = draw(st.sampled_from([0, 1, 3, INF]))
        extra_hi = draw(st.sampled_from([0, 1, 3, INF]))
        small[n] = I(lo, hi)
        big[n] = I(lo - extra_lo, hi + extra_hi)
    return Env(small), Env(big)


@settings(max_examples=400, deadline=None)
@given(exprs.filter(lambda e: depth(e) <= 4), env_pairs())
def test_eval_expr_monotone(expr, envs):
    small, big = envs
    assert itv.leq(eval_expr(small, expr), eval_expr(big, expr))

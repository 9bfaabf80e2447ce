import pytest

from miniverif.kernel_internals.frontend import load_text
from miniverif.kernel_services.ast import Annotation
from miniverif.kernel_services.printer import print_expr
from miniverif.kernel_services.properties import ASSERTION, Local
from miniverif.plugins import rte
from miniverif.plugins.rte import generate_guards
from oracles import count_rte_sites
from runner import corpus_files, read, session


def wrap(body, decls="int x; int y; int z; int i; int j; int a[4];"):
    return f"int main()\n{{\n  {decls}\n  {body}\n  return 0;\n}}\n"


def preds(body, **kw):
    return [print_expr(p) for _, p in generate_guards(load_text(wrap(body)), **kw)]


def test_division_guard():
    assert preds("z = x / y;") == ["y != 0"]


def test_literal_divisor_still_guarded():
    assert preds("z = 10 / 5;") == ["5 != 0"]


def test_remainder_guard():
    assert preds("z = x % (y - 1);") == ["y - 1 != 0"]


def test_array_guards_one_per_access():
    assert preds("a[i] = a[j];") == ["0 <= i && i < 4", "0 <= j && j < 4"]


def test_overflow_off_by_default():
    assert preds("z = x + y * 2;") == []


@pytest.mark.parametrize("bits, lo, hi", [(16, -32768, 32767), (32, -2147483648, 2147483647)])
def test_overflow_bounds_follow_machdep(bits, lo, hi):
    got = preds("z = x + y * 2;", overflow=True, bits=bits)
    assert got == [f"{lo} <= x + y * 2 && x + y * 2 <= {hi}"]


def test_overflow_one_guard_per_top_level_arith():
    got = preds("z = (x + 1) / (y * 2);", overflow=True, div=False)
    assert got == ["-2147483648 <= x + 1 && x + 1 <= 2147483647",
                   "-2147483648 <= y * 2 && y * 2 <= 2147483647"]


def test_classes_can_be_switched_off():
    assert preds("a[i] = x / y;", div=False) == ["0 <= i && i < 4"]
    assert preds("a[i] = x / y;", bounds=False) == ["y != 0"]


def test_guards_attach_to_enclosing_statement():
    src = wrap("if (x / y > 0) z = a[i];")
    ast = load_text(src)
    fn = ast.function("main")
    guards = generate_guards(ast)
    assert [type(s).__name__ for s, _ in guards] == ["If", "Assign"]


def test_session_emits_maybe_and_is_idempotent():
    src = [("t.mc", wrap("z = x / y; a[i] = a[j];"))]
    report, kernel, _ = session(["-rte"], src)
    db = report.properties
    assert len(db) == 3
    assert all((e.emitter, e.local, e.hypotheses) == ("rte", Local.MAYBE, frozenset())
               for e in db.emissions())
    ctx = kernel.context("rte")
    rte.rte_main(ctx)
    assert len(db) == 3


def test_all_classes_off_warns():
    _, _, log = session(["-rte", "-rte-div", "off", "-rte-bounds", "off"], [("t.mc", wrap("z = 1;"))])
    assert "[rte] warning:" in log


@pytest.mark.parametrize("overflow", [False, True])
@pytest.mark.parametrize("path", corpus_files("eva") + corpus_files("fnptr") + corpus_files("pipeline"),
                         ids=lambda p: p.name)
def test_counts_match_independent_counter(path, overflow):
    args = ["-rte"] + (["-rte-overflow", "on"] if overflow else [])
    report, kernel, _ = session(args, [(path.name, read(path))])
    generated = [p for p in report.properties if p.origin == "rte"]
    assert len(generated) == count_rte_sites(kernel.ast, overflow=overflow)

"""Kernel glue for the value analysis: options, emissions and the published API."""

from __future__ import annotations

from ...kernel_services.context import KernelContext
from ...kernel_services.interval import IntervalLike
from ...kernel_services.parameters import ParameterSpec, PluginDescriptor, switch
from ...kernel_services.properties import Local
from ...libraries.witness import INTERVAL, NODE_ID, TEXT, function, list_of
from .analysis import AnalysisResult, EvaOptions, analyze
from .evaluation import eval_pred

NAME = "eva"
MAX_WLEVEL = 64

EVAL_AT = "eva.eval_at"
EVAL_AT_TYPE = function(NODE_ID, returns=INTERVAL)
FN_TARGETS = "eva.fn_targets"
FN_TARGETS_TYPE = function(NODE_ID, returns=list_of(TEXT))


def options_from(ctx: KernelContext) -> EvaOptions:
    return EvaOptions(
        wlevel=ctx.option("-eva-wlevel"),
        narrow=ctx.switch("-eva-narrow"),
        assume=ctx.switch("-eva-assume-asserts"),
    )


def emit_statuses(ctx: KernelContext, result: AnalysisResult) -> dict:
    counts = {"valid": 0, "alarm": 0, "vacuous": 0, "unreached": 0}
    for prop in ctx.properties:
        state = result.checks.get(prop.id)
        if state is None:
            counts["unreached"] += 1
            ctx.info(f"property {prop.id} is never reached; true vacuously", prop.location)
            ctx.emit(prop.id, Local.TRUE)
            continue
        # a property is never its own hypothesis: it is checked before
        # being assumed, so the earlier occurrences justify the later ones
        hyps = state.hyps - {prop.id}
        if state.env.is_bottom:
            counts["vacuous"] += 1
            ctx.info(f"property {prop.id} is unreachable; true vacuously", prop.location)
            ctx.emit(prop.id, Local.TRUE, hyps)
        elif eval_pred(state.env, prop.annotation.pred) is True:
            counts["valid"] += 1
            ctx.emit(prop.id, Local.TRUE, hyps)
        else:
            counts["alarm"] += 1
            ctx.emit(prop.id, Local.MAYBE)
    return counts


def publish_api(ctx: KernelContext, result: AnalysisResult) -> None:
    def eval_at(node_id: int) -> IntervalLike:
        return result.eval_at(node_id)

    def fn_targets(node_id: int) -> list:
        return result.fn_targets(node_id)

    ctx.register_value(EVAL_AT, EVAL_AT_TYPE, eval_at)
    ctx.register_value(FN_TARGETS, FN_TARGETS_TYPE, fn_targets)


def eva_main(ctx: KernelContext) -> None:
    result = analyze(ctx.ast, options_from(ctx), list(ctx.properties), warn=ctx.warning)
    counts = emit_statuses(ctx, result)
    publish_api(ctx, result)
    ctx.info("{valid} proved, {alarm} alarms, {vacuous} unreachable, "
             "{unreached} never reached".format(**counts))


DESCRIPTOR = PluginDescriptor(
    name=NAME,
    main=eva_main,
    help="interval value analysis; proves annotations and publishes its results",
    parameters=(
        ParameterSpec("-eva-wlevel", "int", 3, "joins at a loop head before widening",
                      bounds=(0, MAX_WLEVEL)),
        switch("-eva-narrow", True, "one descending iteration after widening"),
        switch("-eva-assume-asserts", True, "assume unproved properties on the path after them"),
    ),
)


def register(kernel) -> None:
    kernel.register_plugin(DESCRIPTOR)

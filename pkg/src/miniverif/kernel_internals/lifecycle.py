"""The kernel: plugin registration and the staged execution of a session.

Stages run in a fixed order::

    Boot -> Configure -> Load -> Mains -> Report -> Exit

The kernel never names a concrete plugin.  It only knows the descriptors
handed to :meth:`Kernel.register_plugin` during Boot.
"""

from __future__ import annotations

import enum
import traceback
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple, Union

from ..kernel_services.ast import Call, TypedAst, walk
from ..kernel_services.context import KernelContext
from ..kernel_services.errors import (
    DuplicatePlugin, FrontendError, InvalidName, StageViolation, TypecheckFailure,
)
from ..kernel_services.log import LogEvent, Logger
from ..kernel_services.parameters import (
    AFTER_LOAD, AT_EXIT, BEFORE_MAINS, KERNEL, PLUGIN_NAME_RE, HookPoint,
    PluginDescriptor, after_plugin_main,
)
from ..kernel_services.properties import (
    ASSERTION, POSTCONDITION, PRECONDITION, Consolidated, PropertyDB,
)
from .frontend import load_texts
from .options import Config, OptionTable
from .registry import ValueRegistry

RESERVED_NAMES = (KERNEL, "source")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_LOAD = 2
EXIT_FAILURE = 3
EXIT_UNPROVED = 4


class Stage(enum.IntEnum):
    BOOT = 0
    CONFIGURE = 1
    LOAD = 2
    MAINS = 3
    REPORT = 4
    EXIT = 5


Source = Union[str, Tuple[str, str]]


@dataclass
class ExitReport:
    exit_code: int
    hook_trace: List[str] = field(default_factory=list)
    executed_mains: List[str] = field(default_factory=list)
    properties: Optional[PropertyDB] = None
    statuses: Dict[int, Consolidated] = field(default_factory=dict)
    log_lines: List[str] = field(default_factory=list)


class Kernel:
    def __init__(self, log_stream: Optional[TextIO] = None):
        self.stage = Stage.BOOT
        self.logger = Logger(log_stream)
        self.options = OptionTable()
        self.registry = ValueRegistry()
        self.plugins: Dict[str, PluginDescriptor] = {}
        self.hooks: Dict[HookPoint, List[Tuple[str, Callable]]] = {}
        self.hook_trace: List[str] = []
        self.executed_mains: List[str] = []
        self.config: Optional[Config] = None
        self.ast: Optional[TypedAst] = None
        self.properties: Optional[PropertyDB] = None
        self._panicked = False

    # -- Boot ---------------------------------------------------------------

    def register_plugin(self, desc: PluginDescriptor) -> int:
        if self.stage is not Stage.BOOT:
            raise StageViolation(f"plugin {desc.name} registered after Boot")
        if not PLUGIN_NAME_RE.match(desc.name) or desc.name in RESERVED_NAMES:
            raise InvalidName(f"invalid plugin name {desc.name!r}")
        if desc.name in self.plugins:
            raise DuplicatePlugin(desc.name)
        self.options.add_plugin(desc)
        self.plugins[desc.name] = desc
        for point, callback in desc.hooks:
            self.register_hook(point, desc.name, callback)
        return len(self.plugins) - 1

    def list_plugins(self) -> List[str]:
        return list(self.plugins)

    def register_hook(self, point: HookPoint, owner: str, callback: Callable) -> None:
        if self.stage not in (Stage.BOOT, Stage.CONFIGURE):
            raise StageViolation(f"hook for {point} registered during {self.stage.name}")
        self.hooks.setdefault(point, []).append((owner, callback))

    def parse_command_line(self, args: Sequence[str]) -> Config:
        """Raises a UsageError subclass on bad input (exit code 1)."""
        config = self.options.parse(args)
        self.config = config
        self.stage = Stage.CONFIGURE
        if config["-verbose"]:
            self.logger.verbosity = "debug"
        elif config["-quiet"]:
            self.logger.verbosity = "warning"
        return config

    def help_text(self) -> str:
        return self.options.help_text()

    # -- messages -----------------------------------------------------------

    def log(self, event: LogEvent) -> None:
        self.logger.log(event)

    def _klog(self, severity: str, message: str, location=None) -> None:
        self.log(LogEvent(severity, KERNEL, message, location))

    # -- run ----------------------------------------------------------------

    def context(self, name: str) -> KernelContext:
        return KernelContext(self, name)

    def run(self, config: Config, sources: Optional[Sequence[Source]] = None) -> ExitReport:
        """Run every stage after Boot.  ``sources`` are paths or (file, text) pairs."""
        self.config = config
        sources = list(config.files if sources is None else sources)
        self.stage = Stage.CONFIGURE
        for name in config.enabled:
            desc = self.plugins[name]
            if desc.configure is not None:
                self._guarded(name, "configure", lambda: desc.configure(self.context(name)))

        self.stage = Stage.LOAD
        loaded = self._load(sources)
        if loaded:
            self._fire(AFTER_LOAD)
            self.stage = Stage.MAINS
            self._fire(BEFORE_MAINS)
            for name in config.enabled:
                desc = self.plugins[name]
                self.executed_mains.append(name)
                self._guarded(name, "main", lambda: desc.main(self.context(name)))
                self._fire(after_plugin_main(name))
            self.stage = Stage.REPORT
            statuses = self.properties.consolidate()
            for pid, status in statuses.items():
                if status is Consolidated.INCONSISTENT:
                    prop = self.properties[pid]
                    self._klog("error", f"inconsistent statuses on property {pid} "
                               f"({prop.predicate})", prop.location)
        else:
            statuses = {}

        self.stage = Stage.EXIT
        self._fire(AT_EXIT)
        return ExitReport(
            exit_code=self._exit_code(loaded, statuses),
            hook_trace=list(self.hook_trace),
            executed_mains=list(self.executed_mains),
            properties=self.properties,
            statuses=statuses,
            log_lines=list(self.logger.lines),
        )

    def _exit_code(self, loaded: bool, statuses: Dict[int, Consolidated]) -> int:
        if not loaded:
            return EXIT_LOAD
        if self._panicked or self.logger.failed or Consolidated.INCONSISTENT in statuses.values():
            return EXIT_FAILURE
        if self.config["-report-unproved-exit"] and any(
                s is not Consolidated.VALID for s in statuses.values()):
            return EXIT_UNPROVED
        return EXIT_OK

    def _load(self, sources: Sequence[Source]) -> bool:
        pairs = []
        try:
            for src in sources:
                if isinstance(src, tuple):
                    pairs.append(src)
                else:
                    with open(src, encoding="utf-8") as f:
                        pairs.append((str(src), f.read()))
            self.ast = load_texts(pairs)
        except OSError as exc:
            self._klog("error", f"cannot read {exc.filename}: {exc.strerror}")
            return False
        except UnicodeDecodeError as exc:
            self._klog("error", f"source is not valid UTF-8: {exc}")
            return False
        except FrontendError as exc:
            self._klog("error", f"{exc.kind}: {exc.message}", exc.location)
            return False
        except TypecheckFailure as exc:
            for err in exc.errors:
                self._klog("error", f"{err.kind}: {err.message}", err.location)
            return False
        self.properties = PropertyDB(self.ast.index, lambda m: self._klog("warning", m))
        self._register_source_properties(self.ast)
        return True

    def _register_source_properties(self, ast: TypedAst) -> None:
        db = self.properties
        for node in walk(ast.unit):
            if hasattr(node, "asserts"):
                for annot in node.asserts:
                    db.register_property(annot, ASSERTION, node.node_id)
        for fn in ast.functions:
            for annot in fn.ensures:
                db.register_property(annot, POSTCONDITION, fn.node_id)
        for node in walk(ast.unit):
            if isinstance(node, Call):
                callee = ast.function(node.name)
                for annot in callee.requires:
                    db.register_property(annot, PRECONDITION, node.node_id)

    def _guarded(self, name: str, what: str, thunk: Callable[[], None]) -> None:
        try:
            thunk()
        except Exception as exc:  # a plugin failure must not take the session down
            self._panicked = True
            detail = traceback.format_exception_only(type(exc), exc)[-1].strip()
            self.log(LogEvent("fatal", name, f"plugin {what} failed: {detail}"))

    def _fire(self, point: HookPoint) -> None:
        self.hook_trace.append(str(point))
        enabled = set(self.config.enabled) if self.config else set()
        for owner, callback in list(self.hooks.get(point, ())):
            if owner != KERNEL and owner not in enabled:
                continue
            try:
                callback(self.context(owner))
            except Exception as exc:
                detail = traceback.format_exception_only(type(exc), exc)[-1].strip()
                self.log(LogEvent("error", owner, f"hook {point} failed: {detail}"))

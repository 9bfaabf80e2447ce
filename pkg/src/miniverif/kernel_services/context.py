"""The handle through which a plugin talks to the kernel.

A plugin never sees another plugin: it reads the AST, the options and the
property database here, and exchanges values with other plugins through
the typed plugin database (:meth:`register_value` / :meth:`get_value`).
"""

from __future__ import annotations

from typing import Any, Callable, Iterable, Optional, Tuple

from ..libraries.witness import Witness
from .ast import Annotation, Location, TypedAst
from .log import LogEvent
from .parameters import HookPoint
from .properties import Local, PropertyDB


class KernelContext:
    def __init__(self, kernel, name: str):
        self._kernel = kernel
        self.name = name

    # -- configuration ------------------------------------------------------

    def option(self, key: str) -> Any:
        return self._kernel.config[key]

    def switch(self, key: str) -> bool:
        """Value of an ``{on|off}`` option."""
        return self.option(key) == "on"

    @property
    def machdep(self) -> int:
        return int(self._kernel.config["-machdep"])

    @property
    def enabled_plugins(self) -> Tuple[str, ...]:
        return self._kernel.config.enabled

    # -- AST and properties -------------------------------------------------

    @property
    def ast(self) -> TypedAst:
        return self._kernel.ast

    @property
    def properties(self) -> PropertyDB:
        return self._kernel.properties

    def register_property(self, annotation: Annotation, kind: str, attach: int) -> int:
        return self._kernel.properties.register_property(annotation, kind, attach, self.name)

    def emit(self, pid: int, local: Local, hypotheses: Iterable[int] = ()) -> None:
        self._kernel.properties.emit_status(pid, self.name, local, hypotheses)

    # -- messages -----------------------------------------------------------

    def log(self, severity: str, message: str, location: Optional[Location] = None) -> None:
        self._kernel.log(LogEvent(severity, self.name, message, location))

    def debug(self, message: str, location: Optional[Location] = None) -> None:
        self.log("debug", message, location)

    def info(self, message: str, location: Optional[Location] = None) -> None:
        self.log("info", message, location)

    def warning(self, message: str, location: Optional[Location] = None) -> None:
        self.log("warning", message, location)

    def error(self, message: str, location: Optional[Location] = None) -> None:
        self.log("error", message, location)

    # -- plugin database and hooks ------------------------------------------

    def register_value(self, name: str, witness: Witness, value: Any) -> None:
        self._kernel.registry.register(self.name, name, witness, value)

    def get_value(self, name: str, expected: Witness) -> Any:
        return self._kernel.registry.get(name, expected)

    def register_hook(self, point: HookPoint, callback: Callable[["KernelContext"], None]) -> None:
        self._kernel.register_hook(point, self.name, callback)

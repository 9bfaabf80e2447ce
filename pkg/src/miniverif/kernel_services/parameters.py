"""Plugin descriptors, scoped parameters and hook points."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence, Tuple

from .errors import BadValue, InvalidParameter

PLUGIN_NAME_RE = re.compile(r"^[a-z][a-z0-9_]*$")
KINDS = ("flag", "int", "string", "enum")
KERNEL = "kernel"


@dataclass(frozen=True)
class ParameterSpec:
    """One command-line option.

    ``scope`` is ``"kernel"`` or the owning plugin's name.  Flags take no
    argument; other kinds consume the next command-line word.
    """

    key: str
    kind: str
    default: Any
    help: str = ""
    values: Tuple[str, ...] = ()
    scope: str = KERNEL
    bounds: Optional[Tuple[int, int]] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidParameter(f"{self.key}: unknown kind {self.kind!r}")
        if not self.key.startswith("-") or len(self.key) < 2:
            raise InvalidParameter(f"{self.key!r}: keys start with '-'")
        if self.kind == "flag" and self.default not in (True, False):
            raise InvalidParameter(f"{self.key}: flag default must be a bool")
        if self.kind == "int" and (isinstance(self.default, bool) or not isinstance(self.default, int)):
            raise InvalidParameter(f"{self.key}: int default must be an int")
        if self.kind == "string" and not isinstance(self.default, str):
            raise InvalidParameter(f"{self.key}: string default must be a str")
        if self.kind == "enum":
            object.__setattr__(self, "values", tuple(self.values))
            if self.default not in self.values:
                raise InvalidParameter(f"{self.key}: default {self.default!r} not in {self.values}")

    @property
    def takes_argument(self) -> bool:
        return self.kind != "flag"

    def parse(self, text: str) -> Any:
        if self.kind == "int":
            try:
                value = int(text)
            except ValueError:
                raise BadValue(self.key, text, "expected an integer") from None
            if self.bounds and not self.bounds[0] <= value <= self.bounds[1]:
                raise BadValue(self.key, text, "expected %d..%d" % self.bounds)
            return value
        if self.kind == "enum" and text not in self.values:
            raise BadValue(self.key, text, "expected one of " + ", ".join(self.values))
        return text

    def usage(self) -> str:
        if self.kind == "flag":
            arg = ""
        elif self.kind == "enum":
            arg = " {" + "|".join(self.values) + "}"
        else:
            arg = f" <{self.kind}>"
        return f"{self.key}{arg}"


def flag(key: str, help: str = "") -> ParameterSpec:
    return ParameterSpec(key, "flag", False, help)


def switch(key: str, default: bool, help: str = "") -> ParameterSpec:
    """An ``{on|off}`` option."""
    return ParameterSpec(key, "enum", "on" if default else "off", help, ("on", "off"))


@dataclass(frozen=True)
class HookPoint:
    """Fixed lifecycle moments at which hooks run."""

    name: str
    plugin: Optional[str] = None

    def __str__(self) -> str:
        return f"{self.name}({self.plugin})" if self.plugin else self.name


AFTER_LOAD = HookPoint("AfterLoad")
BEFORE_MAINS = HookPoint("BeforeMains")
AT_EXIT = HookPoint("AtExit")


def after_plugin_main(plugin: str) -> HookPoint:
    return HookPoint("AfterPluginMain", plugin)


@dataclass(frozen=True)
class PluginDescriptor:
    """What a plugin hands to the kernel at boot.

    ``configure`` runs while options are being handled, ``main`` in the
    Mains stage.  Both receive a :class:`KernelContext`.
    """

    name: str
    main: Callable[[Any], None]
    version: str = "0.1"
    help: str = ""
    parameters: Sequence[ParameterSpec] = field(default_factory=tuple)
    configure: Optional[Callable[[Any], None]] = None
    hooks: Sequence[Tuple[HookPoint, Callable[[Any], None]]] = field(default_factory=tuple)

    @property
    def enabling_flag(self) -> str:
        return "-" + self.name

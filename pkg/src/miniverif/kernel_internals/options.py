"""Command-line option table and parser."""

from __future__ import annotations

import dataclasses

from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from ..kernel_services.errors import BadValue, InvalidName, InvalidParameter, UnknownOption
from ..kernel_services.parameters import KERNEL, ParameterSpec, PluginDescriptor

KERNEL_PARAMETERS = (
    ParameterSpec("-machdep", "enum", "32", "integer width of the target machine",
                  ("16", "32", "64")),
    ParameterSpec("-quiet", "flag", False, "only show warnings and errors"),
    ParameterSpec("-verbose", "flag", False, "also show debug messages"),
    ParameterSpec("-report-format", "enum", "text", "format of the property report",
                  ("text", "json")),
    ParameterSpec("-report-unproved-exit", "flag", False,
                  "exit with code 4 when some property is not Valid"),
    ParameterSpec("-help", "flag", False, "print this help and exit"),
)


@dataclass(frozen=True)
class Config:
    values: Mapping[str, Any]
    enabled: Tuple[str, ...]
    files: Tuple[str, ...]

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    @property
    def help(self) -> bool:
        return bool(self.values.get("-help"))


class OptionTable:
    def __init__(self) -> None:
        self.specs: Dict[str, ParameterSpec] = {}
        self.owners: Dict[str, str] = {}
        self.plugins: Dict[str, PluginDescriptor] = {}
        for spec in KERNEL_PARAMETERS:
            self.specs[spec.key] = spec
            self.owners[spec.key] = KERNEL

    def check_plugin(self, desc: PluginDescriptor) -> List[ParameterSpec]:
        """Validate the options of a plugin and return them, enabling flag first."""
        flag = desc.enabling_flag
        for key, owner in self.owners.items():
            if owner == KERNEL and (key == flag or key.startswith(flag + "-")):
                raise InvalidName(f"plugin name {desc.name!r} clashes with kernel option {key}")
        specs = [ParameterSpec(flag, "flag", False, f"enable {desc.name}", scope=desc.name)]
        seen = {flag}
        for spec in desc.parameters:
            if spec.key == flag:
                continue
            if not spec.key.startswith(flag + "-"):
                raise InvalidParameter(
                    f"option {spec.key} of plugin {desc.name} must start with {flag}-")
            if spec.key in seen:
                raise InvalidParameter(f"option {spec.key} declared twice")
            seen.add(spec.key)
            if spec.scope != desc.name:
                spec = dataclasses.replace(spec, scope=desc.name)
            specs.append(spec)
        return specs

    def add_plugin(self, desc: PluginDescriptor) -> None:
        for spec in self.check_plugin(desc):
            self.specs[spec.key] = spec
            self.owners[spec.key] = desc.name
        self.plugins[desc.name] = desc

    def parse(self, args: Sequence[str]) -> Config:
        values = {key: spec.default for key, spec in self.specs.items()}
        enabled: List[str] = []
        files: List[str] = []
        i = 0
        while i < len(args):
            arg = args[i]
            i += 1
            if not arg.startswith("-") or arg == "-":
                files.append(arg)
                continue
            spec = self.specs.get(arg)
            if spec is None:
                raise UnknownOption(self._unknown(arg))
            if spec.takes_argument:
                if i >= len(args):
                    raise BadValue(arg, "", "missing argument")
                values[arg] = spec.parse(args[i])
                i += 1
            else:
                values[arg] = True
                owner = self.owners[arg]
                if owner != KERNEL and arg == "-" + owner and owner not in enabled:
                    enabled.append(owner)
        return Config(values, tuple(enabled), tuple(files))

    def _unknown(self, arg: str) -> str:
        prefix = arg[1:].split("-", 1)[0]
        if prefix not in self.plugins and "-" + prefix not in self.specs:
            return f"unknown option {arg} (no plugin named {prefix!r})"
        return f"unknown option {arg}"

    def help_text(self) -> str:
        lines = ["usage: miniverif [kernel flags] [plugin flags] <files...>", "",
                 "kernel options:"]
        lines += self._option_lines(KERNEL)
        for name in sorted(self.plugins):
            desc = self.plugins[name]
            lines.append("")
            lines.append(f"plugin {name} {desc.version}: {desc.help}".rstrip())
            lines += self._option_lines(name)
        return "\n".join(lines) + "\n"

    def _option_lines(self, owner: str) -> List[str]:
        out = []
        for key, spec in self.specs.items():
            if self.owners[key] != owner:
                continue
            default = "" if spec.kind == "flag" else f" (default: {spec.default})"
            out.append(f"  {spec.usage():<28} {spec.help}{default}")
        return out

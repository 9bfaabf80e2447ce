"""Uniform message output shared by the kernel and every plugin.

Every line has the shape ``[source] severity: message`` and matches
:data:`LOG_LINE_RE`.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from typing import List, Optional, TextIO

from .ast import Location

SEVERITIES = ("debug", "info", "warning", "error", "fatal")
LOG_LINE_RE = re.compile(
    r"^\[(kernel|[a-z][a-z0-9_]*)\] (debug|info|warning|error|fatal): [^\n]*$")


@dataclass(frozen=True)
class LogEvent:
    severity: str
    source: str
    message: str
    location: Optional[Location] = None

    def __post_init__(self) -> None:
        if self.severity not in SEVERITIES:
            raise ValueError(f"unknown severity {self.severity!r}")

    def render(self) -> str:
        message = " ".join(self.message.splitlines())
        if self.location is not None:
            message = f"{self.location.file}:{self.location.line}: {message}"
        return f"[{self.source}] {self.severity}: {message}"


class Logger:
    def __init__(self, stream: Optional[TextIO] = None, verbosity: str = "info"):
        self.stream = stream if stream is not None else sys.stderr
        self.verbosity = verbosity
        self.lines: List[str] = []
        self.events: List[LogEvent] = []
        self.failed = False

    def log(self, event: LogEvent) -> None:
        self.events.append(event)
        if event.severity == "fatal":
            self.failed = True
        if SEVERITIES.index(event.severity) < SEVERITIES.index(self.verbosity):
            return
        line = event.render()
        self.lines.append(line)
        print(line, file=self.stream)

    def count(self, severity: str) -> int:
        return sum(1 for e in self.events if e.severity == severity)

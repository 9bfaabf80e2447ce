"""Exceptions raised by kernel services."""

from __future__ import annotations

from typing import Iterable, List, Optional

from .ast import Location


class MiniverifError(Exception):
    """Base class of every error raised on purpose by the framework."""


# -- front-end ---------------------------------------------------------------


class FrontendError(MiniverifError):
    kind = "FrontendError"

    def __init__(self, location: Location, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


class IllegalCharacter(FrontendError):
    kind = "IllegalCharacter"


class MiniSyntaxError(FrontendError):
    kind = "SyntaxError"

    def __init__(self, location: Location, expected: Iterable[str], found: str = ""):
        self.expected = tuple(expected)
        self.found = found
        message = "expected " + " or ".join(self.expected)
        if found:
            message += f", found {found}"
        super().__init__(location, message)


class TypeError_(FrontendError):
    """One typing problem; ``kind`` names the category."""

    def __init__(self, kind: str, location: Location, message: str):
        super().__init__(location, message)
        self.kind = kind


class TypecheckFailure(MiniverifError):
    """All typing problems found in a unit."""

    def __init__(self, errors: List[TypeError_]):
        super().__init__("\n".join(str(e) for e in errors))
        self.errors = errors


# -- kernel ------------------------------------------------------------------


class KernelError(MiniverifError):
    pass


class DuplicatePlugin(KernelError):
    pass


class InvalidName(KernelError):
    pass


class InvalidParameter(KernelError):
    pass


class StageViolation(KernelError):
    pass


class UsageError(KernelError):
    pass


class UnknownOption(UsageError):
    pass


class BadValue(UsageError):
    def __init__(self, key: str, text: str, reason: str = ""):
        super().__init__(f"bad value {text!r} for {key}" + (f": {reason}" if reason else ""))
        self.key = key
        self.text = text


class DuplicateValue(KernelError):
    pass


class ForeignPrefix(KernelError):
    pass


class NotFound(KernelError):
    """The value is not registered: treat the providing plugin as absent."""


class TypeMismatch(KernelError):
    def __init__(self, name: str, stored, expected):
        super().__init__(f"{name}: stored witness {stored}, expected {expected}")
        self.stored = stored
        self.expected = expected


# -- properties --------------------------------------------------------------


class PropertyError(MiniverifError):
    pass


class BadAttachPoint(PropertyError):
    pass


class UnknownProperty(PropertyError):
    pass


class SelfHypothesis(PropertyError):
    pass


class Unsupported(MiniverifError):
    def __init__(self, construct: str, location: Optional[Location] = None):
        super().__init__(construct)
        self.location = location

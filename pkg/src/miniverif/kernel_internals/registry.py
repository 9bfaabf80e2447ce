"""Plugin database: named values tagged with a runtime type witness."""

from __future__ import annotations

from typing import Any, Dict, List, Tuple

from ..kernel_services.errors import DuplicateValue, ForeignPrefix, NotFound, TypeMismatch
from ..libraries.witness import Witness, is_witness


class ValueRegistry:
    def __init__(self) -> None:
        self._values: Dict[str, Tuple[Witness, Any]] = {}

    def register(self, owner: str, name: str, witness: Witness, value: Any) -> None:
        prefix, dot, item = name.partition(".")
        if not dot or not item or prefix != owner:
            raise ForeignPrefix(f"{owner} cannot register {name!r}: names must start with '{owner}.'")
        if not is_witness(witness):
            raise TypeError(f"{witness!r} is not a type witness")
        if name in self._values:
            raise DuplicateValue(f"{name} is already registered")
        self._values[name] = (witness, value)

    def get(self, name: str, expected: Witness) -> Any:
        try:
            stored, value = self._values[name]
        except KeyError:
            raise NotFound(name) from None
        if stored != expected:
            raise TypeMismatch(name, stored, expected)
        return value

    def names(self) -> List[str]:
        return sorted(self._values)

    def __contains__(self, name: str) -> bool:
        return name in self._values

"""Runtime type witnesses.

A witness is a structural description of a monomorphic type.  The algebra
is closed: values can only be described in terms of the base kinds below,
list, pair and function constructors.  Equality is plain structural
equality of the frozen dataclasses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

BASE_KINDS = ("int", "bool", "text", "node-id", "interval")


@dataclass(frozen=True)
class Base:
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in BASE_KINDS:
            raise ValueError(f"unknown base kind {self.kind!r}")

    def __str__(self) -> str:
        return self.kind


@dataclass(frozen=True)
class ListOf:
    item: "Witness"

    def __str__(self) -> str:
        return f"list-of({self.item})"


@dataclass(frozen=True)
class Pair:
    first: "Witness"
    second: "Witness"

    def __str__(self) -> str:
        return f"pair({self.first}, {self.second})"


@dataclass(frozen=True)
class Function:
    args: Tuple["Witness", ...]
    result: "Witness"

    def __post_init__(self) -> None:
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def __str__(self) -> str:
        args = ", ".join(str(a) for a in self.args)
        return f"function({args} -> {self.result})"


Witness = Union[Base, ListOf, Pair, Function]

INT = Base("int")
BOOL = Base("bool")
TEXT = Base("text")
NODE_ID = Base("node-id")
INTERVAL = Base("interval")


def list_of(item: Witness) -> ListOf:
    return ListOf(item)


def pair(first: Witness, second: Witness) -> Pair:
    return Pair(first, second)


def function(*args: Witness, returns: Witness) -> Function:
    """``function(NODE_ID, returns=INTERVAL)`` describes node-id -> interval."""
    return Function(tuple(args), returns)


def is_witness(obj: object) -> bool:
    if isinstance(obj, Base):
        return True
    if isinstance(obj, ListOf):
        return is_witness(obj.item)
    if isinstance(obj, Pair):
        return is_witness(obj.first) and is_witness(obj.second)
    if isinstance(obj, Function):
        return all(is_witness(a) for a in obj.args) and is_witness(obj.result)
    return False

"""Property database and status consolidation.

A property is a proof obligation derived from an annotation.  Analyzers
emit local statuses on properties, each under a set of hypotheses (other
properties).  :func:`consolidate_emissions` combines them:

* a property is *justified* when some True emission has only justified
  hypotheses (least fixpoint, so hypothesis cycles never justify);
* it is *refuted* when some False emission has only justified hypotheses;
* Valid = justified only, Invalid = refuted only, Inconsistent = both,
  Unknown = neither.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from ..libraries.horn import least_model
from .ast import (
    Annotation, Call, FunctionDef, Location, NodeIndex, Stmt,
)
from .errors import BadAttachPoint, SelfHypothesis, UnknownProperty
from .printer import print_expr


class Local(str, enum.Enum):
    TRUE = "True"
    FALSE = "False"
    MAYBE = "Maybe"


class Consolidated(str, enum.Enum):
    VALID = "Valid"
    INVALID = "Invalid"
    UNKNOWN = "Unknown"
    INCONSISTENT = "Inconsistent"


ASSERTION = "assertion"
PRECONDITION = "precondition"
POSTCONDITION = "postcondition"
PROPERTY_KINDS = (ASSERTION, PRECONDITION, POSTCONDITION)


@dataclass(frozen=True)
class Property:
    id: int
    kind: str
    annotation: Annotation
    attach: int
    location: Location
    origin: str
    function: str

    @property
    def predicate(self) -> str:
        return print_expr(self.annotation.pred)


@dataclass(frozen=True)
class EmittedStatus:
    property: int
    emitter: str
    local: Local
    hypotheses: FrozenSet[int]


def consolidate_emissions(
    properties: Iterable[int], emissions: Iterable[EmittedStatus]
) -> Dict[int, Consolidated]:
    emissions = list(emissions)
    justified = least_model(
        (e.property, e.hypotheses) for e in emissions if e.local is Local.TRUE)
    refuted = {
        e.property for e in emissions
        if e.local is Local.FALSE and e.hypotheses <= justified
    }
    result = {}
    for pid in properties:
        j, r = pid in justified, pid in refuted
        if j and r:
            result[pid] = Consolidated.INCONSISTENT
        elif j:
            result[pid] = Consolidated.VALID
        elif r:
            result[pid] = Consolidated.INVALID
        else:
            result[pid] = Consolidated.UNKNOWN
    return result


_ATTACH_NODE = {ASSERTION: Stmt, PRECONDITION: Call, POSTCONDITION: FunctionDef}


class PropertyDB:
    """All properties of a session and the statuses emitted on them."""

    def __init__(self, index: NodeIndex,
                 warn: Optional[Callable[[str], None]] = None):
        self.index = index
        self._warn = warn or (lambda message: None)
        self._properties: List[Property] = []
        self._keys: Dict[Tuple[int, str, str, str], int] = {}
        self._emissions: Dict[Tuple[int, str], EmittedStatus] = {}
        self._statuses: Optional[Dict[int, Consolidated]] = None

    # -- properties ---------------------------------------------------------

    def register_property(self, annotation: Annotation, kind: str, attach: int,
                          generator: str = "source") -> int:
        if kind not in PROPERTY_KINDS:
            raise ValueError(f"unknown property kind {kind!r}")
        node = self.index.nodes.get(attach)
        if node is None or not isinstance(node, _ATTACH_NODE[kind]):
            raise BadAttachPoint(f"node {attach} is not a valid {kind} attach point")
        key = (attach, kind, print_expr(annotation.pred), generator)
        existing = self._keys.get(key)
        if existing is not None:
            return existing
        if kind == PRECONDITION:
            function = node.name
        else:
            function = self.index.enclosing_function[attach]
        location = annotation.loc if generator == "source" else node.loc
        prop = Property(len(self._properties), kind, annotation, attach,
                        location, generator, function)
        self._properties.append(prop)
        self._keys[key] = prop.id
        self._statuses = None
        return prop.id

    def __len__(self) -> int:
        return len(self._properties)

    def __iter__(self):
        return iter(self._properties)

    def __getitem__(self, pid: int) -> Property:
        return self._properties[pid]

    def at(self, attach: int, kind: Optional[str] = None) -> List[Property]:
        return [p for p in self._properties
                if p.attach == attach and (kind is None or p.kind == kind)]

    # -- statuses -----------------------------------------------------------

    def emit_status(self, pid: int, emitter: str, local: Local,
                    hypotheses: Iterable[int] = ()) -> None:
        hypotheses = frozenset(hypotheses)
        local = Local(local)
        if not 0 <= pid < len(self._properties):
            raise UnknownProperty(f"no property {pid}")
        for h in hypotheses:
            if not 0 <= h < len(self._properties):
                raise UnknownProperty(f"no property {h} (used as hypothesis)")
        if pid in hypotheses:
            raise SelfHypothesis(f"property {pid} cannot be its own hypothesis")
        status = EmittedStatus(pid, emitter, local, hypotheses)
        previous = self._emissions.get((pid, emitter))
        if previous is not None and previous != status:
            self._warn(f"{emitter} overwrites its status on property {pid} "
                       f"({previous.local.value} -> {local.value})")
        self._emissions[(pid, emitter)] = status
        self._statuses = None

    def emissions(self, pid: Optional[int] = None) -> List[EmittedStatus]:
        found = [e for (p, _), e in self._emissions.items() if pid is None or p == pid]
        return sorted(found, key=lambda e: (e.property, e.emitter))

    # -- consolidation ------------------------------------------------------

    def consolidate(self) -> Dict[int, Consolidated]:
        if self._statuses is None:
            self._statuses = consolidate_emissions(
                range(len(self._properties)), self._emissions.values())
        return dict(self._statuses)

    def status(self, pid: int) -> Consolidated:
        return self.consolidate()[pid]

    def remaining(self) -> List[int]:
        """Properties not Valid, sorted by location then id."""
        statuses = self.consolidate()
        todo = [p for p in self._properties if statuses[p.id] is not Consolidated.VALID]
        todo.sort(key=lambda p: (p.location.file, p.location.line, p.location.column, p.id))
        return [p.id for p in todo]

    def summary(self) -> Mapping[str, int]:
        statuses = self.consolidate().values()
        return {
            "total": len(self._properties),
            "valid": sum(s is Consolidated.VALID for s in statuses),
            "invalid": sum(s is Consolidated.INVALID for s in statuses),
            "unknown": sum(s is Consolidated.UNKNOWN for s in statuses),
            "inconsistent": sum(s is Consolidated.INCONSISTENT for s in statuses),
        }

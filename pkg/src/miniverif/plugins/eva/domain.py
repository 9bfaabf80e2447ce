"""Abstract states of the value analysis.

An :class:`Env` maps int variables to intervals, arrays to one interval
summarizing every cell, and function pointers to target sets.  A
:class:`State` pairs an env with the hypotheses (property ids) assumed on
the way to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Mapping, Optional

from ...kernel_services import interval as itv
from ...kernel_services.interval import BOTTOM, TOP, IntervalLike

MAX_TARGETS = 4


@dataclass(frozen=True)
class Targets:
    """Possible callees of a function pointer.

    ``any`` means every function of matching arity (saturated set).
    """

    names: FrozenSet[str] = frozenset()
    any: bool = False

    def join(self, other: "Targets") -> "Targets":
        if self.any or other.any:
            return ANY_TARGET
        names = self.names | other.names
        if len(names) > MAX_TARGETS:
            return ANY_TARGET
        return Targets(names)

    def leq(self, other: "Targets") -> bool:
        return other.any or (not self.any and self.names <= other.names)


NO_TARGET = Targets()
ANY_TARGET = Targets(frozenset(), True)


def _join_values(a: Mapping, b: Mapping, op: Callable) -> Dict:
    # a missing variable stands for top, so only shared keys survive
    return {k: op(v, b[k]) for k, v in a.items() if k in b}


def _join_targets(a: Mapping, b: Mapping) -> Dict:
    # a missing pointer has no target
    return {k: a.get(k, NO_TARGET).join(b.get(k, NO_TARGET)) for k in a.keys() | b.keys()}


@dataclass(frozen=True)
class Env:
    ints: Mapping[str, IntervalLike] = field(default_factory=dict)
    arrays: Mapping[str, IntervalLike] = field(default_factory=dict)
    fnptrs: Mapping[str, Targets] = field(default_factory=dict)
    bottom: bool = False

    @property
    def is_bottom(self) -> bool:
        return self.bottom

    def get(self, name: str) -> IntervalLike:
        if self.bottom:
            return BOTTOM
        return self.ints.get(name, TOP)

    def set(self, name: str, value: IntervalLike) -> "Env":
        if self.bottom:
            return self
        if value.is_bottom:
            return BOTTOM_ENV
        return Env({**self.ints, name: value}, self.arrays, self.fnptrs)

    def array(self, name: str) -> IntervalLike:
        if self.bottom:
            return BOTTOM
        return self.arrays.get(name, TOP)

    def store(self, name: str, value: IntervalLike) -> "Env":
        """Weak update: the summary becomes the hull of old cells and value."""
        if self.bottom:
            return self
        if value.is_bottom:
            return BOTTOM_ENV
        old = self.arrays.get(name, BOTTOM)
        return Env(self.ints, {**self.arrays, name: itv.join(old, value)}, self.fnptrs)

    def targets(self, name: str) -> Targets:
        if self.bottom:
            return NO_TARGET
        return self.fnptrs.get(name, NO_TARGET)

    def point(self, name: str, targets: Targets) -> "Env":
        if self.bottom:
            return self
        return Env(self.ints, self.arrays, {**self.fnptrs, name: targets})

    # -- lattice ------------------------------------------------------------

    def join(self, other: "Env") -> "Env":
        if self.bottom:
            return other
        if other.bottom:
            return self
        return Env(_join_values(self.ints, other.ints, itv.join),
                   _join_values(self.arrays, other.arrays, itv.join),
                   _join_targets(self.fnptrs, other.fnptrs))

    def widen(self, new: "Env") -> "Env":
        if self.bottom:
            return new
        if new.bottom:
            return self
        return Env(_join_values(self.ints, new.ints, itv.widen),
                   _join_values(self.arrays, new.arrays, itv.widen),
                   _join_targets(self.fnptrs, new.fnptrs))

    def narrow(self, new: "Env") -> "Env":
        if self.bottom or new.bottom:
            return BOTTOM_ENV
        ints = {k: itv.narrow(v, new.ints.get(k, TOP)) for k, v in self.ints.items()}
        arrays = {k: itv.narrow(v, new.arrays.get(k, TOP)) for k, v in self.arrays.items()}
        if any(v.is_bottom for v in ints.values()) or any(v.is_bottom for v in arrays.values()):
            return BOTTOM_ENV
        fnptrs = {k: t if not new.fnptrs.get(k, t).leq(t) else new.fnptrs.get(k, t)
                  for k, t in self.fnptrs.items()}
        return Env(ints, arrays, fnptrs)

    def leq(self, other: "Env") -> bool:
        if self.bottom:
            return True
        if other.bottom:
            return False
        return (all(itv.leq(v, other.ints.get(k, TOP)) for k, v in self.ints.items())
                and all(k in self.ints for k in other.ints if not other.ints[k].is_top)
                and all(itv.leq(v, other.arrays.get(k, TOP)) for k, v in self.arrays.items())
                and all(t.leq(other.fnptrs.get(k, NO_TARGET)) for k, t in self.fnptrs.items()))


BOTTOM_ENV = Env(bottom=True)


@dataclass(frozen=True)
class State:
    env: Env
    hyps: FrozenSet[int] = frozenset()

    def join(self, other: Optional["State"]) -> "State":
        if other is None:
            return self
        return State(self.env.join(other.env), self.hyps | other.hyps)

    def widen(self, new: "State") -> "State":
        return State(self.env.widen(new.env), self.hyps | new.hyps)

    def leq(self, other: Optional["State"]) -> bool:
        return other is not None and self.env.leq(other.env) and self.hyps <= other.hyps


def join_states(a: Optional[State], b: Optional[State]) -> Optional[State]:
    if a is None:
        return b
    return a.join(b)

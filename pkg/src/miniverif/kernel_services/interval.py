"""Integer interval domain, part of the abstract interpretation toolkit.

Endpoints are Python ints or ``-inf`` / ``+inf`` (floats).  ``BOTTOM`` is
the unique empty interval.  Division and remainder follow C semantics
(truncation toward zero) and ignore divisors equal to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

Bound = Union[int, float]
NEG_INF = -math.inf
POS_INF = math.inf


@dataclass(frozen=True)
class Interval:
    lo: Bound
    hi: Bound

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]; use BOTTOM")
        if self.lo == POS_INF or self.hi == NEG_INF:
            raise ValueError("interval endpoints cannot both be on one infinite side")

    @property
    def is_bottom(self) -> bool:
        return False

    @property
    def is_top(self) -> bool:
        return self.lo == NEG_INF and self.hi == POS_INF

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    def __str__(self) -> str:
        lo = "-oo" if self.lo == NEG_INF else str(self.lo)
        hi = "+oo" if self.hi == POS_INF else str(self.hi)
        return f"[{lo}, {hi}]"


class _Bottom:
    """The empty interval."""

    _instance = None
    lo = POS_INF
    hi = NEG_INF

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    is_bottom = True
    is_top = False
    is_singleton = False

    def __contains__(self, value: int) -> bool:
        return False

    def __repr__(self) -> str:
        return "BOTTOM"

    __str__ = __repr__

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()
TOP = Interval(NEG_INF, POS_INF)
IntervalLike = Union[Interval, _Bottom]


def make(lo: Optional[Bound] = None, hi: Optional[Bound] = None) -> IntervalLike:
    """``make(1, 3)``; a missing bound is infinite; an empty range is BOTTOM."""
    lo = NEG_INF if lo is None else lo
    hi = POS_INF if hi is None else hi
    if lo > hi or lo == POS_INF or hi == NEG_INF:
        return BOTTOM
    return Interval(lo, hi)


def const(value: int) -> Interval:
    return Interval(value, value)


def hull(values: Iterable[Bound]) -> IntervalLike:
    values = list(values)
    if not values:
        return BOTTOM
    return make(min(values), max(values))


# -- lattice -----------------------------------------------------------------


def leq(a: IntervalLike, b: IntervalLike) -> bool:
    """Inclusion ``a`` within ``b``."""
    if a.is_bottom:
        return True
    if b.is_bottom:
        return False
    return b.lo <= a.lo and a.hi <= b.hi


def join(a: IntervalLike, b: IntervalLike) -> IntervalLike:
    if a.is_bottom:
        return b
    if b.is_bottom:
        return a
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi))


def meet(a: IntervalLike, b: IntervalLike) -> IntervalLike:
    if a.is_bottom or b.is_bottom:
        return BOTTOM
    return make(max(a.lo, b.lo), min(a.hi, b.hi))


def widen(old: IntervalLike, new: IntervalLike) -> IntervalLike:
    """Any bound of ``new`` strictly beyond ``old`` jumps to infinity."""
    if old.is_bottom:
        return new
    if new.is_bottom:
        return old
    lo = NEG_INF if new.lo < old.lo else old.lo
    hi = POS_INF if new.hi > old.hi else old.hi
    return Interval(lo, hi)


def narrow(old: IntervalLike, new: IntervalLike) -> IntervalLike:
    """Refine infinite bounds of ``old`` with those of ``new``."""
    if old.is_bottom or new.is_bottom:
        return BOTTOM
    lo = new.lo if old.lo == NEG_INF else old.lo
    hi = new.hi if old.hi == POS_INF else old.hi
    return make(lo, hi)


# -- arithmetic --------------------------------------------------------------


def _mul_bound(a: Bound, b: Bound) -> Bound:
    if a == 0 or b == 0:
        return 0
    return a * b


def _div_bound(a: Bound, b: Bound) -> Bound:
    """Truncated quotient of two endpoints, ``b`` never zero."""
    if math.isinf(b):
        if math.isinf(a):
            # only reached as a corner of unbounded ranges; the sign is what matters
            return POS_INF if (a > 0) == (b > 0) else NEG_INF
        return 0
    if math.isinf(a):
        return a if b > 0 else -a
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b > 0) else -q


def neg(a: IntervalLike) -> IntervalLike:
    if a.is_bottom:
        return BOTTOM
    return Interval(-a.hi, -a.lo)


def add(a: IntervalLike, b: IntervalLike) -> IntervalLike:
    if a.is_bottom or b.is_bottom:
        return BOTTOM
    return Interval(a.lo + b.lo, a.hi + b.hi)


def sub(a: IntervalLike, b: IntervalLike) -> IntervalLike:
    return add(a, neg(b))


def mul(a: IntervalLike, b: IntervalLike) -> IntervalLike:
    if a.is_bottom or b.is_bottom:
        return BOTTOM
    return hull(_mul_bound(x, y) for x in (a.lo, a.hi) for y in (b.lo, b.hi))


def _nonzero_parts(b: IntervalLike):
    if b.is_bottom:
        return []
    parts = []
    if b.lo <= -1:
        parts.append(Interval(b.lo, min(b.hi, -1)))
    if b.hi >= 1:
        parts.append(Interval(max(b.lo, 1), b.hi))
    return parts


def div(a: IntervalLike, b: IntervalLike) -> IntervalLike:
    """C division over the nonzero divisors of ``b``."""
    if a.is_bottom:
        return BOTTOM
    result: IntervalLike = BOTTOM
    for part in _nonzero_parts(b):
        # truncated division is monotone in each argument on a sign-constant divisor
        corners = [_div_bound(x, y) for x in (a.lo, a.hi) for y in (part.lo, part.hi)]
        if a.lo < 0 < a.hi:
            corners.append(0)
        result = join(result, hull(corners))
    return result


def rem(a: IntervalLike, b: IntervalLike) -> IntervalLike:
    """C remainder: sign of the dividend, magnitude below the divisor's."""
    if a.is_bottom:
        return BOTTOM
    parts = _nonzero_parts(b)
    if not parts:
        return BOTTOM
    m = max(max(abs(p.lo), abs(p.hi)) for p in parts) - 1
    smallest = min(min(abs(p.lo), abs(p.hi)) for p in parts)
    if max(abs(a.lo), abs(a.hi)) < smallest:
        return a
    lo = 0 if a.lo >= 0 else max(a.lo, -m)
    hi = 0 if a.hi <= 0 else min(a.hi, m)
    return make(lo, hi)


# -- three-valued comparisons ------------------------------------------------


def compare(op: str, a: IntervalLike, b: IntervalLike) -> Optional[bool]:
    """True/False if ``a op b`` holds for all/no pairs, else None.

    Returns True on bottom operands (nothing to contradict).
    """
    if a.is_bottom or b.is_bottom:
        return True
    if op == "<":
        if a.hi < b.lo:
            return True
        if a.lo >= b.hi:
            return False
    elif op == "<=":
        if a.hi <= b.lo:
            return True
        if a.lo > b.hi:
            return False
    elif op == ">":
        return compare("<", b, a)
    elif op == ">=":
        return compare("<=", b, a)
    elif op == "==":
        if a.is_singleton and b.is_singleton and a.lo == b.lo:
            return True
        if meet(a, b).is_bottom:
            return False
    elif op == "!=":
        eq = compare("==", a, b)
        return None if eq is None else not eq
    else:
        raise ValueError(op)
    return None


def constrain(op: str, a: IntervalLike, b: IntervalLike) -> IntervalLike:
    """Values of ``a`` for which ``a op y`` holds for some ``y`` in ``b``."""
    if a.is_bottom or b.is_bottom:
        return BOTTOM
    if op == "<":
        return meet(a, make(None, b.hi - 1))
    if op == "<=":
        return meet(a, make(None, b.hi))
    if op == ">":
        return meet(a, make(b.lo + 1, None))
    if op == ">=":
        return meet(a, make(b.lo, None))
    if op == "==":
        return meet(a, b)
    if op == "!=":
        if b.is_singleton:
            c = b.lo
            if a.is_singleton and a.lo == c:
                return BOTTOM
            if a.lo == c:
                return make(c + 1, a.hi)
            if a.hi == c:
                return make(a.lo, c - 1)
        return a
    raise ValueError(op)


NEGATED = {"<": ">=", "<=": ">", ">": "<=", ">=": "<", "==": "!=", "!=": "=="}
MIRRORED = {"<": ">", "<=": ">=", ">": "<", ">=": "<=", "==": "==", "!=": "!="}


def signed_range(bits: int) -> Interval:
    """Two's complement range of a ``bits``-wide signed integer."""
    return Interval(-(2 ** (bits - 1)), 2 ** (bits - 1) - 1)

"""Least model of propositional Horn clauses.

Used wherever a fact holds once all of its premises hold.  Runs in time
linear in the total size of the clauses (counter-based propagation).
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Hashable, Iterable, Set, Tuple


def least_model(clauses: Iterable[Tuple[Hashable, Iterable[Hashable]]]) -> Set[Hashable]:
    """Return the set of heads derivable from ``(head, premises)`` clauses.

    Cyclic premises never derive anything on their own.
    """
    missing = []
    heads = []
    watchers = defaultdict(list)
    ready = deque()
    for index, (head, premises) in enumerate(clauses):
        premises = set(premises)
        heads.append(head)
        missing.append(len(premises))
        for p in premises:
            watchers[p].append(index)
        if not premises:
            ready.append(index)

    model: Set[Hashable] = set()
    while ready:
        head = heads[ready.popleft()]
        if head in model:
            continue
        model.add(head)
        for index in watchers.get(head, ()):
            missing[index] -= 1
            if missing[index] == 0:
                ready.append(index)
    return model

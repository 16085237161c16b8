"""Effective enumeration of all quadruple Turing machines.

Machines are grouped by their number of quadruples k = 1, 2, ...  Group k
holds every deterministic k-element quadruple set over states q0..q(2k),
listed lexicographically as sorted quadruple sequences (actions ordered
P < E < L < R).

A quadruple splits into a *key* ``(state_in, symbol_in)`` and a *choice*
``(action, state_out)``.  In a deterministic machine the keys are pairwise
distinct, so a sorted machine is a strictly increasing key sequence with one
free choice per key.  That makes each group a product of a combination and a
power, which :func:`machine_at` unranks directly without generating earlier
machines.  :func:`iter_machines` walks the same order by brute force.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import count
from math import comb
from typing import Iterator

from .errors import ResourceLimit
from .tm import Action, Machine, Quadruple

DEFAULT_GENERATION_BUDGET = 10**15


class MachineNotEnumerated(LookupError):
    pass


def group_states(k: int) -> int:
    return 2 * k + 1


def group_size(k: int) -> int:
    states = group_states(k)
    return comb(2 * states, k) * (4 * states) ** k


def group_start(k: int) -> int:
    """Index of the first machine with k quadruples."""
    return sum(group_size(j) for j in range(1, k))


def _quad(k: int, key: int, choice: int) -> Quadruple:
    state_in, symbol = divmod(key, 2)
    action, state_out = divmod(choice, group_states(k))
    return Quadruple(state_in, symbol, Action(action), state_out)


def _split(k: int, q: Quadruple) -> tuple[int, int]:
    return 2 * q.state_in + q.symbol_in, int(q.action) * group_states(k) + q.state_out


@lru_cache(maxsize=65536)
def machine_at(n: int, budget: int = DEFAULT_GENERATION_BUDGET) -> Machine:
    """Return the machine with 0-based index ``n`` in the enumeration."""
    if n < 0:
        raise ValueError("machine index must be non-negative")
    if n > budget:
        raise ResourceLimit(f"machine index {n} exceeds the generation budget {budget}")
    k = 1
    while n >= group_size(k):
        n -= group_size(k)
        k += 1
    keys = 2 * group_states(k)
    choices = 4 * group_states(k)
    quads = []
    start = 0
    for remaining in range(k, 0, -1):
        for key in range(start, keys):
            block = comb(keys - key - 1, remaining - 1) * choices ** (remaining - 1)
            if n < choices * block:
                choice, n = divmod(n, block)
                quads.append(_quad(k, key, choice))
                start = key + 1
                break
            n -= choices * block
    return Machine(tuple(quads))


def index_of(machine: Machine) -> int:
    """Inverse of :func:`machine_at`.

    Raises MachineNotEnumerated when the quadruples are not sorted or use a
    state outside the alphabet of their group.
    """
    k = len(machine)
    if k == 0:
        raise MachineNotEnumerated("the empty machine is not part of the stream")
    quads = machine.quadruples
    if list(quads) != sorted(quads):
        raise MachineNotEnumerated("quadruples must be listed in ascending order")
    if max(machine.states()) >= group_states(k):
        raise MachineNotEnumerated(
            f"a {k}-quadruple machine may only use states q0..q{group_states(k) - 1}")
    keys = 2 * group_states(k)
    choices = 4 * group_states(k)
    rank = 0
    start = 0
    for pos, q in enumerate(quads):
        remaining = k - pos
        key, choice = _split(k, q)
        for skipped in range(start, key):
            rank += choices * comb(keys - skipped - 1, remaining - 1) * choices ** (remaining - 1)
        rank += choice * comb(keys - key - 1, remaining - 1) * choices ** (remaining - 1)
        start = key + 1
    return group_start(k) + rank


def _group(k: int, start: int, remaining: int) -> Iterator[tuple[Quadruple, ...]]:
    if remaining == 0:
        yield ()
        return
    for key in range(start, 2 * group_states(k)):
        for choice in range(4 * group_states(k)):
            head = _quad(k, key, choice)
            for rest in _group(k, key + 1, remaining - 1):
                yield (head,) + rest


def iter_machines() -> Iterator[Machine]:
    """Infinite stream of all machines in enumeration order."""
    for k in count(1):
        for quads in _group(k, 0, k):
            yield Machine(quads)


def enumerate_prefix(count_: int, budget: int = DEFAULT_GENERATION_BUDGET) -> list[Machine]:
    if count_ < 0:
        raise ValueError("count must be non-negative")
    if count_ > budget:
        raise ResourceLimit(f"prefix length {count_} exceeds the generation budget {budget}")
    stream = iter_machines()
    return [next(stream) for _ in range(count_)]

"""Quadruple Turing machines over the binary alphabet {0, 1}.

A machine is a finite set of instructions ``(state_in, symbol_in, action,
state_out)``.  The tape is two-way infinite and blank (0) except for finitely
many cells, so a configuration only records the set of cells holding a 1.

A machine halts when no instruction matches the current state and scanned
symbol.  Runs are bounded by an explicit fuel budget measured in applied
instructions; running out of fuel is reported as :class:`Exhausted`, never as
divergence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .errors import DeterminismError, ParseError, TraceCapExceeded

__all__ = [
    "Action", "Quadruple", "Machine", "Configuration", "Halted", "Exhausted",
    "RunOutcome", "DeterminismError", "parse_machine", "format_machine",
    "encode_input", "step", "run", "trace", "format_trace", "Simulation",
]

DEFAULT_TRACE_CAP = 100_000


class Action(enum.IntEnum):
    # Declaration order is the enumeration order: P < E < L < R.
    PRINT = 0
    ERASE = 1
    LEFT = 2
    RIGHT = 3

    @property
    def letter(self) -> str:
        return "PELR"[self]

    @classmethod
    def from_letter(cls, letter: str) -> "Action":
        try:
            return cls("PELR".index(letter))
        except ValueError:
            raise ParseError(f"unknown action letter {letter!r}") from None


class Quadruple(NamedTuple):
    state_in: int
    symbol_in: int
    action: Action
    state_out: int

    def __str__(self):
        return (
            f"q{self.state_in} {self.symbol_in} "
            f"{self.action.letter} q{self.state_out}"
        )


@dataclass(frozen=True)
class Machine:
    quadruples: tuple[Quadruple, ...] = ()
    name: Optional[str] = field(default=None, compare=False)
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        quads = tuple(Quadruple(q[0], q[1], Action(q[2]), q[3]) for q in self.quadruples)
        table = {}
        for q in quads:
            if q.symbol_in not in (0, 1):
                raise ParseError(f"symbol must be 0 or 1, got {q.symbol_in!r}")
            if q.state_in < 0 or q.state_out < 0:
                raise ParseError("state indices must be non-negative")
            key = (q.state_in, q.symbol_in)
            if key in table:
                raise DeterminismError(*key)
            table[key] = (q.action, q.state_out)
        object.__setattr__(self, "quadruples", quads)
        object.__setattr__(self, "_table", table)

    def __len__(self):
        return len(self.quadruples)

    def lookup(self, state: int, symbol: int):
        """Return ``(action, state_out)`` for the pair, or None if none applies."""
        return self._table.get((state, symbol))

    def states(self) -> set[int]:
        return {s for q in self.quadruples for s in (q.state_in, q.state_out)}


@dataclass(frozen=True)
class Configuration:
    state: int
    ones: frozenset
    head: int = 0

    def read(self) -> int:
        return 1 if self.head in self.ones else 0

    def count_ones(self) -> int:
        return len(self.ones)


@dataclass(frozen=True)
class Halted:
    output: int
    steps: int


@dataclass(frozen=True)
class Exhausted:
    fuel: int


RunOutcome = Union[Halted, Exhausted]


def parse_machine(text: str, name: Optional[str] = None) -> Machine:
    """Parse the line-oriented machine format (``q0 1 P q0`` per line).

    Blank lines and lines starting with ``#`` are skipped.  Source order of
    the quadruples is preserved.
    """
    quads = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split(" ")
        if len(parts) != 4:
            raise ParseError(
                "expected '<state_in> <symbol_in> <action> <state_out>' "
                "separated by single spaces", lineno)
        s_in, sym, act, s_out = parts
        try:
            quads.append(Quadruple(
                _parse_state(s_in), _parse_symbol(sym),
                Action.from_letter(act), _parse_state(s_out)))
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    return Machine(tuple(quads), name=name)


def _parse_state(token: str) -> int:
    if len(token) < 2 or token[0] != "q" or not token[1:].isdigit() or not token[1:].isascii():
        raise ParseError(f"bad state token {token!r} (expected q<digits>)")
    return int(token[1:])


def _parse_symbol(token: str) -> int:
    if token not in ("0", "1"):
        raise ParseError(f"symbol must be 0 or 1, got {token!r}")
    return int(token)


def format_machine(machine: Machine) -> str:
    return "".join(f"{q}\n" for q in machine.quadruples)


def encode_input(args: Sequence[int]) -> Configuration:
    """Unary input tape: blocks of 1s separated by a single 0, head on cell 0."""
    if not args:
        raise ValueError("at least one input argument is required")
    ones = set()
    pos = 0
    for x in args:
        if x < 0:
            raise ValueError(f"inputs must be natural numbers, got {x}")
        ones.update(range(pos, pos + x))
        pos += x + 1
    return Configuration(state=0, ones=frozenset(ones), head=0)


def step(machine: Machine, config: Configuration) -> Optional[Configuration]:
    """Apply the single matching quadruple, or return None when the machine halts."""
    entry = machine.lookup(config.state, config.read())
    if entry is None:
        return None
    action, state_out = entry
    ones, head = config.ones, config.head
    if action is Action.PRINT:
        ones = ones | {head}
    elif action is Action.ERASE:
        ones = ones - {head}
    elif action is Action.LEFT:
        head -= 1
    else:
        head += 1
    return Configuration(state_out, ones, head)


class Simulation:
    """Resumable run of one machine on one input.

    Used by :func:`run` and by the dovetailer, which advances many runs a
    little at a time.  The tape is a mutable set internally; snapshots are
    taken with :meth:`configuration`.
    """

    __slots__ = ("machine", "state", "ones", "head", "steps", "halted")

    def __init__(self, machine: Machine, config: Configuration):
        self.machine = machine
        self.state = config.state
        self.ones = set(config.ones)
        self.head = config.head
        self.steps = 0
        self.halted = False

    def advance(self, max_steps: int) -> bool:
        """Run at most ``max_steps`` more steps; return True once halted."""
        if self.halted:
            return True
        table = self.machine._table
        state, ones, head = self.state, self.ones, self.head
        done = 0
        while True:
            entry = table.get((state, 1 if head in ones else 0))
            if entry is None:
                self.halted = True
                break
            if done >= max_steps:
                break
            action, state = entry
            if action == 0:
                ones.add(head)
            elif action == 1:
                ones.discard(head)
            elif action == 2:
                head -= 1
            else:
                head += 1
            done += 1
        self.state, self.head = state, head
        self.steps += done
        return self.halted

    def configuration(self) -> Configuration:
        return Configuration(self.state, frozenset(self.ones), self.head)

    def outcome(self, fuel: int) -> RunOutcome:
        if self.halted:
            return Halted(len(self.ones), self.steps)
        return Exhausted(fuel)


def run(machine: Machine, inputs: Sequence[int], fuel: int) -> RunOutcome:
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    sim = Simulation(machine, encode_input(inputs))
    sim.advance(fuel)
    return sim.outcome(fuel)


def trace(machine: Machine, inputs: Sequence[int], fuel: int,
          cap: int = DEFAULT_TRACE_CAP) -> list[Configuration]:
    if fuel > cap:
        raise TraceCapExceeded(f"trace fuel {fuel} exceeds the trace cap {cap}")
    config = encode_input(inputs)
    configs = [config]
    for _ in range(fuel):
        config = step(machine, config)
        if config is None:
            break
        configs.append(config)
    return configs


def format_trace(configs: Iterable[Configuration]) -> str:
    lines = []
    for n, c in enumerate(configs):
        ones = ",".join(str(i) for i in sorted(c.ones))
        lines.append(f"step={n} state=q{c.state} head={c.head} ones={ones}\n")
    return "".join(lines)

"""Halting-set enumeration by dovetailing, and empirical auditing of halting deciders.

Every answer here is one-sided: a run that halts comes with a replayable
:class:`HaltCertificate`; a run that has not halted yet is :class:`Unknown`.
There is deliberately no verdict meaning "diverges".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt
from typing import Callable, Iterator, Optional, Union

from .enumeration import machine_at
from .errors import ResourceLimit
from .tm import Halted, Simulation, encode_input, run

DEFAULT_ROUND_CAP = 200
DEFAULT_AUDIT_CAP = 100_000


def cantor_pair(n: int, x: int) -> int:
    if n < 0 or x < 0:
        raise ValueError("pairing is defined on natural numbers")
    s = n + x
    return s * (s + 1) // 2 + x


def cantor_unpair(code: int) -> tuple[int, int]:
    if code < 0:
        raise ValueError("pairing is defined on natural numbers")
    s = (isqrt(8 * code + 1) - 1) // 2
    x = code - s * (s + 1) // 2
    return s - x, x


@dataclass(frozen=True)
class HaltCertificate:
    machine_index: int
    input: int
    steps: int
    output: int
    round: Optional[int] = None

    @property
    def code(self) -> int:
        """Cantor code of ``(machine_index, input)``: the element of K this certifies."""
        return cantor_pair(self.machine_index, self.input)

    def replay(self) -> bool:
        outcome = run(machine_at(self.machine_index), [self.input], self.steps)
        return outcome == Halted(self.output, self.steps)


@dataclass(frozen=True)
class Halts:
    certificate: HaltCertificate


@dataclass(frozen=True)
class Unknown:
    fuel_spent: int


Verdict = Union[Halts, Unknown]


@dataclass(frozen=True)
class DiagonalValue:
    value: int
    certificate: HaltCertificate


def dovetail(rounds: int, cap: int = DEFAULT_ROUND_CAP) -> list[HaltCertificate]:
    """Certificates for every pair found halting in rounds 1..``rounds``.

    Round r runs machine n on input x with fuel r for all n, x <= r.  A pair
    is emitted in the first round in which it halts, ordered by round, then
    n, then x.  A pair halting in s steps is therefore emitted in round
    ``max(n, x, s, 1)``.
    """
    return list(iter_dovetail(rounds, cap))


def iter_dovetail(rounds: int, cap: int = DEFAULT_ROUND_CAP) -> Iterator[HaltCertificate]:
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    if rounds > cap:
        raise ResourceLimit(f"{rounds} rounds exceeds the round cap {cap}")
    # Runs resume where the previous round stopped; determinism makes this
    # identical to restarting each run with fuel r.
    live: dict[tuple[int, int], Simulation] = {}
    done: set[tuple[int, int]] = set()
    for r in range(1, rounds + 1):
        for n in range(r + 1):
            for x in range(r + 1):
                if (n, x) in done:
                    continue
                sim = live.get((n, x))
                if sim is None:
                    sim = live[(n, x)] = Simulation(machine_at(n), encode_input([x]))
                if sim.advance(r - sim.steps):
                    done.add((n, x))
                    del live[(n, x)]
                    yield HaltCertificate(n, x, sim.steps, len(sim.ones), round=r)


def membership_in_K(n: int, x: int, fuel: int) -> Verdict:
    """Semi-decide whether machine n halts on x; never claims that it does not."""
    outcome = run(machine_at(n), [x], fuel)
    if isinstance(outcome, Halted):
        return Halts(HaltCertificate(n, x, outcome.steps, outcome.output))
    return Unknown(fuel)


def diagonal_value(n: int, fuel: int) -> Union[DiagonalValue, Unknown]:
    """The diagonal function f_n(n) + 1, defined only where machine n halts on n."""
    verdict = membership_in_K(n, n, fuel)
    if isinstance(verdict, Unknown):
        return verdict
    cert = verdict.certificate
    return DiagonalValue(cert.output + 1, cert)


class Claim(enum.Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"


Decider = Callable[[int, int], Claim]


@dataclass(frozen=True)
class Counterexample:
    n: int
    x: int
    claim: Claim
    evidence: HaltCertificate


def always(claim: Claim) -> Decider:
    return lambda n, x: claim


def budget_decider(fuel: int) -> Decider:
    """Claims convergence exactly when the run halts within ``fuel`` steps."""

    def decide(n, x):
        halted = isinstance(run(machine_at(n), [x], fuel), Halted)
        return Claim.CONVERGES if halted else Claim.DIVERGES

    return decide


def iter_refutations(decider: Decider, search_limit: int, refutation_fuel: int,
                     cap: int = DEFAULT_AUDIT_CAP) -> Iterator[Counterexample]:
    """Every diagonal point n <= search_limit where a Diverges claim is refuted.

    Convergence claims are never checked: no finite amount of fuel can
    refute one.
    """
    if search_limit > cap:
        raise ResourceLimit(f"search limit {search_limit} exceeds the audit cap {cap}")
    for n in range(search_limit + 1):
        claim = decider(n, n)
        if claim is not Claim.DIVERGES:
            continue
        verdict = membership_in_K(n, n, refutation_fuel)
        if isinstance(verdict, Halts):
            yield Counterexample(n, n, claim, verdict.certificate)


def audit_halting_heuristic(decider: Decider, search_limit: int, refutation_fuel: int,
                            cap: int = DEFAULT_AUDIT_CAP) -> Optional[Counterexample]:
    """First refuted Diverges claim on the diagonal, or None.

    None is not evidence that the decider is right; every total decider is
    wrong somewhere, possibly only where no finite fuel can show it.
    """
    return next(iter_refutations(decider, search_limit, refutation_fuel, cap), None)


def parse_decider(spec: str) -> tuple[Decider, int]:
    """Parse a CLI decider description; return the decider and a default refutation fuel.

    Accepted forms: ``budget:F``, ``diverges``, ``converges``.
    """
    kind, _, arg = spec.partition(":")
    if kind == "budget":
        if not arg.isdigit():
            raise ValueError(f"budget decider needs a natural fuel, got {arg!r}")
        fuel = int(arg)
        return budget_decider(fuel), 10 * max(fuel, 1)
    if kind in ("diverges", "converges") and not arg:
        return always(Claim(kind)), 1000
    raise ValueError(f"unknown decider {spec!r} (expected budget:F, diverges or converges)")

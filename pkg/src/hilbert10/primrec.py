"""Primitive recursive function terms and their evaluator.

Terms are built from constants, successor and projections by composition
and primitive recursion, with the recursion variable first::

    Rec(base, step)(0, *xs)     = base(*xs)
    Rec(base, step)(n + 1, *xs) = step(n, Rec(base, step)(n, *xs), *xs)

Every term denotes a total function.  Evaluation still takes a budget of
recursion unfoldings because values such as iterated exponentials are out of
reach in practice; running out raises :class:`BudgetExhausted`, which is a
resource limit and not divergence.

Text syntax: ``C[k,c]``, ``S``, ``P[k,i]``, ``comp(outer; inner, ...)``,
``rec(base; step)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, Union

from .errors import ArityMismatch, BudgetExhausted, IllFormedExpr, ParseError, UnsupportedCoefficient

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class Const:
    arity: int
    value: int

    def __str__(self):
        return f"C[{self.arity},{self.value}]"


@dataclass(frozen=True)
class Succ:
    def __str__(self):
        return "S"


@dataclass(frozen=True)
class Proj:
    arity: int
    index: int  # 1-based

    def __str__(self):
        return f"P[{self.arity},{self.index}]"


@dataclass(frozen=True)
class Comp:
    outer: "PrimRecExpr"
    inners: tuple

    def __init__(self, outer, inners):
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inners", tuple(inners))

    def __str__(self):
        return f"comp({self.outer}; {', '.join(map(str, self.inners))})"


@dataclass(frozen=True)
class Rec:
    base: "PrimRecExpr"
    step: "PrimRecExpr"

    def __str__(self):
        return f"rec({self.base}; {self.step})"


PrimRecExpr = Union[Const, Succ, Proj, Comp, Rec]


@lru_cache(maxsize=None)
def arity(e: PrimRecExpr) -> int:
    if isinstance(e, Const):
        if e.arity < 0 or e.value < 0:
            raise IllFormedExpr(f"{e}: arity and value must be natural numbers")
        return e.arity
    if isinstance(e, Succ):
        return 1
    if isinstance(e, Proj):
        if not 1 <= e.index <= e.arity:
            raise IllFormedExpr(f"{e}: projection index must lie in 1..{e.arity}")
        return e.arity
    if isinstance(e, Comp):
        if arity(e.outer) != len(e.inners):
            raise IllFormedExpr(
                f"{e}: outer function takes {arity(e.outer)} arguments "
                f"but {len(e.inners)} inner functions are given")
        if not e.inners:
            raise IllFormedExpr(f"{e}: composition needs at least one inner function")
        arities = {arity(i) for i in e.inners}
        if len(arities) != 1:
            raise IllFormedExpr(f"{e}: inner functions have different arities {sorted(arities)}")
        return arities.pop()
    if isinstance(e, Rec):
        k = arity(e.base)
        if arity(e.step) != k + 2:
            raise IllFormedExpr(
                f"{e}: base has arity {k} so step must have arity {k + 2}, "
                f"not {arity(e.step)}")
        return k + 1
    raise IllFormedExpr(f"not a primitive recursive term: {e!r}")


class _Budget:
    __slots__ = ("left", "total")

    def __init__(self, total):
        self.total = total
        self.left = total


Compiled = Callable[[tuple, _Budget], int]


@lru_cache(maxsize=None)
def _compile(e: PrimRecExpr) -> Compiled:
    if isinstance(e, Const):
        value = e.value
        return lambda args, budget: value
    if isinstance(e, Succ):
        return lambda args, budget: args[0] + 1
    if isinstance(e, Proj):
        i = e.index - 1
        return lambda args, budget: args[i]
    if isinstance(e, Comp):
        outer = _compile(e.outer)
        inners = tuple(_compile(i) for i in e.inners)
        if len(inners) == 1:
            (inner,) = inners
            return lambda args, budget: outer((inner(args, budget),), budget)
        return lambda args, budget: outer(tuple(f(args, budget) for f in inners), budget)
    if isinstance(e, Rec):
        base = _compile(e.base)
        step = _compile(e.step)

        def rec(args, budget):
            n, rest = args[0], args[1:]
            if n > budget.left:
                raise BudgetExhausted(budget.total)
            budget.left -= n
            acc = base(rest, budget)
            for i in range(n):
                acc = step((i, acc) + rest, budget)
            return acc

        return rec
    raise IllFormedExpr(f"not a primitive recursive term: {e!r}")


def evaluate(e: PrimRecExpr, args: Sequence[int], budget: int = DEFAULT_BUDGET) -> int:
    """Evaluate ``e`` on ``args``, spending at most ``budget`` recursion unfoldings."""
    k = arity(e)
    if len(args) != k:
        raise ArityMismatch(f"{e} takes {k} arguments, got {len(args)}")
    if any(a < 0 for a in args):
        raise ValueError("arguments must be natural numbers")
    return _compile(e)(tuple(args), _Budget(budget))


# Naming it ``eval`` would shadow the builtin inside this module.
eval_expr = evaluate


# -- standard library of terms -------------------------------------------------

ADD = Rec(Proj(1, 1), Comp(Succ(), [Proj(3, 2)]))
"""add(n, y) = n + y, recursing on n."""

MUL = Rec(Const(1, 0), Comp(ADD, [Proj(3, 3), Proj(3, 2)]))
"""mul(n, y) = n * y; each of the n unfoldings adds y to the accumulator."""


def add(a: PrimRecExpr, b: PrimRecExpr) -> Comp:
    return Comp(ADD, [a, b])


def mul(a: PrimRecExpr, b: PrimRecExpr) -> Comp:
    return Comp(MUL, [a, b])


def polynomial_to_primrec(poly) -> PrimRecExpr:
    """Build a term computing a polynomial with natural coefficients.

    ``poly`` is a :class:`hilbert10.diophantine.Polynomial`; the term takes
    the polynomial's variables as arguments, in order.
    """
    k = len(poly.variables)
    if any(c < 0 for c in poly.terms.values()):
        raise UnsupportedCoefficient("only natural-number coefficients have a primitive recursive form")
    total = None
    for exps, coeff in sorted(poly.terms.items()):
        term = None
        for i, e in enumerate(exps):
            for _ in range(e):
                factor = Proj(k, i + 1)
                term = factor if term is None else mul(term, factor)
        if term is None:
            term = Const(k, coeff)
        else:
            # Repeated addition keeps the unfolding cost linear in the coefficient.
            scaled = term
            for _ in range(coeff - 1):
                scaled = add(term, scaled)
            term = scaled
        total = term if total is None else add(term, total)
    return Const(k, 0) if total is None else total


# -- text syntax ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(C|P)\[\s*(\d+)\s*,\s*(\d+)\s*\]|(S)\b|(comp|rec)\s*\(|([;,)]))")


def parse_expr(text: str) -> PrimRecExpr:
    pos, expr = _parse(text, 0)
    if text[pos:].strip():
        raise ParseError(f"unexpected trailing text at column {pos + 1}: {text[pos:].strip()!r}")
    arity(expr)
    return expr


def _next(text, pos):
    m = _TOKEN.match(text, pos)
    if m is None:
        rest = text[pos:].strip()
        raise ParseError(f"unexpected input at column {pos + 1}: {rest[:20]!r}" if rest
                         else "unexpected end of expression")
    return m


def _parse(text, pos):
    m = _next(text, pos)
    kind, a, b, succ, head, punct = m.groups()
    if kind == "C":
        return m.end(), Const(int(a), int(b))
    if kind == "P":
        return m.end(), Proj(int(a), int(b))
    if succ:
        return m.end(), Succ()
    if head:
        pos, first = _parse(text, m.end())
        m = _next(text, pos)
        if m.group(6) != ";":
            raise ParseError(f"expected ';' after the first argument of {head} at column {pos + 1}")
        args = []
        pos = m.end()
        while True:
            pos, arg = _parse(text, pos)
            args.append(arg)
            m = _next(text, pos)
            sep = m.group(6)
            pos = m.end()
            if sep == ")":
                break
            if sep != ",":
                raise ParseError(f"expected ',' or ')' at column {m.start() + 1}")
        if head == "comp":
            return pos, Comp(first, args)
        if len(args) != 1:
            raise ParseError("rec takes exactly one base and one step: rec(base; step)")
        return pos, Rec(first, args[0])
    raise ParseError(f"unexpected {punct!r} at column {m.start() + 1}")

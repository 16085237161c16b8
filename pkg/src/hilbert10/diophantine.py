"""Multivariate integer polynomials and Diophantine solvability.

Degree-one equations are decided exactly with extended gcd arithmetic.  For
higher degrees only two things are possible here: a bounded search of a box
of candidate points, and a conservative syntactic certificate that the
polynomial never vanishes.  When neither settles the question the answer is
:class:`UnknownBeyondBound`, which never claims that no solution exists.

Solutions are natural-number vectors by default (``domain="nat"``); with
``domain="int"`` they range over all integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Mapping, Optional, Sequence, Union

from .errors import DegreeTooHigh, DimensionMismatch, NonNaturalExponent, ParseError, ResourceLimit

DEFAULT_BOX_CAP = 10**7
DEFAULT_LINEAR_SEARCH_CAP = 10**6

DOMAINS = ("nat", "int")


def _natural_key(name):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial: exponent vectors mapped to non-zero integer coefficients."""

    variables: tuple[str, ...]
    terms: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        k = len(self.variables)
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(exps)
            if len(exps) != k:
                raise DimensionMismatch(f"exponent vector {exps} does not match {k} variables")
            if c:
                clean[exps] = clean.get(exps, 0) + c
        clean = {e: c for e, c in sorted(clean.items()) if c}
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "terms", clean)

    def __hash__(self):
        return hash((self.variables, tuple(self.terms.items())))

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> int:
        return self.terms.get((0,) * len(self.variables), 0)

    def linear_coefficients(self) -> list[int]:
        k = len(self.variables)
        coeffs = [0] * k
        for i in range(k):
            coeffs[i] = self.terms.get(tuple(int(j == i) for j in range(k)), 0)
        return coeffs

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0]))):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, exps) if e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        return out + "".join(f" {s} {b}" for s, b in parts[1:])


# -- parsing -------------------------------------------------------------------

_TOKENS = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.replace("−", "-")
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            return tokens
        m = _TOKENS.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num), pos))
        elif name is not None:
            tokens.append(("var", name, pos))
        else:
            tokens.append(("op", "^" if op == "**" else op, pos))
        pos = m.end()


# Intermediate polynomials are dicts from frozensets of (var, exp) pairs to
# coefficients, so that the variable set need not be known in advance.

def _mul(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            exps = dict(ma)
            for v, e in mb:
                exps[v] = exps.get(v, 0) + e
            key = frozenset(exps.items())
            out[key] = out.get(key, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _add(a, b, sign=1):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + sign * c
    return {k: c for k, c in out.items() if c}


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.i += 1
        return tok

    def expr(self):
        acc = self.term()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.take()
            acc = _add(acc, self.term(), 1 if tok[1] == "+" else -1)
        return acc

    def term(self):
        acc = self.unary()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] == "*":
            self.take()
            acc = _mul(acc, self.unary())
        return acc

    def unary(self):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return inner if tok[1] == "+" else {k: -c for k, c in inner.items()}
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num":
                raise NonNaturalExponent(f"exponent at column {exp_tok[2] + 1} must be a natural literal")
            result = {frozenset(): 1}
            for _ in range(exp_tok[1]):
                result = _mul(result, base)
            return result
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            return {frozenset(): value} if value else {}
        if kind == "var":
            return {frozenset({(value, 1)}): 1}
        if value == "(":
            inner = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                raise ParseError(f"expected ')' at column {close[2] + 1}")
            return inner
        raise ParseError(f"unexpected {value!r} at column {pos + 1}")


def parse_polynomial(text: str, variables: Optional[Sequence[str]] = None) -> Polynomial:
    """Parse and expand an integer polynomial expression.

    Variables are ordered naturally by name (``x2`` before ``x10``) unless an
    explicit order is given.
    """
    parser = _Parser(text)
    if parser.peek() is None:
        raise ParseError("empty expression")
    raw = parser.expr()
    if parser.peek() is not None:
        tok = parser.peek()
        raise ParseError(f"unexpected {tok[1]!r} at column {tok[2] + 1}")
    seen = {tok[1] for tok in parser.tokens if tok[0] == "var"}
    if variables is None:
        variables = sorted(seen, key=_natural_key)
    else:
        variables = list(variables)
        missing = seen - set(variables)
        if missing:
            raise DimensionMismatch(f"expression uses undeclared variables {sorted(missing)}")
    index = {v: i for i, v in enumerate(variables)}
    terms = {}
    for mono, c in raw.items():
        exps = [0] * len(variables)
        for v, e in mono:
            exps[index[v]] = e
        terms[tuple(exps)] = c
    return Polynomial(tuple(variables), terms)


def evaluate(p: Polynomial, point: Sequence[int]) -> int:
    if len(point) != len(p.variables):
        raise DimensionMismatch(
            f"polynomial in {len(p.variables)} variables evaluated at a point of length {len(point)}")
    total = 0
    for exps, c in p.terms.items():
        v = c
        for x, e in zip(point, exps):
            if e:
                v *= x ** e
        total += v
    return total


# -- results -------------------------------------------------------------------

@dataclass(frozen=True)
class AllSolutionsInBox:
    solutions: tuple[tuple[int, ...], ...]
    bound: int


@dataclass(frozen=True)
class DecidedSolvable:
    witness: tuple[int, ...]


@dataclass(frozen=True)
class DecidedUnsolvable:
    reason: str


@dataclass(frozen=True)
class UnknownBeyondBound:
    bound: int


SearchResult = Union[AllSolutionsInBox, DecidedSolvable, DecidedUnsolvable, UnknownBeyondBound]


# -- degree one ------------------------------------------------------------------

def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) >= 0`` and ``s*a + t*b = g``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _integer_solution(coeffs: Sequence[int], target: int) -> Optional[list[int]]:
    """Some integer vector x with ``sum(coeffs[i] * x[i]) == target``, or None."""
    g, weights = 0, []
    # Invariant: sum(coeffs[i] * weights[i]) == g == gcd(coeffs[:len(weights)]).
    for a in coeffs:
        g2, s, t = extended_gcd(g, a)
        weights = [w * s for w in weights] + [t]
        g = g2
    if g == 0:
        return [0] * len(coeffs) if target == 0 else None
    if target % g:
        return None
    q = target // g
    return [w * q for w in weights]


def _ceil_div(a, b):
    return -((-a) // b)


def _two_variable_nat(a: int, b: int, target: int) -> Optional[tuple[int, int]]:
    """Least-x natural solution of ``a*x + b*y == target`` with a, b non-zero."""
    sol = _integer_solution([a, b], target)
    if sol is None:
        return None
    x0, y0 = sol
    g = gcd(a, b)
    dx, dy = b // g, -a // g
    # x = x0 + dx*t >= 0 and y = y0 + dy*t >= 0
    lo, hi = None, None
    for base, slope in ((x0, dx), (y0, dy)):
        if slope > 0:
            bound = _ceil_div(-base, slope)
            lo = bound if lo is None else max(lo, bound)
        else:
            bound = base // (-slope)
            hi = bound if hi is None else min(hi, bound)
    if lo is not None and hi is not None and lo > hi:
        return None
    t = lo if dx > 0 else hi
    return x0 + dx * t, y0 + dy * t


def solve_linear(p: Polynomial, domain: str = "nat",
                 search_cap: int = DEFAULT_LINEAR_SEARCH_CAP) -> SearchResult:
    """Decide ``p = 0`` for a polynomial of total degree at most one."""
    if p.degree > 1:
        raise DegreeTooHigh(f"solve_linear needs degree <= 1, got degree {p.degree}")
    _check_domain(domain)
    k = len(p.variables)
    coeffs = p.linear_coefficients()
    target = -p.constant()
    active = [i for i, a in enumerate(coeffs) if a]
    g = 0
    for i in active:
        g = gcd(g, coeffs[i])
    if not active:
        if target == 0:
            return DecidedSolvable((0,) * k)
        return DecidedUnsolvable(f"non-zero constant {-target} = 0 has no solution")
    if target % g:
        return DecidedUnsolvable(f"gcd {g} of the coefficients does not divide {target}")

    def embed(values):
        point = [0] * k
        for i, v in zip(active, values):
            point[i] = v
        return tuple(point)

    if domain == "int":
        return DecidedSolvable(embed(_integer_solution([coeffs[i] for i in active], target)))

    a = [coeffs[i] for i in active]
    if len(a) == 1:
        x = target // a[0]
        if x < 0:
            return DecidedUnsolvable(f"the only integer solution {x} is negative")
        return DecidedSolvable(embed([x]))
    if len(a) == 2:
        sol = _two_variable_nat(a[0], a[1], target)
        if sol is None:
            return DecidedUnsolvable("the integer solution line misses the non-negative quadrant")
        return DecidedSolvable(embed(sol))

    if any(c > 0 for c in a) and any(c < 0 for c in a):
        return DecidedSolvable(embed(_mixed_sign_nat(a, target)))
    # All coefficients share a sign, so every solution lies in a finite simplex.
    if (target > 0) != (a[0] > 0) and target != 0:
        return DecidedUnsolvable("every term has the same sign, opposite to the constant")
    a = [abs(c) for c in a]
    target = abs(target)
    found = _bounded_same_sign(a, target, search_cap)
    if found is None:
        return DecidedUnsolvable("no natural solution in the finite region bounded by the constant")
    if found is _CAPPED:
        return UnknownBeyondBound(max(target // c for c in a))
    return DecidedSolvable(embed(found))


def _mixed_sign_nat(a, target):
    # Shift an integer solution along kernel vectors that raise one positive-
    # and one negative-coefficient variable together until all are >= 0.
    x = _integer_solution(a, target)
    pos = [i for i, c in enumerate(a) if c > 0]
    neg = [i for i, c in enumerate(a) if c < 0]
    pairs = [(i, neg[0]) for i in pos] + [(pos[0], j) for j in neg[1:]]
    for i, j in pairs:
        # a[i] * (-a[j]) + a[j] * a[i] == 0
        step_i, step_j = -a[j], a[i]
        need = max(_ceil_div(-x[i], step_i), _ceil_div(-x[j], step_j), 0)
        x[i] += need * step_i
        x[j] += need * step_j
    return x


_CAPPED = object()


def _bounded_same_sign(a, target, cap):
    """Natural solution of sum(a[i]*x[i]) == target with all a[i] > 0, searched exhaustively."""
    budget = [cap]

    def go(i, remaining):
        if i == len(a) - 2:
            sol = _two_variable_nat(a[i], a[i + 1], remaining)
            return None if sol is None else list(sol)
        for v in range(remaining // a[i] + 1):
            budget[0] -= 1
            if budget[0] < 0:
                return _CAPPED
            rest = go(i + 1, remaining - a[i] * v)
            if rest is _CAPPED:
                return rest
            if rest is not None:
                return [v] + rest
        return None

    return go(0, target)


# -- bounded search ----------------------------------------------------------------

def positivity_certificate(p: Polynomial) -> Optional[str]:
    """A reason why ``p`` can never vanish on integer points, or None.

    Recognised shape: every exponent even, every coefficient of one sign, and
    a non-zero constant term of that same sign.  Then ``|p| >= |constant| > 0``.
    """
    if p.is_zero() or p.constant() == 0:
        return None
    if any(e % 2 for exps in p.terms for e in exps):
        return None
    signs = {c > 0 for c in p.terms.values()}
    if len(signs) != 1:
        return None
    which = "positive" if signs.pop() else "negative"
    return (f"all exponents are even and all coefficients {which}, "
            f"so |p| >= {abs(p.constant())} everywhere")


def _axis(bound, domain):
    return range(0, bound + 1) if domain == "nat" else range(-bound, bound + 1)


def box_roots(p: Polynomial, bound: int, domain: str = "nat",
              cap: int = DEFAULT_BOX_CAP) -> list[tuple[int, ...]]:
    """Every root of ``p`` in the box, in lexicographic order."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    _check_domain(domain)
    k = len(p.variables)
    axis = _axis(bound, domain)
    if len(axis) ** k > cap:
        raise ResourceLimit(f"box of {len(axis)}^{k} points exceeds the search cap {cap}")
    if k == 0:
        return [()] if p.is_zero() else []
    terms = list(p.terms.items())
    roots = []
    for point in product(axis, repeat=k):
        total = 0
        for exps, c in terms:
            v = c
            for x, e in zip(point, exps):
                if e:
                    v *= x ** e
            total += v
        if total == 0:
            roots.append(point)
    return roots


def search_box(p: Polynomial, bound: int, domain: str = "nat",
               cap: int = DEFAULT_BOX_CAP) -> SearchResult:
    """Search ``{0..bound}^k`` (or ``{-bound..bound}^k``) for roots of ``p``.

    A recognised positivity certificate answers DecidedUnsolvable without
    searching.  Otherwise the roots found are returned; finding none gives
    UnknownBeyondBound, since roots may lie outside the box.
    """
    if len(p.variables) == 0 and p.is_zero():
        return AllSolutionsInBox(((),), bound)
    reason = positivity_certificate(p)
    if reason is not None:
        return DecidedUnsolvable(reason)
    roots = box_roots(p, bound, domain, cap)
    if roots:
        return AllSolutionsInBox(tuple(roots), bound)
    return UnknownBeyondBound(bound)


def solve(p: Polynomial, bound: int, domain: str = "nat",
          cap: int = DEFAULT_BOX_CAP) -> SearchResult:
    """Box search, falling back on the exact linear decision when the box is empty."""
    result = search_box(p, bound, domain, cap)
    if isinstance(result, UnknownBeyondBound) and p.degree <= 1:
        return solve_linear(p, domain)
    return result


def _check_domain(domain):
    if domain not in DOMAINS:
        raise ValueError(f"domain must be one of {DOMAINS}, got {domain!r}")

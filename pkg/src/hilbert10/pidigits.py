"""Decimal digits of pi, and the first-run-of-fives function built on them.

Digits come from the Chudnovsky series summed by binary splitting in exact
integer arithmetic.  Every request is computed with guard digits; if the
guard digits are too close to a carry boundary to certify the requested
prefix, the computation is repeated with more guard digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Union

from .errors import ResourceLimit

DEFAULT_PRECISION_CAP = 1_000_000
GUARD_DIGITS = 10

_C3_OVER_24 = 640320**3 // 24
_DIGITS_PER_TERM = 14.18


def _split(a, b):
    if b - a == 1:
        if a == 0:
            p = q = 1
        else:
            p = (6 * a - 5) * (2 * a - 1) * (6 * a - 1)
            q = a * a * a * _C3_OVER_24
        t = p * (13591409 + 545140134 * a)
        return p, q, -t if a & 1 else t
    m = (a + b) // 2
    p1, q1, t1 = _split(a, m)
    p2, q2, t2 = _split(m, b)
    return p1 * p2, q1 * q2, q2 * t1 + p1 * t2


def _scaled_pi(digits: int) -> int:
    """floor(pi * 10**digits), up to an error of a few units in the last place."""
    terms = int(digits / _DIGITS_PER_TERM) + 2
    _, q, t = _split(0, terms)
    one = 10**digits
    sqrt_c = isqrt(10005 * one * one)
    return q * 426880 * sqrt_c // t


def _decimal(n: int, width: int) -> str:
    """Zero-padded decimal text of ``n``; avoids the interpreter's int-to-str size limit."""
    if width <= 2000:
        return str(n).zfill(width)
    low = width // 2
    high, rest = divmod(n, 10**low)
    return _decimal(high, width - low) + _decimal(rest, low)


@dataclass(frozen=True)
class DigitStream:
    digits: tuple[int, ...]
    precision: int

    def __len__(self):
        return len(self.digits)

    def __str__(self):
        return "".join(map(str, self.digits))


_cache = ""


def _digit_string(count: int) -> str:
    global _cache
    if len(_cache) >= count:
        return _cache[:count]
    guard = GUARD_DIGITS
    while True:
        scaled = _scaled_pi(count + guard)
        tail = scaled % 10**guard
        # Truncation error is a few units; stay clear of a carry into the prefix.
        if 100 <= tail <= 10**guard - 100:
            break
        guard *= 2
    text = _decimal(scaled % 10 ** (count + guard), count + guard)[:count]
    if len(text) > len(_cache):
        _cache = text
    return text


def pi_digits(count: int, cap: int = DEFAULT_PRECISION_CAP) -> DigitStream:
    """The first ``count`` decimal digits of pi after the point."""
    if count < 0:
        raise ValueError("digit count must be non-negative")
    if count > cap:
        raise ResourceLimit(f"{count} digits exceeds the precision cap {cap}")
    return DigitStream(tuple(int(c) for c in _digit_string(count)), count)


@dataclass(frozen=True)
class UnknownBeyondLimit:
    limit: int


def run_position(x: int, digit_limit: int,
                 cap: int = DEFAULT_PRECISION_CAP) -> Union[int, UnknownBeyondLimit]:
    """1-based position of the first digit of the first run of ``x`` fives.

    Only digits 1..``digit_limit`` after the point are examined; a run that
    starts inside the limit but would finish past it does not count.
    """
    if x < 1:
        raise ValueError("run length must be at least 1")
    if digit_limit < 0:
        raise ValueError("digit limit must be non-negative")
    if digit_limit > cap:
        raise ResourceLimit(f"{digit_limit} digits exceeds the precision cap {cap}")
    found = _digit_string(digit_limit).find("5" * x)
    if found < 0:
        return UnknownBeyondLimit(digit_limit)
    return found + 1

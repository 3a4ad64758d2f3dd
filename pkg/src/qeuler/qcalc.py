"""Exact q-calculus primitives over the rationals.

Every scalar is a :class:`fractions.Fraction`.  A q-power ``q**(W*e)`` is only
ever formed when ``W*e`` is an integer; rational exponents with no compensating
base power are rejected instead of being approximated.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import count as _count
from math import gcd
from typing import Iterable, Iterator, Union

Rational = Fraction
QSample = Fraction
RationalLike = Union[int, Fraction, str]

_FORBIDDEN = (Fraction(0), Fraction(1), Fraction(-1))


class InadmissibleQ(ValueError):
    """q is 0, 1 or -1, where the closed forms have vanishing denominators."""


class NonIntegralPower(ValueError):
    """A q-power q**(W*e) was requested with W*e not an integer."""


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted on the exact path")
    return Fraction(value)


def qsample(value: RationalLike) -> QSample:
    """Validate and return ``value`` as an admissible evaluation point."""
    q = as_rational(value)
    if q in _FORBIDDEN:
        raise InadmissibleQ(f"q={q} is not admissible (q must avoid 0, 1, -1)")
    return q


def integral_exponent(e: RationalLike, W: int) -> int:
    """Return ``W*e`` as an int, or raise :class:`NonIntegralPower`."""
    if W < 1:
        raise ValueError(f"base power must be a positive integer, got {W}")
    s = as_rational(e) * W
    if s.denominator != 1:
        raise NonIntegralPower(f"{W}*({e}) = {s} is not an integer")
    return s.numerator


@lru_cache(maxsize=65536)
def _ipow(q: Fraction, k: int) -> Fraction:
    return q**k


def q_pow(e: RationalLike, W: int, q: QSample) -> Rational:
    """``q**(W*e)`` exactly; negative exponents are allowed."""
    k = integral_exponent(e, W)
    if k == 0:
        return Fraction(1)
    return _ipow(as_rational(q), k)


def q_bracket(r: RationalLike, W: int, q: QSample) -> Rational:
    """The q-number ``[r]_{q^W} = (1 - q^(W r)) / (1 - q^W)``."""
    q = qsample(q)
    k = integral_exponent(r, W)
    if k == 0:
        return Fraction(0)
    return (1 - _ipow(q, k)) / (1 - _ipow(q, W))


def q_int(k: int, q: QSample) -> Rational:
    """``[k]_q`` for an integer ``k``; shorthand for ``q_bracket(k, 1, q)``."""
    return q_bracket(k, 1, q)


def _admissible_stream() -> Iterator[Fraction]:
    # rationals > 1 ordered by height max(num, den), then by decreasing value
    for h in _count(2):
        yield Fraction(h)
        for d in range(2, h):
            if gcd(h, d) == 1:
                yield Fraction(h, d)


def sample_points(
    count: int,
    exclusions: Iterable[RationalLike] = (),
    seed: int | None = None,
) -> list[QSample]:
    """Return ``count`` distinct admissible rationals avoiding ``exclusions``.

    Without a seed the points are the first admissible values of a fixed
    enumeration (2, 3, 3/2, 4, 4/3, 5, 5/2, ...).  With a seed, a pool of twice
    that size is shuffled deterministically and truncated.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if count == 0:
        return []
    excluded = {as_rational(e) for e in exclusions}
    pool_size = count if seed is None else 2 * count
    pool: list[Fraction] = []
    for q in _admissible_stream():
        if q not in excluded:
            pool.append(q)
            if len(pool) == pool_size:
                break
    if seed is not None:
        random.Random(seed).shuffle(pool)
    return pool[:count]


def format_rational(x: Fraction) -> str:
    """Canonical ``p/q`` string; integers keep the ``/1`` so parsing is uniform."""
    return f"{x.numerator}/{x.denominator}"

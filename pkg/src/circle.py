"""
Exact arithmetic on the unit circle R/Z: angles, the tripling map, the half turn
and orbit analysis. Everything here is a pure function of immutable values.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .exceptions import ParseError

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
SIXTH = Fraction(1, 6)
QUARTER = Fraction(1, 4)

_ANGLE_PATTERN = re.compile(r'^(\d+)/(\d+)$')


@dataclass(frozen=True, order=True)
class Angle:
    """A point of the circle, stored as a reduced fraction in [0, 1)."""

    value: Fraction

    def __post_init__(self):
        if not ZERO <= self.value < ONE:
            raise ValueError(f'angle out of range [0, 1): {self.value}')

    @classmethod
    def of(cls, x: RationalLike) -> 'Angle':
        """Build an angle from any rational (or 'p/q' string), reducing mod 1."""
        return cls(Fraction(x) % 1)

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __str__(self) -> str:
        return format_angle(self)


@dataclass(frozen=True)
class OrbitInfo:
    preperiod: int
    period: int
    orbit: tuple[Angle, ...]


def sigma3(a: Angle) -> Angle:
    return Angle((3 * a.value) % 1)


def tau(a: Angle) -> Angle:
    return Angle((a.value + HALF) % 1)


def preimages(a: Angle) -> tuple[Angle, Angle, Angle]:
    """The three sigma3-preimages of a, in increasing order."""
    return tuple(Angle((a.value + i) / 3) for i in range(3))


def orbit_info(a: Angle) -> OrbitInfo:
    """
    Preperiod and period of a under sigma3, by direct iteration.

    Every angle is rational, so the orbit is finite and the loop terminates once an
    iterate repeats.

    Args:
        a: Starting angle

    Returns:
        OrbitInfo: preperiod m, period k and the m + k distinct iterates in order
    """
    seen: dict[Angle, int] = {}
    orbit: list[Angle] = []
    x = a
    while x not in seen:
        seen[x] = len(orbit)
        orbit.append(x)
        x = sigma3(x)
    preperiod = seen[x]
    return OrbitInfo(preperiod, len(orbit) - preperiod, tuple(orbit))


def in_open_arc(a: Angle, b: Angle, x: Angle) -> bool:
    """
    True iff x lies strictly inside the positively oriented arc from a to b.

    For a == b the arc is taken to be the whole circle minus a.
    """
    av, bv, xv = a.value, b.value, x.value
    if av < bv:
        return av < xv < bv
    if av > bv:
        return xv > av or xv < bv
    return xv != av


def in_closed_arc(a: Angle, b: Angle, x: Angle) -> bool:
    return x == a or x == b or in_open_arc(a, b, x)


def arc_length(a: Angle, b: Angle) -> Fraction:
    """Length of the positively oriented arc from a to b."""
    return (b.value - a.value) % 1


def circle_dist(a: Angle, b: Angle) -> Fraction:
    d = abs(a.value - b.value)
    return min(d, ONE - d)


def parse_angle(text: str) -> Angle:
    """
    Parse the textual form 'p/q' of a reduced angle in [0, 1).

    Raises:
        ParseError: if the text is not a reduced fraction p/q with 0 <= p < q
    """
    token = text.strip()
    match = _ANGLE_PATTERN.match(token)
    if match is None:
        raise ParseError(token, 'invalid angle')
    p, q = int(match.group(1)), int(match.group(2))
    if q == 0 or p >= q:
        raise ParseError(token, 'angle out of range')
    if gcd(p, q) != 1:
        raise ParseError(token, 'angle not in lowest terms')
    return Angle(Fraction(p, q))


def format_angle(a: Angle) -> str:
    return f'{a.value.numerator}/{a.value.denominator}'

"""Legal-pair criterion for rational symmetric pairs of chords."""

from dataclasses import dataclass
from typing import Optional, Union

from .chords import (
    Chord,
    image,
    length,
    linked,
    major_data,
    opposite,
    short_strips,
    strip_interior_hit,
)
from .circle import SIXTH, orbit_info
from .exceptions import InvariantViolation
from .utils.logger import logger


@dataclass(frozen=True)
class SymmetricPair:
    """
    A chord and its half-turn image. The smaller chord in canonical order is always
    stored in c, so {c, -c} and {-c, c} build equal pairs.
    """

    c: Chord
    minus_c: Chord

    def __post_init__(self):
        if opposite(self.c) != self.minus_c:
            raise ValueError(f'{self.minus_c} is not the half-turn image of {self.c}')
        if self.minus_c < self.c:
            first, second = self.minus_c, self.c
            object.__setattr__(self, 'c', first)
            object.__setattr__(self, 'minus_c', second)

    @classmethod
    def of(cls, chord: Chord) -> 'SymmetricPair':
        return cls(chord, opposite(chord))

    @property
    def is_degenerate(self) -> bool:
        return self.c.is_degenerate

    @property
    def chords(self) -> tuple[Chord, Chord]:
        return (self.c, self.minus_c)

    def __str__(self) -> str:
        return f'{{{self.c}, {self.minus_c}}}'


@dataclass(frozen=True)
class CrossingImages:
    """sigma3^i(c) crosses sigma3^j(c), or its half-turn image when opposite is set."""

    i: int
    j: int
    first: Chord
    second: Chord
    opposite: bool = False

    def __str__(self) -> str:
        sign = '-' if self.opposite else ''
        return f'image {self.i} ({self.first}) crosses image {sign}{self.j} ({self.second})'


@dataclass(frozen=True)
class StripHit:
    n: int
    chord: Chord
    major: Chord

    def __str__(self) -> str:
        return f'image {self.n} ({self.chord}) enters the short strips of {self.major}'


Violation = Union[CrossingImages, StripHit]


@dataclass(frozen=True)
class LegalityVerdict:
    legal: bool
    violation: Optional[Violation]
    orbit_length: int

    def __str__(self) -> str:
        if self.legal:
            return 'legal'
        if self.violation is None:
            return 'illegal: not a short chord'
        return f'illegal: {self.violation}'


def forward_images(c: Chord) -> list[Chord]:
    """sigma3(c), sigma3^2(c), ... until the first repeat; distinct, in order."""
    images: list[Chord] = []
    seen: set[Chord] = set()
    x = image(c)
    while x not in seen:
        seen.add(x)
        images.append(x)
        x = image(x)
    return images


def _first_crossing(orbit: list[Chord]) -> Optional[CrossingImages]:
    # the images of -c are the half-turns of the images of c
    mirrored = [opposite(x) for x in orbit]
    for i, first in enumerate(orbit):
        for j in range(i, len(orbit)):
            if j > i and linked(first, orbit[j]):
                return CrossingImages(i, j, first, orbit[j])
            if linked(first, mirrored[j]):
                return CrossingImages(i, j, first, mirrored[j], opposite=True)
    return None


def is_legal_pair(pair: SymmetricPair) -> LegalityVerdict:
    """
    Decide whether a symmetric pair is legal.

    A degenerate pair is always legal. Otherwise the pair is legal iff no two forward
    images of c and -c cross, and no image sigma3^n(c) with n >= 1 meets the open short
    strips of the major M_c.

    Args:
        pair: Symmetric pair with rational endpoints and |c| < 1/6

    Returns:
        LegalityVerdict: the verdict, with the first violation found on rejection

    Raises:
        ValueError: if |c| >= 1/6
        InvariantViolation: if an accepted pair contradicts the comajor properties
    """
    c = pair.c
    images = forward_images(c)
    if pair.is_degenerate:
        return LegalityVerdict(True, None, len(images))
    if length(c) >= SIXTH:
        raise ValueError(f'legality is decided for chords shorter than 1/6, got {c}')

    orbit = [c] + [x for x in images if x != c]
    crossing = _first_crossing(orbit)
    if crossing is not None:
        logger.debug(f'{pair} rejected: {crossing}')
        return LegalityVerdict(False, crossing, len(images))

    major = major_data(c).major
    strips = short_strips(major)
    for n, x in enumerate(images, start=1):
        if strip_interior_hit(strips, x):
            hit = StripHit(n, x, major)
            logger.debug(f'{pair} rejected: {hit}')
            return LegalityVerdict(False, hit, len(images))

    _check_accepted(c, images)
    return LegalityVerdict(True, None, len(images))


def _check_accepted(c: Chord, images: list[Chord]) -> None:
    if c in images:
        logger.error(f'accepted comajor {c} is periodic')
        raise InvariantViolation(f'accepted comajor {c} is periodic')
    bound = 3 * length(c)
    for n, x in enumerate(images, start=1):
        if length(x) < bound:
            logger.error(f'image {n} of accepted comajor {c} is shorter than {bound}')
            raise InvariantViolation(
                f'image {n} ({x}) of accepted comajor {c} is shorter than {bound}'
            )


def endpoint_consistency(c: Chord) -> bool:
    """True iff both endpoints of c have the same preperiod and period."""
    first, second = orbit_info(c.a), orbit_info(c.b)
    return (first.preperiod, first.period) == (second.preperiod, second.period)


def minor_pair(pair: SymmetricPair) -> tuple[Chord, Chord]:
    return image(pair.c), image(pair.minus_c)

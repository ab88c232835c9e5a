"""
Chord geometry on the closed disk: lengths and length classes, linking, images,
sibling collections, short strips and the majors of a short chord.

No coordinates are used anywhere in this module; every predicate reduces to exact
comparisons of angles along the circle.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .circle import (
    HALF,
    QUARTER,
    SIXTH,
    THIRD,
    Angle,
    RationalLike,
    arc_length,
    circle_dist,
    in_closed_arc,
    in_open_arc,
    parse_angle,
    sigma3,
    tau,
)
from .exceptions import ParseError

AngleLike = Union[Angle, RationalLike]


class LengthClass(Enum):
    DEGENERATE = 'degenerate'
    SHORT = 'short'
    MEDIUM = 'medium'
    CRITICAL = 'critical'
    LONG = 'long'


class CollectionType(Enum):
    SSS = 'sss'
    MMM = 'mmm'
    SML = 'sml'


def _as_angle(x: AngleLike) -> Angle:
    return x if isinstance(x, Angle) else Angle.of(x)


@dataclass(frozen=True, order=True)
class Chord:
    """Unordered pair of angles, stored with a <= b. a == b is a degenerate chord."""

    a: Angle
    b: Angle

    def __post_init__(self):
        if self.b.value < self.a.value:
            raise ValueError(f'chord endpoints out of order: {self.a}, {self.b}')

    @classmethod
    def of(cls, x: AngleLike, y: AngleLike) -> 'Chord':
        x, y = _as_angle(x), _as_angle(y)
        return cls(x, y) if x.value <= y.value else cls(y, x)

    @classmethod
    def point(cls, x: AngleLike) -> 'Chord':
        x = _as_angle(x)
        return cls(x, x)

    @property
    def is_degenerate(self) -> bool:
        return self.a == self.b

    @property
    def endpoints(self) -> tuple[Angle, Angle]:
        return (self.a, self.b)

    def shares_endpoint(self, other: 'Chord') -> bool:
        return self.a in other.endpoints or self.b in other.endpoints

    def __str__(self) -> str:
        return format_chord(self)


@dataclass(frozen=True)
class Strip:
    """
    Closed region between two disjoint chords.

    caps holds, for each side chord, the closed arc cut off by that chord on the far
    side of the strip. A chord stays outside the open strip iff both of its endpoints
    lie in one cap.
    """

    sides: tuple[Chord, Chord]
    caps: tuple[tuple[Angle, Angle], tuple[Angle, Angle]]


@dataclass(frozen=True)
class ShortStrips:
    base: Chord
    sibling: Chord
    strips: tuple[Strip, Strip]
    width: Fraction

    @property
    def boundary_chords(self) -> tuple[Chord, ...]:
        return self.strips[0].sides + self.strips[1].sides


@dataclass(frozen=True)
class MajorData:
    """Majors of a short or degenerate chord c and the critical quadrilateral Q_c."""

    comajor: Chord
    major: Chord
    major_prime: Chord
    quad: tuple[Angle, ...]
    degenerate: bool

    @property
    def minor(self) -> Chord:
        return image(self.comajor)

    def quad_edges(self) -> tuple[Chord, ...]:
        """Edges of Q_c in circular order; the critical chord alone when degenerate."""
        if self.degenerate:
            return (self.major,)
        q = self.quad
        return tuple(Chord.of(q[i], q[(i + 1) % 4]) for i in range(4))

    def short_edges(self) -> tuple[Chord, ...]:
        if self.degenerate:
            return ()
        return tuple(e for e in self.quad_edges() if length(e) == length(self.comajor))


def length(chord: Chord) -> Fraction:
    return circle_dist(chord.a, chord.b)


def length_class(chord: Chord) -> LengthClass:
    t = length(chord)
    if t == 0:
        return LengthClass.DEGENERATE
    if t < SIXTH:
        return LengthClass.SHORT
    if t < THIRD:
        return LengthClass.MEDIUM
    if t == THIRD:
        return LengthClass.CRITICAL
    return LengthClass.LONG


def gamma(t: Fraction) -> Fraction:
    """Length of the image of a chord of length t: distance of 3t to the nearest integer."""
    t = Fraction(t)
    if not 0 <= t <= HALF:
        raise ValueError(f'chord length out of range [0, 1/2]: {t}')
    r = (3 * t) % 1
    return min(r, 1 - r)


def image(chord: Chord) -> Chord:
    return Chord.of(sigma3(chord.a), sigma3(chord.b))


def opposite(chord: Chord) -> Chord:
    """The half-turn image of a chord (written -chord)."""
    return Chord.of(tau(chord.a), tau(chord.b))


def rotate(chord: Chord, t: Fraction) -> Chord:
    return Chord.of(Angle.of(chord.a.value + t), Angle.of(chord.b.value + t))


def rotate_quarter(chord: Chord) -> Chord:
    return rotate(chord, QUARTER)


def linked(first: Chord, second: Chord) -> bool:
    """True iff the chords cross inside the open disk."""
    if first.is_degenerate or second.is_degenerate or first.shares_endpoint(second):
        return False
    return in_open_arc(first.a, first.b, second.a) != in_open_arc(
        first.a, first.b, second.b
    )


def is_diameter(chord: Chord) -> bool:
    return length(chord) == HALF


def _short_arc(chord: Chord) -> tuple[Angle, Angle]:
    # (a, b) with the positive arc from a to b the shorter one; diameters keep order
    if arc_length(chord.a, chord.b) <= HALF:
        return chord.a, chord.b
    return chord.b, chord.a


def _siblings_from(a: Angle, b: Angle) -> tuple[Chord, Chord]:
    return (
        Chord.of(Angle.of(a.value + THIRD), Angle.of(b.value - THIRD)),
        Chord.of(Angle.of(a.value + 2 * THIRD), Angle.of(b.value - 2 * THIRD)),
    )


def siblings(chord: Chord) -> tuple[Chord, Chord]:
    """
    The two siblings (l', l'') of a chord forming the sibling collection that always
    exists: with (a, b) the shorter arc, l' = {a+1/3, b-1/3} and l'' = {a+2/3, b-2/3}.

    Raises:
        ValueError: for degenerate chords, critical chords and diameters
    """
    cls = length_class(chord)
    if cls in (LengthClass.DEGENERATE, LengthClass.CRITICAL) or is_diameter(chord):
        raise ValueError(f'no sibling collection defined for {cls.value} chord {chord}')
    return _siblings_from(*_short_arc(chord))


def rotated_siblings(chord: Chord) -> tuple[Chord, Chord]:
    """
    The sibling collection made of the rotations of a chord by 1/3 and 2/3.

    Only exists for short and medium chords; all three members share one length.
    """
    cls = length_class(chord)
    if cls not in (LengthClass.SHORT, LengthClass.MEDIUM):
        raise ValueError(f'rotated siblings need a short or medium chord, got {chord}')
    return rotate(chord, THIRD), rotate(chord, 2 * THIRD)


def is_sibling_collection(collection: Sequence[Chord]) -> bool:
    if len(collection) != 3 or any(c.is_degenerate for c in collection):
        return False
    target = image(collection[0])
    if target.is_degenerate or any(image(c) != target for c in collection[1:]):
        return False
    for i in range(3):
        for j in range(i + 1, 3):
            first, second = collection[i], collection[j]
            if first.shares_endpoint(second) or linked(first, second):
                return False
    return True


def collection_type(chords: Union[Chord, Sequence[Chord]]) -> CollectionType:
    """
    Classify a sibling collection.

    A single chord is classified through the collection returned by siblings();
    a sequence of three chords is classified as given.
    """
    if isinstance(chords, Chord):
        collection = (chords, *siblings(chords))
    else:
        collection = tuple(chords)
        if not is_sibling_collection(collection):
            raise ValueError('not a sibling collection: ' + ', '.join(map(str, collection)))
    classes = {length_class(c) for c in collection}
    if classes == {LengthClass.SHORT}:
        return CollectionType.SSS
    if classes == {LengthClass.MEDIUM}:
        return CollectionType.MMM
    return CollectionType.SML


def _outer_arc(chord: Chord, other: Chord) -> tuple[Angle, Angle]:
    # the arc of chord away from other
    if in_open_arc(chord.a, chord.b, other.a) or in_open_arc(chord.a, chord.b, other.b):
        return chord.b, chord.a
    return chord.a, chord.b


def strip_between(first: Chord, second: Chord) -> Strip:
    return Strip(
        sides=(first, second),
        caps=(_outer_arc(first, second), _outer_arc(second, first)),
    )


def short_strips(chord: Chord) -> ShortStrips:
    """
    Short strips SH(l) = C(l) u C(-l) of a long or medium chord.

    Raises:
        ValueError: for short, critical or degenerate chords
    """
    cls = length_class(chord)
    if cls not in (LengthClass.LONG, LengthClass.MEDIUM):
        raise ValueError(f'short strips need a long or medium chord, got {cls.value} {chord}')
    sibling = _siblings_from(*_short_arc(chord))[0]
    return ShortStrips(
        base=chord,
        sibling=sibling,
        strips=(
            strip_between(chord, sibling),
            strip_between(opposite(chord), opposite(sibling)),
        ),
        width=abs(THIRD - length(chord)),
    )


def hits_strip(strip: Strip, x: Chord) -> bool:
    if x.is_degenerate:
        return False
    for start, end in strip.caps:
        if in_closed_arc(start, end, x.a) and in_closed_arc(start, end, x.b):
            return False
    return True


def strip_interior_hit(strips: ShortStrips, x: Chord) -> bool:
    """True iff x meets the open region of C(l) or C(-l)."""
    return any(hits_strip(strip, x) for strip in strips.strips)


def major_data(c: Chord) -> MajorData:
    """
    The long/medium siblings M_c, M'_c of a short chord c and the quadrilateral Q_c,
    or the critical chord disjoint from c when c is a point.

    Raises:
        ValueError: if c has length 1/6 or more
    """
    if c.is_degenerate:
        x = c.a.value
        critical = Chord.of(Angle.of(x + THIRD), Angle.of(x + 2 * THIRD))
        return MajorData(c, critical, critical, critical.endpoints, True)
    if length(c) >= SIXTH:
        raise ValueError(f'majors are only defined for short chords, got {c}')
    major, major_prime = _siblings_from(*_short_arc(c))
    quad = tuple(sorted({*major.endpoints, *major_prime.endpoints}))
    return MajorData(c, major, major_prime, quad, False)


def crossing_pairs(chords: Iterable[Chord]) -> list[tuple[Chord, Chord]]:
    """
    Linked pairs found by a sweep over the chords sorted by left endpoint.

    The result is empty iff the family is pairwise unlinked. When it is not, at least
    one crossing pair is reported, not necessarily all of them.
    """
    items = sorted(
        {c for c in chords if not c.is_degenerate},
        key=lambda c: (c.a.value, -c.b.value),
    )
    stack: list[Chord] = []
    found: list[tuple[Chord, Chord]] = []
    for chord in items:
        while stack and stack[-1].b.value <= chord.a.value:
            stack.pop()
        if stack and stack[-1].b.value < chord.b.value:
            found.append((stack[-1], chord))
            continue
        stack.append(chord)
    return found


def parse_chord(text: str) -> Chord:
    """
    Parse 'p/q-r/s' (a chord) or 'p/q' (a point).

    Raises:
        ParseError: on malformed endpoints or a chord with equal endpoints
    """
    token = text.strip()
    parts = token.split('-')
    if len(parts) == 1:
        return Chord.point(parse_angle(parts[0]))
    if len(parts) != 2:
        raise ParseError(token, 'invalid chord')
    first, second = parse_angle(parts[0]), parse_angle(parts[1])
    if first == second:
        raise ParseError(token, 'degenerate chord must be written as a point')
    return Chord.of(first, second)


def format_chord(chord: Chord) -> str:
    if chord.is_degenerate:
        return str(chord.a)
    return f'{chord.a}-{chord.b}'

"""Faces of a finite leaf set: extraction, images, degrees and classification tags."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Union

from .chords import (
    Chord,
    LengthClass,
    crossing_pairs,
    image,
    length,
    length_class,
    opposite,
)
from .circle import HALF, SIXTH, THIRD, Angle, arc_length, orbit_info, sigma3
from .exceptions import GapError
from .pullback import LeafSet
from .utils.helper import Report

DIAMETERS = (Chord.of(0, '1/2'), Chord.of('1/4', '3/4'))


class GapTag(Enum):
    COLLAPSING_QUAD = 'collapsing-quad'
    CRITICAL = 'critical'
    CENTRAL = 'central'
    FINITE_AT_DEPTH = 'finite-at-depth'


@dataclass(frozen=True)
class Gap:
    """
    A face of the disk cut by the leaves, given by its vertices in increasing order.

    edges holds the sides that are leaves; the remaining sides between consecutive
    vertices are circle arcs.
    """

    vertices: tuple[Angle, ...]
    edges: tuple[Chord, ...] = ()
    tags: frozenset = field(default_factory=frozenset)

    def sides(self) -> list[tuple[Angle, Angle]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    @property
    def has_arc_sides(self) -> bool:
        return len(self.edges) < len(self.sides()) or len(self.vertices) < 3

    def __str__(self) -> str:
        tags = ','.join(sorted(t.value for t in self.tags))
        if not self.vertices:
            return f'disk tags={tags}'
        return ','.join(map(str, self.vertices)) + f' tags={tags}'


def _raw_faces(chords: list[Chord]) -> list[list[Angle]]:
    # laminar sweep: the inner face of a chord has its endpoints and those of its
    # maximal children; the outer face has the endpoints of the top-level chords
    ordered = sorted(chords, key=lambda c: (c.a.value, -c.b.value))
    children: dict[Optional[Chord], list[Chord]] = {None: []}
    stack: list[Chord] = []
    for chord in ordered:
        while stack and stack[-1].b.value <= chord.a.value:
            stack.pop()
        parent = stack[-1] if stack else None
        children[parent].append(chord)
        children[chord] = []
        stack.append(chord)

    faces = []
    for owner, kids in children.items():
        points = {p for kid in kids for p in kid.endpoints}
        if owner is not None:
            points |= set(owner.endpoints)
        if points:
            faces.append(sorted(points))
    return faces


def _image_cycle(vertices: tuple[Angle, ...], leaves: frozenset) -> list[Angle]:
    # images of the vertex cycle, with critical edges collapsed to one point
    n = len(vertices)
    images = [sigma3(v) for v in vertices]
    cycle = []
    for i in range(n):
        nxt = (i + 1) % n
        if images[i] == images[nxt] and n > 1 and Chord.of(vertices[i], vertices[nxt]) in leaves:
            continue
        cycle.append(images[i])
    return cycle or images[:1]


def _is_central(vertices: tuple[Angle, ...]) -> bool:
    if len(vertices) < 3:
        return False
    n = len(vertices)
    return all(arc_length(vertices[i], vertices[(i + 1) % n]) < HALF for i in range(n))


def compute_gaps(ls: Union[LeafSet, Iterable[Chord]]) -> list[Gap]:
    """
    All faces of the disk subdivision induced by a pairwise unlinked set of chords.

    There is one face per chord plus the outer face. Faces are returned sorted by
    their vertex lists. Without chords the only face is the whole disk, a gap with no
    vertices.
    """
    chords = [c for c in ls if not c.is_degenerate]
    if not chords:
        return [Gap((), (), frozenset({GapTag.CENTRAL, GapTag.FINITE_AT_DEPTH}))]
    leaves = frozenset(chords)
    depth = ls.depth if isinstance(ls, LeafSet) else None
    generation = ls.generation if isinstance(ls, LeafSet) else {}

    gaps = []
    for points in _raw_faces(chords):
        vertices = tuple(points)
        edges = []
        for u, v in Gap(vertices).sides():
            edge = Chord.of(u, v)
            if u != v and edge in leaves and edge not in edges:
                edges.append(edge)
        gap = Gap(vertices, tuple(edges))
        gaps.append(Gap(vertices, tuple(edges), _tags(gap, leaves, depth, generation)))
    return sorted(gaps, key=lambda g: g.vertices)


def _tags(gap: Gap, leaves: frozenset, depth: Optional[int], generation) -> frozenset:
    tags = set()
    vertices = gap.vertices
    if gap.has_arc_sides or (
        depth is not None and any(generation.get(e, 0) >= depth for e in gap.edges)
    ):
        tags.add(GapTag.FINITE_AT_DEPTH)
    if _is_central(vertices):
        tags.add(GapTag.CENTRAL)
    if len(vertices) >= 3 and _winding(gap, leaves) >= 2:
        tags.add(GapTag.CRITICAL)
    if len(vertices) == 4 and not gap.has_arc_sides:
        if len(set(_image_cycle(vertices, leaves))) == 2:
            tags.add(GapTag.COLLAPSING_QUAD)
    return frozenset(tags)


def _winding(gap: Gap, leaves: frozenset) -> Fraction:
    # leaf sides follow their image chord, arc sides wrap three times as far
    total = Fraction(0)
    for u, v in gap.sides():
        if Chord.of(u, v) in leaves:
            total += arc_length(sigma3(u), sigma3(v))
        else:
            total += 3 * arc_length(u, v)
    return total


def gap_image(gap: Gap) -> Union[Gap, Chord, Angle]:
    """Convex hull of the vertex images: a point, a chord or a gap."""
    points = sorted({sigma3(v) for v in gap.vertices})
    if len(points) == 1:
        return points[0]
    if len(points) == 2:
        return Chord.of(*points)
    return Gap(tuple(points))


def gap_degree(gap: Gap) -> int:
    """
    Covering degree of sigma3 on the vertex cycle of a gap.

    Consecutive equal images are merged; the remaining cycle must run through the
    image vertices in positive order, possibly several times.

    Raises:
        GapError: if the image is not a gap or is not traversed positively
    """
    images = [sigma3(v) for v in gap.vertices]
    n = len(images)
    cycle = [images[i] for i in range(n) if images[i] != images[(i + 1) % n]] or images[:1]
    targets = sorted(set(cycle))
    if len(targets) < 3:
        raise GapError(f'image of gap {",".join(map(str, gap.vertices))} is not a gap')
    position = {x: i for i, x in enumerate(targets)}
    for i, x in enumerate(cycle):
        expected = targets[(position[x] + 1) % len(targets)]
        if cycle[(i + 1) % len(cycle)] != expected:
            raise GapError(
                f'image of gap {",".join(map(str, gap.vertices))} is not positively oriented'
            )
    return len(cycle) // len(targets)


def central_gap(ls: LeafSet, gaps: Optional[list[Gap]] = None) -> Union[Gap, Chord]:
    """
    The central diameter leaf if present, else the unique face around the center.

    Raises:
        GapError: if no central face exists or it is not unique
    """
    for diameter in DIAMETERS:
        if diameter in ls:
            return diameter
    if gaps is None:
        gaps = compute_gaps(ls)
    central = [g for g in gaps if GapTag.CENTRAL in g.tags]
    if len(central) != 1:
        raise GapError(f'expected one central gap, found {len(central)}')
    return central[0]


def critical_sets(ls: LeafSet, gaps: Optional[list[Gap]] = None) -> list[Union[Chord, Gap]]:
    """Critical leaves and critical faces of a leaf set."""
    if gaps is None:
        gaps = compute_gaps(ls)
    found: list[Union[Chord, Gap]] = [
        leaf for leaf in ls if length_class(leaf) == LengthClass.CRITICAL
    ]
    found += [g for g in gaps if GapTag.CRITICAL in g.tags]
    return found


def _edge_profile(gap: Gap) -> Optional[str]:
    long_edges = [e for e in gap.edges if length(e) >= THIRD]
    if len(long_edges) != 2 or long_edges[1] != opposite(long_edges[0]):
        return f'{len(long_edges)} edges of length >= 1/3'
    short = [e for e in gap.edges if e not in long_edges and length(e) >= SIXTH]
    if short:
        return f'edge {short[0]} has length {length(short[0])}'
    return None


def _all_periodic(vertices: tuple[Angle, ...]) -> bool:
    return all(orbit_info(v).preperiod == 0 for v in vertices)


def _polygon_orbit(vertices: tuple[Angle, ...]) -> list[tuple[Angle, ...]]:
    # sigma3 is injective on periodic points, so every image is again an n-gon
    orbit = [vertices]
    while True:
        nxt = tuple(sorted(sigma3(v) for v in orbit[-1]))
        if nxt == vertices:
            return orbit
        orbit.append(nxt)


def _polygon_edges(vertices: tuple[Angle, ...]) -> list[Chord]:
    n = len(vertices)
    return [Chord.of(vertices[i], vertices[(i + 1) % n]) for i in range(n)]


def _is_fixed_return(orbit: list[tuple[Angle, ...]]) -> bool:
    """Every vertex returns with the polygon and the distinct images do not overlap."""
    k = len(orbit)
    if any(k % orbit_info(v).period for v in orbit[0]):
        return False
    return not crossing_pairs(e for polygon in orbit for e in _polygon_edges(polygon))


def _misses_major(edge: Chord, targets: set[Chord]) -> bool:
    seen = set()
    while edge not in seen:
        if edge in targets:
            return False
        seen.add(edge)
        edge = image(edge)
    return True


def verify_gaps(ls: LeafSet) -> Report:
    """
    Check the face structure of a built lamination: orientation of finite gaps, the
    central gap's edge profile and exactly two critical sets. Periodic polygons (faces
    bounded by leaves whose vertices are all periodic) have no leaf diagonals, are not
    fixed return, and each of their edges eventually maps to P or -P, where P is the
    longest edge in the polygon's orbit.
    """
    report = Report('gaps')
    gaps = compute_gaps(ls)
    for gap in gaps:
        if gap.has_arc_sides or not isinstance(gap_image(gap), Gap):
            continue
        try:
            gap_degree(gap)
        except GapError as e:
            report.add('orientation', str(e))

    try:
        central = central_gap(ls, gaps)
    except GapError as e:
        report.add('central', str(e))
    else:
        if isinstance(central, Gap):
            problem = _edge_profile(central)
            if problem:
                report.add('central', problem)

    for gap in gaps:
        if len(gap.vertices) < 3 or not _all_periodic(gap.vertices):
            continue
        sides = {Chord.of(u, v) for u, v in gap.sides()}
        for u, v in combinations(gap.vertices, 2):
            diagonal = Chord.of(u, v)
            if diagonal not in sides and diagonal in ls:
                report.add('diagonal', f'{diagonal} is a diagonal of a periodic polygon')

        if gap.has_arc_sides:
            continue
        orbit = _polygon_orbit(gap.vertices)
        label = ','.join(map(str, gap.vertices))
        if _is_fixed_return(orbit):
            report.add('fixed-return', f'{label} returns with every vertex fixed')
        edges = [e for polygon in orbit for e in _polygon_edges(polygon)]
        major = max(edges, key=lambda e: (length(e), e))
        targets = {major, opposite(major)}
        for edge in gap.edges:
            if _misses_major(edge, targets):
                detail = f'{edge} never maps to {major} or {opposite(major)}'
                report.add('major-orbit', detail)

    count = len(critical_sets(ls, gaps))
    if count != 2:
        report.add('critical-sets', f'found {count} critical sets')
    return report

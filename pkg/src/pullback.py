"""
Finite-depth symmetric pullback laminations.

A lamination is grown generation by generation: every leaf added at generation g is
pulled back once, into the one sibling matching of its preimages that avoids a fixed
family of obstacle chords. Generations are computed in parallel and merged in
canonical order, so the result never depends on the worker count.
"""

from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from itertools import combinations, permutations
from typing import Iterable, Iterator, Mapping, Optional

from .chords import (
    Chord,
    LengthClass,
    crossing_pairs,
    gamma,
    image,
    is_sibling_collection,
    length,
    length_class,
    linked,
    major_data,
    opposite,
)
from .circle import SIXTH, THIRD, Angle, in_open_arc, preimages
from .exceptions import IllegalSeedError, InvariantViolation, PullbackError
from .legality import SymmetricPair, forward_images, is_legal_pair
from .utils.helper import Report, map_in_workers
from .utils.logger import logger

L16_COLLECTIONS: dict[int, tuple[Chord, Chord, Chord]] = {
    1: (
        Chord.of(0, '1/2'),
        Chord.of('1/6', '1/3'),
        Chord.of('2/3', '5/6'),
    ),
    2: (
        Chord.of('1/4', '3/4'),
        Chord.of('1/12', '11/12'),
        Chord.of('5/12', '7/12'),
    ),
}
L16_SEEDS: dict[int, SymmetricPair] = {
    1: SymmetricPair.of(Chord.of('1/6', '1/3')),
    2: SymmetricPair.of(Chord.of('1/12', '11/12')),
}


@dataclass(frozen=True)
class LeafSet:
    """
    A finite, canonically ordered set of pairwise unlinked chords.

    generation maps every leaf to the pullback generation in which it first appeared;
    leaves missing from the mapping count as generation 0.
    """

    leaves: tuple[Chord, ...]
    depth: int
    seed: SymmetricPair
    generation: Mapping[Chord, int] = field(default_factory=dict)
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        leaves = tuple(sorted(set(self.leaves)))
        object.__setattr__(self, 'leaves', leaves)
        object.__setattr__(self, '_members', frozenset(leaves))
        object.__setattr__(
            self, 'generation', {leaf: self.generation.get(leaf, 0) for leaf in leaves}
        )

    def __iter__(self) -> Iterator[Chord]:
        return iter(self.leaves)

    def __len__(self) -> int:
        return len(self.leaves)

    def __contains__(self, chord: object) -> bool:
        return chord in self._members

    def at_generation(self, g: int) -> list[Chord]:
        return [leaf for leaf in self.leaves if self.generation[leaf] == g]


@dataclass(frozen=True)
class ObstacleRegions:
    """
    Pairwise unlinked obstacle chords, with the side of every circle gap between their
    endpoints precomputed.

    sides(x) lists, for each obstacle, whether x lies inside its arc (a, b), or None when
    x is one of its endpoints. A chord crosses an obstacle iff its endpoints give
    opposite non-None answers for it.
    """

    chords: tuple[Chord, ...]
    cuts: tuple[Fraction, ...]
    gap_sides: tuple[tuple[bool, ...], ...]
    cut_sides: tuple[tuple[Optional[bool], ...], ...]

    @classmethod
    def of(cls, obstacles: Iterable[Chord]) -> 'ObstacleRegions':
        chords = tuple(sorted({o for o in obstacles if not o.is_degenerate}))
        cuts = tuple(sorted({p.value for o in chords for p in o.endpoints}))
        outside = tuple(False for _ in chords)
        gaps = [outside]
        for left, right in zip(cuts, cuts[1:]):
            mid = (left + right) / 2
            gaps.append(tuple(o.a.value < mid < o.b.value for o in chords))
        gaps.append(outside)
        on_cut = tuple(
            tuple(
                None if v in (o.a.value, o.b.value) else o.a.value < v < o.b.value
                for o in chords
            )
            for v in cuts
        )
        return cls(chords, cuts, tuple(gaps), on_cut)

    def sides(self, x: Angle) -> tuple[Optional[bool], ...]:
        v = x.value
        i = bisect_left(self.cuts, v)
        if i < len(self.cuts) and self.cuts[i] == v:
            return self.cut_sides[i]
        return self.gap_sides[i]


def _agree(first: tuple, second: tuple) -> bool:
    if first == second:
        return True
    return all(p is None or q is None or p == q for p, q in zip(first, second))


def sibling_matchings(chord: Chord, obstacles: Iterable[Chord]) -> list[tuple[Chord, ...]]:
    """
    Ways of pairing the preimages of the endpoints of a non-degenerate chord into three
    pairwise unlinked chords, none of which crosses an obstacle.

    Returns:
        list: each matching as a sorted triple, the list in canonical order
    """
    regions = obstacles if isinstance(obstacles, ObstacleRegions) else ObstacleRegions.of(obstacles)
    xs, ys = preimages(chord.a), preimages(chord.b)
    x_sides = [regions.sides(x) for x in xs]
    y_sides = [regions.sides(y) for y in ys]
    allowed = {(i, j) for i in range(3) for j in range(3) if _agree(x_sides[i], y_sides[j])}

    found = []
    for perm in permutations(range(3)):
        if not all((i, perm[i]) in allowed for i in range(3)):
            continue
        triple = tuple(sorted(Chord.of(xs[i], ys[perm[i]]) for i in range(3)))
        if not any(linked(first, second) for first, second in combinations(triple, 2)):
            found.append(triple)
    return sorted(found)


def pullbacks_of(
    chord: Chord,
    obstacles: Iterable[Chord],
    critical: tuple[Chord, ...] = (),
) -> list[Chord]:
    """
    Pullbacks of a chord generated by a family of obstacles.

    The pullbacks are the unique sibling matching that avoids the obstacles. When
    critical chords are given and several matchings survive, the chord has an endpoint
    at a critical value and the matching of short pullbacks is taken.

    Args:
        chord: Chord to pull back; a point yields its three preimage points
        obstacles: Chords the pullbacks may not cross, or their precomputed regions
        critical: Critical chords whose images are the ambiguous critical values

    Returns:
        list: the three pullbacks in canonical order

    Raises:
        PullbackError: if no matching survives, or the choice between several is not
            decided by the short-pullback rule
    """
    if chord.is_degenerate:
        return [Chord.point(x) for x in preimages(chord.a)]

    matchings = sibling_matchings(chord, obstacles)
    if not matchings:
        raise PullbackError(f'no sibling matching of {chord} avoids the obstacles')
    if len(matchings) == 1:
        return list(matchings[0])
    if not critical:
        raise PullbackError(f'{len(matchings)} sibling matchings of {chord} avoid the obstacles')
    return list(_short_matching(chord, matchings, critical))


def _short_matching(
    chord: Chord, matchings: list[tuple[Chord, ...]], critical: tuple[Chord, ...]
) -> tuple[Chord, ...]:
    values = {image(k).a for k in critical}
    ambiguous = [e for e in chord.endpoints if e in values]
    if len(ambiguous) != 1:
        raise PullbackError(
            f'cannot choose among {len(matchings)} matchings of {chord}: '
            f'{len(ambiguous)} endpoints are critical values'
        )
    ranked = sorted(matchings, key=lambda m: (sum(length(x) for x in m), m))
    if sum(map(length, ranked[0])) == sum(map(length, ranked[1])):
        raise PullbackError(f'short pullbacks of {chord} are not unique: {ranked[:2]}')
    return ranked[0]


def _seed_family(pair: SymmetricPair):
    """Initial leaves, obstacles and critical chords of the construction for a legal pair."""
    data = major_data(pair.c)
    minus = major_data(pair.minus_c)
    if pair.is_degenerate:
        critical = (data.major, minus.major)
        return set(critical), critical, critical
    # the two short edges of each quad have length |c|; their n-th pullbacks have length |c|/3^n
    edges = data.quad_edges() + minus.quad_edges()
    initial = set(edges) | {pair.c, pair.minus_c}
    initial |= set(forward_images(pair.c)) | set(forward_images(pair.minus_c))
    return initial, edges, ()


def _grow(
    initial: Iterable[Chord],
    depth: int,
    pull,
    jobs: int,
    skip: frozenset = frozenset(),
) -> dict[Chord, int]:
    generation = {leaf: 0 for leaf in initial}
    frontier = sorted(leaf for leaf in generation if leaf not in skip)
    for g in range(1, depth + 1):
        results = map_in_workers(pull, frontier, jobs=jobs, desc=f'generation {g}')
        added = set()
        for chords in results:
            for chord in chords:
                if chord not in generation:
                    generation[chord] = g
                    added.add(chord)
        logger.debug(f'generation {g}: {len(added)} new leaves from {len(frontier)}')
        frontier = sorted(added)
    return generation


def build_pullback(pair: SymmetricPair, depth: int, jobs: int = 1) -> LeafSet:
    """
    Finite-depth pullback lamination of a legal pair.

    Args:
        pair: Legal symmetric pair with |c| < 1/6, or a degenerate pair
        depth: Number of pullback generations
        jobs: Worker processes used for each generation

    Returns:
        LeafSet: leaves of generations 0..depth

    Raises:
        IllegalSeedError: if the pair is not legal or is one of the length 1/6 pairs
    """
    if depth < 0:
        raise ValueError(f'depth must be non-negative, got {depth}')
    if not pair.is_degenerate and length(pair.c) >= SIXTH:
        raise IllegalSeedError(
            f'{pair} has length {length(pair.c)}; length 1/6 pairs are built by build_l16'
        )
    verdict = is_legal_pair(pair)
    if not verdict.legal:
        raise IllegalSeedError(f'{pair} is not legal: {verdict.violation}')

    initial, obstacles, critical = _seed_family(pair)
    pull = partial(
        pullbacks_of, obstacles=ObstacleRegions.of(obstacles), critical=critical
    )
    generation = _grow(initial, depth, pull, jobs)
    logger.info(f'built pullback lamination of {pair} to depth {depth}: {len(generation)} leaves')
    return LeafSet(tuple(generation), depth, pair, generation)


def _separates(chord: Chord, first: Chord, second: Chord) -> bool:
    def side(leaf: Chord) -> Optional[bool]:
        if leaf == chord:
            return None
        for p in leaf.endpoints:
            if p not in chord.endpoints:
                return in_open_arc(chord.a, chord.b, p)
        return None

    s1, s2 = side(first), side(second)
    return s1 is not None and s2 is not None and s1 != s2


def _l16_pullbacks(
    chord: Chord, collection: tuple[Chord, ...], regions: ObstacleRegions
) -> list[Chord]:
    found = [
        matching
        for matching in sibling_matchings(chord, regions)
        if not any(
            _separates(leaf, x, y) for leaf in matching for x, y in combinations(collection, 2)
        )
    ]
    if len(found) != 1:
        raise PullbackError(
            f'expected one non-separating sibling matching of {chord}, found {len(found)}'
        )
    return list(found[0])


def build_l16(which: int, depth: int, jobs: int = 1) -> LeafSet:
    """
    Finite-depth approximation of one of the two laminations with comajors of length 1/6.

    Leaves are the pullbacks of the invariant diameter's sibling collection that never
    separate two members of that collection.
    """
    if which not in L16_COLLECTIONS:
        raise ValueError(f'which must be 1 or 2, got {which}')
    if depth < 0:
        raise ValueError(f'depth must be non-negative, got {depth}')
    collection = L16_COLLECTIONS[which]
    pull = partial(
        _l16_pullbacks, collection=collection, regions=ObstacleRegions.of(collection)
    )
    # the diameter's own sibling collection is the seed collection
    generation = _grow(collection, depth, pull, jobs, skip=frozenset(collection[:1]))
    logger.info(f'built lamination {which} with 1/6 comajors to depth {depth}: {len(generation)} leaves')
    return LeafSet(tuple(generation), depth, L16_SEEDS[which], generation)


def verify_prelamination(ls: LeafSet) -> Report:
    """
    Check the prelamination axioms on a finite leaf set.

    Sibling completeness is only required below the deepest generation, whose siblings
    have not been generated yet.
    """
    report = Report('prelamination')
    for first, second in crossing_pairs(ls):
        report.add('crossing', f'{first} crosses {second}')

    by_image: dict[Chord, list[Chord]] = defaultdict(list)
    for leaf in ls:
        if opposite(leaf) not in ls:
            report.add('asymmetric', f'{leaf} present without {opposite(leaf)}')
        target = image(leaf)
        if target.is_degenerate:
            continue
        by_image[target].append(leaf)
        if target not in ls:
            report.add('not-invariant', f'image {target} of {leaf} is missing')

    for leaf in ls:
        if ls.generation[leaf] >= ls.depth or length_class(leaf) == LengthClass.CRITICAL:
            continue
        others = [x for x in by_image[image(leaf)] if x != leaf]
        if not any(is_sibling_collection((leaf, x, y)) for x, y in combinations(others, 2)):
            report.add('missing-siblings', f'{leaf} has no disjoint sibling pair')
    return report


def majors(ls: LeafSet) -> list[Chord]:
    """Leaves closest to criticality."""
    best = min(abs(THIRD - length(leaf)) for leaf in ls)
    return [leaf for leaf in ls if abs(THIRD - length(leaf)) == best]


def comajor_pair(ls: LeafSet) -> SymmetricPair:
    """
    Comajors of a built lamination, recovered from its majors.

    Critical majors give the degenerate comajor disjoint from them. Otherwise the
    comajors are the members of length at most 1/6 of the sibling collections of majors.

    Raises:
        InvariantViolation: if the recovered chords are not a single symmetric pair
    """
    tops = majors(ls)
    if length_class(tops[0]) == LengthClass.CRITICAL:
        critical = tops[0]
        value = image(critical).a
        point = next(x for x in preimages(value) if x not in critical.endpoints)
        return SymmetricPair.of(Chord.point(point))

    by_image: dict[Chord, list[Chord]] = defaultdict(list)
    for leaf in ls:
        by_image[image(leaf)].append(leaf)
    found = set()
    for major in tops:
        others = [x for x in by_image[image(major)] if x != major]
        for x, y in combinations(others, 2):
            if is_sibling_collection((major, x, y)):
                found |= {ch for ch in (x, y) if length(ch) <= SIXTH}
    if not found:
        raise InvariantViolation('no comajor found among the sibling collections of majors')
    pair = SymmetricPair.of(min(found))
    if found != set(pair.chords):
        raise InvariantViolation(f'comajors do not form one symmetric pair: {sorted(found)}')
    return pair


def check_short_leaves(ls: LeafSet) -> Report:
    """No leaf maps to a chord shorter than min(leaf length, minor length)."""
    report = Report('short-leaves')
    pair = comajor_pair(ls)
    minor = length(image(pair.c))
    for leaf in ls:
        bound = min(length(leaf), minor)
        if length(image(leaf)) < bound:
            report.add('short-image', f'{leaf} maps to {image(leaf)} shorter than {bound}')
    return report


def check_length_conjugacy(ls: LeafSet) -> Report:
    """Every leaf maps to a chord of length gamma(length of the leaf)."""
    report = Report('length-conjugacy')
    for leaf in ls:
        expected = gamma(length(leaf))
        if length(image(leaf)) != expected:
            report.add('length', f'{leaf} maps to {image(leaf)}, expected length {expected}')
    return report


def expected_majors(seed: SymmetricPair) -> set[Chord]:
    """Majors of the lamination built from a seed: M_c, M'_c and their half-turns."""
    for which, pair in L16_SEEDS.items():
        if pair == seed:
            return set(L16_COLLECTIONS[which])
    found = set()
    for c in seed.chords:
        data = major_data(c)
        found |= {data.major, data.major_prime}
    return found


def check_majors(ls: LeafSet) -> Report:
    report = Report('majors')
    found, expected = set(majors(ls)), expected_majors(ls.seed)
    if found != expected:
        report.add(
            'majors',
            f'closest to criticality: {sorted(map(str, found))}, '
            f'expected {sorted(map(str, expected))}',
        )
    return report


def check_quad_pullbacks(ls: LeafSet) -> Report:
    """
    Generation-n pullbacks of the short edges of the seed quadrilaterals have length
    |c| / 3^n. Degenerate and length 1/6 seeds have no quadrilaterals to check.
    """
    report = Report('quad-pullbacks')
    if ls.seed.is_degenerate or ls.seed in L16_SEEDS.values():
        return report
    short = set(major_data(ls.seed.c).short_edges())
    short |= set(major_data(ls.seed.minus_c).short_edges())
    s = length(ls.seed.c)

    # the image of a generation-g leaf was pulled back at generation g - 1
    root: dict[Chord, Chord] = {}
    for leaf in sorted(ls, key=lambda x: ls.generation[x]):
        n = ls.generation[leaf]
        root[leaf] = leaf if n == 0 else root.get(image(leaf))
        if root[leaf] in short and length(leaf) != s / 3**n:
            report.add(
                'quad-pullback',
                f'{leaf} (generation {n}) has length {length(leaf)}, expected {s / 3**n}',
            )
    return report

"""
Enumeration of comajor pairs with bounded preperiod and period, and the checks run on
the resulting approximation of the comajor lamination.

Candidate chords are generated on integer numerators over the common denominator
3^m (3^k - 1) of their orbit class. A cheap integer prefilter drops chords with an image
shorter than three times their length, since no comajor has one; the survivors go
through is_legal_pair across worker processes.
"""

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import pandas as pd

from .chords import Chord, crossing_pairs
from .circle import Angle, orbit_info, preimages
from .exceptions import InvariantViolation
from .legality import (
    LegalityVerdict,
    SymmetricPair,
    endpoint_consistency,
    forward_images,
    is_legal_pair,
)
from .pullback import L16_SEEDS
from .utils.helper import Report, map_in_workers
from .utils.logger import logger


class ComajorKind(Enum):
    DEGENERATE = 'degenerate'
    PREPERIOD1 = 'preperiod1'
    HIGHER_PREPERIOD = 'higher-preperiod'
    L16_SPECIAL = 'l16-special'


@dataclass(frozen=True)
class ComajorRecord:
    pair: SymmetricPair
    preperiod: int
    period: int
    kind: ComajorKind
    verdict: LegalityVerdict


@dataclass(frozen=True)
class CsCLApprox:
    """Comajor records in canonical order, with the bounds they were enumerated under."""

    records: tuple[ComajorRecord, ...]
    max_period: int
    max_preperiod: int

    @property
    def max_denominator(self) -> int:
        return max(
            (p.denominator for r in self.records for p in r.pair.c.endpoints), default=1
        )

    def chords(self, include_degenerate: bool = False) -> list[Chord]:
        return sorted(
            chord
            for record in self.records
            if include_degenerate or not record.pair.is_degenerate
            for chord in set(record.pair.chords)
        )


# (preperiod, period) of the two length 1/6 pairs
_L16_ORBITS = {1: (1, 1), 2: (1, 2)}


def periodic_angles(k: int, exact: bool = False) -> list[Angle]:
    """
    Angles whose period under sigma3 divides k, in increasing order.

    Args:
        k: Period bound, at least 1
        exact: Keep only the angles of period exactly k

    Returns:
        list: the angles p/(3^k - 1)
    """
    if k < 1:
        raise ValueError(f'period must be at least 1, got {k}')
    n = 3**k - 1
    angles = [Angle(Fraction(p, n)) for p in range(n)]
    if exact:
        angles = [a for a in angles if orbit_info(a).period == k]
    return angles


def angles_with_orbit(preperiod: int, period: int) -> list[Angle]:
    """All angles with exactly the given preperiod and period, in increasing order."""
    if preperiod < 0:
        raise ValueError(f'preperiod must be non-negative, got {preperiod}')
    level = periodic_angles(period, exact=True)
    for _ in range(preperiod):
        # one preimage of each point is on the previous level; the other two are new
        level = sorted({x for y in level for x in preimages(y)} - set(level))
    return level


def _images_stay_long(p: int, q: int, n: int) -> bool:
    d = (q - p) % n
    bound = 3 * min(d, n - d)
    seen = set()
    x, y = 3 * p % n, 3 * q % n
    while (x, y) not in seen:
        seen.add((x, y))
        d = (y - x) % n
        if min(d, n - d) < bound:
            return False
        x, y = 3 * x % n, 3 * y % n
    return True


def _short_chords(orbit_class: tuple[int, int], prefilter: bool = True) -> list[Chord]:
    """Canonical representatives of the short chords of one orbit class."""
    m, k = orbit_class
    n = 3**m * (3**k - 1)
    half = n // 2
    nums = [int(a.value * n) for a in angles_with_orbit(m, k)]
    wrapped = nums + [p + n for p in nums]

    found = set()
    for p in nums:
        j = bisect_right(wrapped, p)
        while j < len(wrapped) and 6 * (wrapped[j] - p) < n:
            q = wrapped[j] % n
            j += 1
            if prefilter and not _images_stay_long(p, q, n):
                continue
            chord = tuple(sorted((p, q)))
            partner = tuple(sorted(((p + half) % n, (q + half) % n)))
            found.add(min(chord, partner))
    return sorted(Chord.of(Fraction(p, n), Fraction(q, n)) for p, q in found)


def candidate_comajors(preperiod: int, period: int) -> list[SymmetricPair]:
    """
    All symmetric pairs of chords shorter than 1/6 whose endpoints have the given
    preperiod and period, deduplicated by canonical representative.
    """
    if preperiod < 1 or period < 1:
        raise ValueError(f'preperiod and period must be at least 1, got {preperiod}, {period}')
    return [SymmetricPair.of(c) for c in _short_chords((preperiod, period), prefilter=False)]


def _l16_records() -> list[ComajorRecord]:
    records = []
    for which, pair in L16_SEEDS.items():
        preperiod, period = _L16_ORBITS[which]
        verdict = LegalityVerdict(True, None, len(forward_images(pair.c)))
        records.append(
            ComajorRecord(pair, preperiod, period, ComajorKind.L16_SPECIAL, verdict)
        )
    return records


def _degenerate_records(max_period: int, max_preperiod: int) -> list[ComajorRecord]:
    records = {}
    for m in range(max_preperiod + 1):
        for k in range(1, max_period + 1):
            for x in angles_with_orbit(m, k):
                pair = SymmetricPair.of(Chord.point(x))
                if pair not in records:
                    records[pair] = ComajorRecord(
                        pair, m, k, ComajorKind.DEGENERATE, is_legal_pair(pair)
                    )
    return list(records.values())


def enumerate_comajors(
    max_period: int,
    max_preperiod: int,
    include_degenerate: bool = False,
    jobs: int = 1,
) -> CsCLApprox:
    """
    Every legal pair with 1 <= preperiod <= max_preperiod and period <= max_period,
    plus the two length 1/6 pairs.

    Args:
        max_period: Largest endpoint period
        max_preperiod: Largest endpoint preperiod
        include_degenerate: Also list the degenerate pairs within the bounds
        jobs: Worker processes for candidate generation and legality checks

    Returns:
        CsCLApprox: records sorted by their canonical chord

    Raises:
        InvariantViolation: if the result fails verify_cscl
    """
    if max_period < 1 or max_preperiod < 1:
        raise ValueError(
            f'bounds must be at least 1, got max_period={max_period}, '
            f'max_preperiod={max_preperiod}'
        )
    classes = [(m, k) for m in range(1, max_preperiod + 1) for k in range(1, max_period + 1)]
    survivors = map_in_workers(_short_chords, classes, jobs=jobs, desc='candidates')

    pairs, orbit_of = [], {}
    for (m, k), chords in zip(classes, survivors):
        logger.debug(f'class pre={m} per={k}: {len(chords)} candidates after prefilter')
        for chord in chords:
            pair = SymmetricPair.of(chord)
            pairs.append(pair)
            orbit_of[pair] = (m, k)

    verdicts = map_in_workers(is_legal_pair, pairs, jobs=jobs, desc='legality')
    records = [
        ComajorRecord(
            pair,
            *orbit_of[pair],
            ComajorKind.PREPERIOD1 if orbit_of[pair][0] == 1 else ComajorKind.HIGHER_PREPERIOD,
            verdict,
        )
        for pair, verdict in zip(pairs, verdicts)
        if verdict.legal
    ]
    records += _l16_records()
    if include_degenerate:
        records += _degenerate_records(max_period, max_preperiod)
    records.sort(key=lambda r: r.pair.c)

    approx = CsCLApprox(tuple(records), max_period, max_preperiod)
    logger.info(
        f'enumerated {len(records)} comajor pairs from {len(pairs)} candidates '
        f'(max_period={max_period}, max_preperiod={max_preperiod})'
    )
    report = verify_cscl(approx)
    if not report.passed:
        for violation in report.violations:
            logger.error(f'comajor enumeration: {violation}')
        raise InvariantViolation(f'comajor enumeration failed verification: {report.violations[0]}')
    return approx


def verify_cscl(approx: CsCLApprox) -> Report:
    """
    Check an approximation: every record is legal, no two comajors cross, no endpoint
    carries more than two comajors, and preperiod-1 comajors share no endpoint with any
    other comajor. Records hold whole symmetric pairs, so the set is half-turn closed.
    """
    report = Report('cscl')
    chords = approx.chords()
    for first, second in crossing_pairs(chords):
        report.add('crossing', f'{first} crosses {second}')

    incidence = Counter(p for chord in chords for p in chord.endpoints)
    for point, count in sorted(incidence.items()):
        if count > 2:
            report.add('multiplicity', f'{count} comajors meet at {point}')

    for record in approx.records:
        if not record.verdict.legal:
            report.add('illegal', f'{record.pair.c}: {record.verdict}')

    for record in approx.records:
        if record.kind != ComajorKind.PREPERIOD1:
            continue
        own = set(record.pair.chords)
        points = {p for chord in own for p in chord.endpoints}
        for other in chords:
            if other not in own and points & set(other.endpoints):
                report.add('isolation', f'{other} touches preperiod-1 comajor {record.pair.c}')
    return report


def orbit_mismatches(approx: CsCLApprox) -> list[ComajorRecord]:
    """Non-degenerate records that are periodic or whose endpoints differ in orbit data."""
    bad = []
    for record in approx.records:
        if record.pair.is_degenerate:
            continue
        c = record.pair.c
        if not endpoint_consistency(c) or c in forward_images(c):
            bad.append(record)
    return bad


def summarize(approx: CsCLApprox) -> pd.DataFrame:
    """Record counts by preperiod, period and kind."""
    df = pd.DataFrame(
        [
            {'preperiod': r.preperiod, 'period': r.period, 'kind': r.kind.value}
            for r in approx.records
        ],
        columns=['preperiod', 'period', 'kind'],
    )
    return (
        df.groupby(['preperiod', 'period', 'kind'])
        .size()
        .reset_index(name='count')
        .sort_values(['preperiod', 'period', 'kind'], ignore_index=True)
    )

from fractions import Fraction

import pytest

from src.chords import Chord, length, parse_chord
from src.circle import THIRD, Angle
from src.exceptions import GapError
from src.gaps import (
    Gap,
    GapTag,
    central_gap,
    compute_gaps,
    critical_sets,
    gap_degree,
    gap_image,
    verify_gaps,
)
from src.legality import SymmetricPair
from src.pullback import LeafSet, build_l16, build_pullback


def angles(*texts):
    return tuple(Angle.of(t) for t in texts)


def pair(text):
    return SymmetricPair.of(parse_chord(text))


@pytest.fixture(scope='module')
def quad_lamination():
    return build_pullback(pair('1/24-23/24'), 0)


def test_gaps_of_l16_depth_zero():
    gaps = compute_gaps(build_l16(1, 0))
    assert [g.vertices for g in gaps] == [
        angles('0', '1/6', '1/3', '1/2'),
        angles('0', '1/2', '2/3', '5/6'),
        angles('1/6', '1/3'),
        angles('2/3', '5/6'),
    ]
    assert gaps[0].edges == (parse_chord('1/6-1/3'), parse_chord('0/1-1/2'))
    assert all(GapTag.FINITE_AT_DEPTH in g.tags for g in gaps)


def test_l16_critical_faces_border_the_diameter():
    gaps = compute_gaps(build_l16(1, 0))
    critical = [g.vertices for g in gaps if GapTag.CRITICAL in g.tags]
    assert critical == [angles('0', '1/6', '1/3', '1/2'), angles('0', '1/2', '2/3', '5/6')]


def test_gaps_of_one_diameter():
    gaps = compute_gaps([parse_chord('0/1-1/2')])
    assert len(gaps) == 2
    assert all(g.vertices == angles('0', '1/2') for g in gaps)


def test_gaps_of_empty_set():
    (disk,) = compute_gaps([])
    assert disk.vertices == () and disk.edges == ()
    assert disk.tags == {GapTag.CENTRAL, GapTag.FINITE_AT_DEPTH}
    assert str(disk) == 'disk tags=central,finite-at-depth'
    assert compute_gaps([Chord.point('1/2')]) == [disk]
    assert central_gap(LeafSet((), 0, pair('1/2'))) == disk


def test_quad_face(quad_lamination):
    vertices = angles('7/24', '3/8', '5/8', '17/24')
    quad = next(g for g in compute_gaps(quad_lamination) if g.vertices == vertices)
    assert {GapTag.CRITICAL, GapTag.COLLAPSING_QUAD} <= quad.tags
    assert not quad.has_arc_sides
    assert gap_image(quad) == parse_chord('1/8-7/8')
    with pytest.raises(GapError):
        gap_degree(quad)


def test_quad_lamination_has_two_critical_sets(quad_lamination):
    found = critical_sets(quad_lamination)
    assert len(found) == 2
    assert all(GapTag.COLLAPSING_QUAD in g.tags for g in found)


def test_degenerate_seed_has_two_critical_leaves():
    found = critical_sets(build_pullback(pair('1/2'), 2))
    assert found == [parse_chord('1/6-5/6'), parse_chord('1/3-2/3')]


def test_gap_image():
    assert gap_image(Gap(angles('0', '1/9', '2/9'))) == Gap(angles('0', '1/3', '2/3'))
    assert gap_image(Gap(angles('0', '1/3', '2/3'))) == Angle.of(0)


@pytest.mark.parametrize(
    'vertices, degree',
    [
        (('0', '1/9', '2/9', '1/3', '4/9', '5/9'), 2),
        (('0', '1/9', '2/9'), 1),
    ],
)
def test_gap_degree(vertices, degree):
    assert gap_degree(Gap(angles(*vertices))) == degree


@pytest.mark.parametrize('vertices', [('0', '2/9', '4/9'), ('1/8', '3/8', '5/8', '7/8')])
def test_gap_degree_rejects_reversed_image(vertices):
    with pytest.raises(GapError):
        gap_degree(Gap(angles(*vertices)))


def test_central_gap_is_a_diameter():
    assert central_gap(build_l16(1, 2)) == parse_chord('0/1-1/2')
    assert central_gap(build_l16(2, 2)) == parse_chord('1/4-3/4')


def test_central_gap_profile():
    central = central_gap(build_pullback(pair('1/24-23/24'), 2))
    assert isinstance(central, Gap)
    assert GapTag.CENTRAL in central.tags
    long_edges = [e for e in central.edges if length(e) >= THIRD]
    assert len(long_edges) == 2
    assert all(length(e) < Fraction(1, 6) for e in central.edges if e not in long_edges)


def test_central_gap_missing():
    ls = LeafSet((parse_chord('0/1-1/4'),), 0, pair('1/2'))
    with pytest.raises(GapError):
        central_gap(ls)


def test_gap_text():
    gap = compute_gaps(build_l16(1, 0))[2]
    assert str(gap) == '1/6,1/3 tags=finite-at-depth'


@pytest.mark.parametrize(
    'build',
    [
        lambda: build_l16(1, 3),
        lambda: build_l16(2, 3),
        lambda: build_pullback(pair('1/2'), 3),
        lambda: build_pullback(pair('1/24-23/24'), 3),
    ],
)
def test_built_laminations_pass_gap_checks(build):
    report = verify_gaps(build())
    assert report.passed, report.violations


def test_verify_gaps_flags_missing_critical_sets():
    ls = LeafSet((parse_chord('1/8-3/8'), parse_chord('5/8-7/8')), 0, pair('1/2'))
    assert 'critical-sets' in verify_gaps(ls).kinds()


@pytest.fixture
def fixed_return_triangle():
    # 1/26, 2/26 and 25/26 have period 3; the triangle and its two images are disjoint
    return LeafSet(
        tuple(parse_chord(t) for t in ('1/26-1/13', '1/13-25/26', '1/26-25/26')),
        0,
        pair('1/2'),
    )


def test_verify_gaps_flags_fixed_return_triangle(fixed_return_triangle):
    report = verify_gaps(fixed_return_triangle)
    assert {'fixed-return', 'major-orbit'} <= report.kinds()
    messages = [str(v) for v in report.violations]
    assert 'fixed-return: 1/26,1/13,25/26 returns with every vertex fixed' in messages
    assert (
        'major-orbit: 1/26-25/26 never maps to 9/26-9/13 or 5/26-11/13' in messages
    )


def test_rotating_triangle_is_not_fixed_return():
    # 1/26 -> 3/26 -> 9/26 -> 1/26 permutes the vertices of its own orbit triangle
    ls = LeafSet(
        tuple(parse_chord(t) for t in ('1/26-3/26', '3/26-9/26', '1/26-9/26')),
        0,
        pair('1/2'),
    )
    report = verify_gaps(ls)
    assert 'fixed-return' not in report.kinds()
    assert 'major-orbit' not in report.kinds()

"""
Deterministic SVG chord diagrams of leaf sets in the closed unit disk.

Angle t sits at (cos 2 pi t, sin 2 pi t). Coordinates are written with six fractional
digits; multiples of 1/12 come from an exact table and points past 1/2 are the exact
negation of their half-turn image, so symmetric input draws symmetric geometry.
"""

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from .chords import Chord, LengthClass, _short_arc, is_diameter, length, length_class
from .circle import HALF, Angle

SVG_NS = 'http://www.w3.org/2000/svg'

_ROOT3_HALF = math.sqrt(3) / 2
# cos, sin of k/12 turns for k = 0..5
_TWELFTHS = (
    (1.0, 0.0),
    (_ROOT3_HALF, 0.5),
    (0.5, _ROOT3_HALF),
    (0.0, 1.0),
    (-0.5, _ROOT3_HALF),
    (-_ROOT3_HALF, 0.5),
)

DEFAULT_COLORS = {
    LengthClass.DEGENERATE: '#7f7f7f',
    LengthClass.SHORT: '#1f77b4',
    LengthClass.MEDIUM: '#2ca02c',
    LengthClass.CRITICAL: '#d62728',
    LengthClass.LONG: '#9467bd',
}


class RenderMode(Enum):
    STRAIGHT = 'straight'
    GEODESIC = 'geodesic'


@dataclass(frozen=True)
class RenderStyle:
    mode: RenderMode = RenderMode.GEODESIC
    size_px: int = 800
    stroke_width: float = 1.0
    colors: Mapping[LengthClass, str] = field(default_factory=lambda: dict(DEFAULT_COLORS))
    critical_fill: bool = False
    fill_color: str = '#f2d0d0'

    def __post_init__(self):
        if self.size_px < 64:
            raise ValueError(f'size_px must be at least 64, got {self.size_px}')
        missing = [c.value for c in LengthClass if c not in self.colors]
        if missing:
            raise ValueError(f'no color for length classes: {", ".join(missing)}')


def unit_point(t: Fraction) -> tuple[float, float]:
    t = Fraction(t) % 1
    if t >= HALF:
        x, y = unit_point(t - HALF)
        return -x, -y
    if (12 * t).denominator == 1:
        return _TWELFTHS[int(12 * t)]
    return math.cos(2 * math.pi * t), math.sin(2 * math.pi * t)


def _fmt(v: float) -> str:
    text = f'{v:.6f}'
    return '0.000000' if text == '-0.000000' else text


class _Canvas:
    def __init__(self, size: int):
        self.center = size / 2
        self.radius = size / 2 - size / 40

    def point(self, a: Angle) -> str:
        x, y = unit_point(a.value)
        return f'{_fmt(self.center + self.radius * x)} {_fmt(self.center - self.radius * y)}'

    def chord_path(self, chord: Chord, mode: RenderMode) -> str:
        start, end = _short_arc(chord)
        if mode == RenderMode.STRAIGHT or is_diameter(chord):
            return f'M {self.point(start)} L {self.point(end)}'
        # circle orthogonal to the unit circle through both endpoints
        r = _fmt(self.radius * math.tan(math.pi * length(chord)))
        return f'M {self.point(start)} A {r} {r} 0 0 1 {self.point(end)}'

    def cap_path(self, chord: Chord, mode: RenderMode) -> str:
        start, _ = _short_arc(chord)
        r = _fmt(self.radius)
        return f'{self.chord_path(chord, mode)} A {r} {r} 0 0 1 {self.point(start)} Z'


def render_svg(leaves: Iterable[Chord], style: RenderStyle = RenderStyle()) -> bytes:
    """
    Draw chords as an SVG document.

    Chords are drawn in canonical order. Degenerate chords are not drawn. In geodesic
    mode every chord except a diameter becomes the circle arc orthogonal to the unit
    circle; with critical_fill set, the cap cut off by each critical leaf is shaded.

    Args:
        leaves: Chords to draw
        style: Drawing options

    Returns:
        bytes: UTF-8 SVG text
    """
    chords = sorted({c for c in leaves if not c.is_degenerate})
    canvas = _Canvas(style.size_px)
    size = str(style.size_px)
    width = _fmt(style.stroke_width)

    root = ET.Element(
        'svg',
        {'xmlns': SVG_NS, 'width': size, 'height': size, 'viewBox': f'0 0 {size} {size}'},
    )
    ET.SubElement(
        root,
        'circle',
        {
            'cx': _fmt(canvas.center),
            'cy': _fmt(canvas.center),
            'r': _fmt(canvas.radius),
            'fill': 'none',
            'stroke': '#000000',
            'stroke-width': width,
        },
    )
    if style.critical_fill:
        for chord in chords:
            if length_class(chord) == LengthClass.CRITICAL:
                ET.SubElement(
                    root,
                    'path',
                    {
                        'class': 'critical-region',
                        'd': canvas.cap_path(chord, style.mode),
                        'fill': style.fill_color,
                        'stroke': 'none',
                    },
                )
    for chord in chords:
        ET.SubElement(
            root,
            'path',
            {
                'd': canvas.chord_path(chord, style.mode),
                'fill': 'none',
                'stroke': style.colors[length_class(chord)],
                'stroke-width': width,
            },
        )

    ET.indent(root, space='  ')
    body = ET.tostring(root, encoding='unicode')
    return ('<?xml version="1.0" encoding="UTF-8"?>\n' + body + '\n').encode('utf-8')

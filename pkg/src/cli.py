"""
Command-line interface.

Exit status: 0 for success or an affirmative verdict, 1 for a negative verdict or a
failed verification, 2 for malformed input.
"""

import argparse
import sys
from pathlib import Path
from typing import Optional

from config.config import config

from .chords import collection_type, length, length_class, parse_chord, siblings
from .circle import SIXTH, orbit_info, parse_angle
from .comajor_enum import enumerate_comajors, summarize, verify_cscl
from .exceptions import LaminationError
from .gaps import compute_gaps
from .legality import SymmetricPair, is_legal_pair
from .load import load_to_csv, read_any, write_cscl, write_lamination
from .pullback import L16_SEEDS, LeafSet, build_l16, build_pullback, verify_prelamination
from .render import RenderMode, RenderStyle, render_svg
from .utils.logger import logger


def _orbit_command(args: argparse.Namespace) -> int:
    info = orbit_info(parse_angle(args.angle))
    orbit = ','.join(map(str, info.orbit))
    print(f'preperiod={info.preperiod} period={info.period} orbit={orbit}')
    return 0


def _classify_command(args: argparse.Namespace) -> int:
    chord = parse_chord(args.chord)
    print(f'{length_class(chord).value} {length(chord)}')
    return 0


def _siblings_command(args: argparse.Namespace) -> int:
    chord = parse_chord(args.chord)
    first, second = siblings(chord)
    print(f'{first} {second} type={collection_type(chord).value}')
    return 0


def _legal_command(args: argparse.Namespace) -> int:
    chord = parse_chord(args.chord)
    pair = SymmetricPair.of(chord)
    if pair.is_degenerate:
        print('legal (degenerate)')
        return 0
    if length(chord) >= SIXTH and pair in L16_SEEDS.values():
        print('legal (length 1/6 special)')
        return 0
    verdict = is_legal_pair(pair)
    print(verdict)
    return 0 if verdict.legal else 1


def _pullback_command(args: argparse.Namespace) -> int:
    pair = SymmetricPair.of(parse_chord(args.seed))
    ls = build_pullback(pair, args.depth, jobs=args.jobs)
    write_lamination(ls, args.out)
    print(f'{len(ls)} leaves written to {args.out}')
    return 0


def _l16_command(args: argparse.Namespace) -> int:
    ls = build_l16(args.which, args.depth, jobs=args.jobs)
    write_lamination(ls, args.out)
    print(f'{len(ls)} leaves written to {args.out}')
    return 0


def _enumerate_command(args: argparse.Namespace) -> int:
    approx = enumerate_comajors(
        args.max_period,
        args.max_preperiod,
        include_degenerate=args.include_degenerate,
        jobs=args.jobs,
    )
    write_cscl(approx, args.out)
    if args.summary_csv:
        load_to_csv(summarize(approx), args.summary_csv, 'cscl_summary')
    print(f'{len(approx.records)} comajor pairs written to {args.out}')
    return 0


def _verify_command(args: argparse.Namespace) -> int:
    data = read_any(args.path)
    if isinstance(data, LeafSet):
        report = verify_prelamination(data)
    else:
        report = verify_cscl(data)
    report.log()
    if report.passed:
        print(f'{report.subject}: verification passed')
        return 0
    for violation in report.violations:
        print(violation)
    return 1


def _gaps_command(args: argparse.Namespace) -> int:
    data = read_any(args.path)
    if not isinstance(data, LeafSet):
        raise ValueError(f'{args.path} is not a lamination file')
    for gap in compute_gaps(data):
        print(gap)
    return 0


def _render_command(args: argparse.Namespace) -> int:
    data = read_any(args.path)
    chords = data.leaves if isinstance(data, LeafSet) else data.chords()
    style = RenderStyle(
        mode=RenderMode(args.mode),
        size_px=args.size,
        critical_fill=args.critical_fill,
    )
    svg = render_svg(chords, style)
    try:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(svg)
    except OSError as e:
        logger.error(f'Error while writing {args.out}: {e}')
        raise
    print(f'{len(chords)} chords rendered to {args.out}')
    return 0


def _add_jobs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        '--jobs',
        type=int,
        default=config.jobs,
        help='Worker processes; the output does not depend on it.',
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='symlam',
        description='Symmetric cubic laminations: legality, pullbacks, comajors, rendering.',
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    orbit = subparsers.add_parser('orbit', help='Preperiod, period and orbit of an angle.')
    orbit.add_argument('angle')
    orbit.set_defaults(func=_orbit_command)

    classify = subparsers.add_parser('classify', help='Length class and length of a chord.')
    classify.add_argument('chord')
    classify.set_defaults(func=_classify_command)

    sibs = subparsers.add_parser('siblings', help='Sibling collection of a chord.')
    sibs.add_argument('chord')
    sibs.set_defaults(func=_siblings_command)

    legal = subparsers.add_parser('legal', help='Decide whether {c, -c} is a legal pair.')
    legal.add_argument('chord')
    legal.set_defaults(func=_legal_command)

    pullback = subparsers.add_parser('pullback', help='Build a pullback lamination.')
    pullback.add_argument('seed', help='Comajor chord p/q-r/s or point p/q')
    pullback.add_argument('--depth', type=int, required=True)
    pullback.add_argument('--out', required=True)
    _add_jobs(pullback)
    pullback.set_defaults(func=_pullback_command)

    l16 = subparsers.add_parser('l16', help='Build a lamination with comajors of length 1/6.')
    l16.add_argument('which', type=int, choices=(1, 2))
    l16.add_argument('--depth', type=int, required=True)
    l16.add_argument('--out', required=True)
    _add_jobs(l16)
    l16.set_defaults(func=_l16_command)

    enum = subparsers.add_parser('enumerate', help='Enumerate comajor pairs.')
    enum.add_argument('--max-period', type=int, required=True)
    enum.add_argument('--max-preperiod', type=int, required=True)
    enum.add_argument('--include-degenerate', action='store_true')
    enum.add_argument('--out', required=True)
    enum.add_argument('--summary-csv', metavar='DIR', help='Also write DIR/cscl_summary.csv')
    _add_jobs(enum)
    enum.set_defaults(func=_enumerate_command)

    verify = subparsers.add_parser('verify', help='Verify a lamination or comajor file.')
    verify.add_argument('path')
    verify.set_defaults(func=_verify_command)

    gaps = subparsers.add_parser('gaps', help='List the gaps of a lamination file.')
    gaps.add_argument('path')
    gaps.set_defaults(func=_gaps_command)

    render = subparsers.add_parser('render', help='Render a lamination or comajor file as SVG.')
    render.add_argument('path')
    render.add_argument('--out', required=True)
    mode = render.add_mutually_exclusive_group()
    mode.add_argument('--straight', dest='mode', action='store_const', const='straight')
    mode.add_argument('--geodesic', dest='mode', action='store_const', const='geodesic')
    render.add_argument('--size', type=int, default=800)
    render.add_argument('--critical-fill', action='store_true')
    render.set_defaults(func=_render_command, mode='geodesic')

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    logger.info(f'running command {args.command}')
    try:
        return int(args.func(args))
    except (ValueError, OSError) as e:
        print(f'error: {e}', file=sys.stderr)
        return 2
    except LaminationError as e:
        logger.error(f'{args.command} failed: {e}')
        print(f'error: {e}', file=sys.stderr)
        return 1

"""
Readers and writers for the line-oriented lamination and comajor files, plus the CSV
export of tabular summaries.
"""

import os
import re
from pathlib import Path
from typing import Union

import pandas as pd

from .chords import format_chord, parse_chord
from .comajor_enum import ComajorKind, ComajorRecord, CsCLApprox
from .exceptions import ParseError
from .legality import LegalityVerdict, SymmetricPair, forward_images, is_legal_pair
from .pullback import LeafSet
from .utils.logger import logger

LAMINATION_HEADER = re.compile(r'^csl v1 d=3 depth=(\d+) seed=(\S+)$')
CSCL_HEADER = re.compile(r'^cscl v1 max_period=(\d+) max_preperiod=(\d+)$')
_KEY_VALUE = re.compile(r'^([a-z_]+)=(\S+)$')


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith('#'):
            lines.append(line)
    return lines


def _fields(tokens: list[str], line: str) -> dict[str, str]:
    fields = {}
    for token in tokens:
        match = _KEY_VALUE.match(token)
        if match is None:
            raise ParseError(token, f'invalid field in line "{line}"')
        fields[match.group(1)] = match.group(2)
    return fields


def _integer(fields: dict[str, str], key: str, line: str) -> int:
    if key not in fields:
        raise ParseError(line, f'missing {key}=')
    value = fields[key]
    if not value.isdigit():
        raise ParseError(value, f'{key} must be a non-negative integer')
    return int(value)


def _write(path: Union[str, Path], text: str) -> None:
    try:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        logger.info(f'wrote {path}')
    except OSError as e:
        logger.error(f'Error while writing {path}: {e}')
        raise


def format_lamination(ls: LeafSet) -> str:
    lines = [f'csl v1 d=3 depth={ls.depth} seed={format_chord(ls.seed.c)}']
    lines += [f'{format_chord(leaf)} gen={ls.generation[leaf]}' for leaf in ls]
    return '\n'.join(lines) + '\n'


def parse_lamination(text: str) -> LeafSet:
    """
    Parse a lamination file.

    Raises:
        ParseError: on a bad header or leaf line
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError('', 'empty lamination file')
    header = LAMINATION_HEADER.match(lines[0])
    if header is None:
        raise ParseError(lines[0], 'invalid lamination header')
    depth = int(header.group(1))
    seed = SymmetricPair.of(parse_chord(header.group(2)))

    generation = {}
    for line in lines[1:]:
        tokens = line.split()
        leaf = parse_chord(tokens[0])
        fields = _fields(tokens[1:], line)
        generation[leaf] = _integer(fields, 'gen', line) if 'gen' in fields else 0
    return LeafSet(tuple(generation), depth, seed, generation)


def write_lamination(ls: LeafSet, path: Union[str, Path]) -> None:
    _write(path, format_lamination(ls))


def read_lamination(path: Union[str, Path]) -> LeafSet:
    return parse_lamination(Path(path).read_text(encoding='utf-8'))


def format_cscl(approx: CsCLApprox) -> str:
    lines = [f'cscl v1 max_period={approx.max_period} max_preperiod={approx.max_preperiod}']
    lines += [
        f'{format_chord(r.pair.c)} pre={r.preperiod} per={r.period} kind={r.kind.value}'
        for r in approx.records
    ]
    return '\n'.join(lines) + '\n'


def _verdict(pair: SymmetricPair, kind: ComajorKind) -> LegalityVerdict:
    if kind == ComajorKind.L16_SPECIAL:
        return LegalityVerdict(True, None, len(forward_images(pair.c)))
    try:
        return is_legal_pair(pair)
    except ValueError:
        # chords of length 1/6 or more are never legal comajors
        logger.debug(f'{pair} is outside the short-chord domain')
        return LegalityVerdict(False, None, len(forward_images(pair.c)))


def parse_cscl(text: str) -> CsCLApprox:
    """
    Parse a comajor file. Verdicts are not stored in the file and are recomputed.

    Raises:
        ParseError: on a bad header, record line or kind
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError('', 'empty cscl file')
    header = CSCL_HEADER.match(lines[0])
    if header is None:
        raise ParseError(lines[0], 'invalid cscl header')

    records = []
    for line in lines[1:]:
        tokens = line.split()
        pair = SymmetricPair.of(parse_chord(tokens[0]))
        fields = _fields(tokens[1:], line)
        if 'kind' not in fields:
            raise ParseError(line, 'missing kind=')
        try:
            kind = ComajorKind(fields['kind'])
        except ValueError:
            raise ParseError(fields['kind'], 'unknown comajor kind') from None
        records.append(
            ComajorRecord(
                pair,
                _integer(fields, 'pre', line),
                _integer(fields, 'per', line),
                kind,
                _verdict(pair, kind),
            )
        )
    records.sort(key=lambda r: r.pair.c)
    return CsCLApprox(tuple(records), int(header.group(1)), int(header.group(2)))


def write_cscl(approx: CsCLApprox, path: Union[str, Path]) -> None:
    _write(path, format_cscl(approx))


def read_cscl(path: Union[str, Path]) -> CsCLApprox:
    return parse_cscl(Path(path).read_text(encoding='utf-8'))


def read_any(path: Union[str, Path]) -> Union[LeafSet, CsCLApprox]:
    """Read a lamination or comajor file, chosen by its header line."""
    text = Path(path).read_text(encoding='utf-8')
    lines = _content_lines(text)
    if lines and lines[0].startswith('cscl '):
        return parse_cscl(text)
    if lines and lines[0].startswith('csl '):
        return parse_lamination(text)
    raise ParseError(lines[0] if lines else '', 'unknown file header')


def load_to_csv(df: pd.DataFrame, output_path: str, file_name: str) -> None:
    """
    Writes the given DataFrame to <output_path>/<file_name>.csv.

    Args:
        df: Summary table to export
        output_path: Directory to write into; created if missing
        file_name: File name without the .csv extension

    Raises:
        OSError: if the directory or file cannot be written
    """
    if df.empty:
        logger.warning('Attempted to load an empty DataFrame to CSV. Aborting.')
        return

    try:
        full_file_path = os.path.join(output_path, file_name)
        os.makedirs(os.path.dirname(full_file_path), exist_ok=True)

        df.to_csv(f'{full_file_path}.csv', index=False, encoding='utf-8')
        logger.info(f'Summary written to CSV: {full_file_path}.csv')
    except Exception as e:
        logger.error(f'Error while writing CSV to {output_path}: {e}')
        raise

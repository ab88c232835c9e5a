from pathlib import Path

import pytest

from src.cli import main

DATA_DIR = Path(__file__).parent / 'data'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_orbit(capsys):
    assert run(capsys, 'orbit', '1/8') == (0, 'preperiod=0 period=2 orbit=1/8,3/8', '')
    assert run(capsys, 'orbit', '1/6')[1] == 'preperiod=1 period=1 orbit=1/6,1/2'


def test_classify(capsys):
    assert run(capsys, 'classify', '1/6-1/3')[:2] == (0, 'medium 1/6')
    assert run(capsys, 'classify', '0/1-1/3')[:2] == (0, 'critical 1/3')


def test_siblings(capsys):
    assert run(capsys, 'siblings', '1/6-1/3')[:2] == (0, '0/1-1/2 2/3-5/6 type=sml')


@pytest.mark.parametrize(
    'chord, code, text',
    [
        ('1/24-23/24', 0, 'legal'),
        ('1/24-1/12', 1, 'illegal: image 1 (1/8-1/4) enters the short strips of 3/8-3/4'),
        ('1/2', 0, 'legal (degenerate)'),
        ('1/6-1/3', 0, 'legal (length 1/6 special)'),
        ('11/12-1/12', 0, 'legal (length 1/6 special)'),
    ],
)
def test_legal(capsys, chord, code, text):
    assert run(capsys, 'legal', chord)[:2] == (code, text)


def test_legal_rejects_long_chord(capsys):
    code, out, err = run(capsys, 'legal', '1/8-3/8')
    assert code == 2
    assert err.startswith('error:')


@pytest.mark.parametrize('argv', [('orbit', '2/4'), ('classify', '1/8-1/8')])
def test_malformed_input(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith('error:')


def test_missing_arguments():
    with pytest.raises(SystemExit) as excinfo:
        main(['pullback', '1/2'])
    assert excinfo.value.code == 2


def test_pullback_and_verify(tmp_path, capsys):
    out = tmp_path / 'quad.csl'
    code, text, _ = run(capsys, 'pullback', '1/24-23/24', '--depth', '0', '--out', str(out))
    assert code == 0
    assert text == f'10 leaves written to {out}'
    assert out.read_text(encoding='utf-8').startswith('csl v1 d=3 depth=0 seed=1/24-23/24\n')
    assert run(capsys, 'verify', str(out))[:2] == (0, 'prelamination: verification passed')


def test_pullback_of_illegal_seed(tmp_path, capsys):
    code, _, err = run(
        capsys, 'pullback', '1/24-1/12', '--depth', '1', '--out', str(tmp_path / 'x.csl')
    )
    assert code == 1
    assert 'is not legal' in err
    assert not (tmp_path / 'x.csl').exists()


def test_l16(tmp_path, capsys):
    out = tmp_path / 'l16.csl'
    assert run(capsys, 'l16', '1', '--depth', '1', '--out', str(out))[:2] == (
        0,
        f'9 leaves written to {out}',
    )


def test_enumerate_and_verify(tmp_path, capsys):
    out = tmp_path / 'small.cscl'
    summary_dir = tmp_path / 'summary'
    code, text, _ = run(
        capsys,
        'enumerate',
        '--max-period', '2',
        '--max-preperiod', '1',
        '--out', str(out),
        '--summary-csv', str(summary_dir),
    )
    assert code == 0
    assert text == f'4 comajor pairs written to {out}'
    assert (summary_dir / 'cscl_summary.csv').exists()
    assert run(capsys, 'verify', str(out))[:2] == (0, 'cscl: verification passed')


def test_enumerate_fails_on_unwritable_summary(tmp_path, capsys):
    blocker = tmp_path / 'summary'
    blocker.write_text('not a directory', encoding='utf-8')
    code, _, err = run(
        capsys,
        'enumerate',
        '--max-period', '2',
        '--max-preperiod', '1',
        '--out', str(tmp_path / 'small.cscl'),
        '--summary-csv', str(blocker / 'nested'),
    )
    assert code == 2
    assert err.startswith('error:')


def test_verify_reports_crossing_comajors(tmp_path, capsys):
    path = tmp_path / 'bad.cscl'
    path.write_text(
        'cscl v1 max_period=1 max_preperiod=1\n'
        '0/1-1/2 pre=1 per=1 kind=higher-preperiod\n'
        '1/4-3/4 pre=1 per=1 kind=higher-preperiod\n',
        encoding='utf-8',
    )
    code, text, _ = run(capsys, 'verify', str(path))
    assert code == 1
    lines = text.splitlines()
    assert 'crossing: 0/1-1/2 crosses 1/4-3/4' in lines
    assert 'illegal: 0/1-1/2: illegal: not a short chord' in lines


def test_verify_reports_violations(tmp_path, capsys):
    path = tmp_path / 'bad.csl'
    path.write_text('csl v1 d=3 depth=0 seed=1/2\n0/1-1/2\n1/4-3/4\n', encoding='utf-8')
    code, text, _ = run(capsys, 'verify', str(path))
    assert code == 1
    # warnings reach the console through the progress-bar handler as well
    assert text.splitlines()[-1] == 'crossing: 0/1-1/2 crosses 1/4-3/4'


def test_gaps(tmp_path, capsys):
    path = tmp_path / 'l16.csl'
    run(capsys, 'l16', '1', '--depth', '0', '--out', str(path))
    code, text, _ = run(capsys, 'gaps', str(path))
    assert code == 0
    assert text.splitlines() == [
        '0/1,1/6,1/3,1/2 tags=critical,finite-at-depth',
        '0/1,1/2,2/3,5/6 tags=critical,finite-at-depth',
        '1/6,1/3 tags=finite-at-depth',
        '2/3,5/6 tags=finite-at-depth',
    ]


def test_render(tmp_path, capsys):
    source, out = tmp_path / 'l16.csl', tmp_path / 'svg' / 'l16.svg'
    run(capsys, 'l16', '1', '--depth', '0', '--out', str(source))
    code, text, _ = run(capsys, 'render', str(source), '--out', str(out), '--geodesic')
    assert code == 0
    assert text == f'3 chords rendered to {out}'
    assert out.read_bytes() == (DATA_DIR / 'l16_1_depth0.svg').read_bytes()


def test_render_straight(tmp_path, capsys):
    source, out = tmp_path / 'l16.csl', tmp_path / 'l16.svg'
    run(capsys, 'l16', '2', '--depth', '1', '--out', str(source))
    argv = ('render', str(source), '--out', str(out), '--straight', '--size', '400')
    assert run(capsys, *argv)[0] == 0
    assert ' A ' not in out.read_text(encoding='utf-8')


def test_render_ignores_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv('SYMLAM_RENDER_MODE', 'straight')
    monkeypatch.setenv('SYMLAM_RENDER_SIZE', '100')
    source, out = tmp_path / 'l16.csl', tmp_path / 'l16.svg'
    run(capsys, 'l16', '1', '--depth', '0', '--out', str(source))
    assert run(capsys, 'render', str(source), '--out', str(out))[0] == 0
    assert out.read_bytes() == (DATA_DIR / 'l16_1_depth0.svg').read_bytes()

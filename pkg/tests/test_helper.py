from fractions import Fraction

from config.config import Config
from src.circle import Angle, orbit_info
from src.utils.helper import Report, map_in_workers


def test_map_in_workers_keeps_input_order():
    angles = [Angle(Fraction(p, 80)) for p in range(80)]
    serial = map_in_workers(orbit_info, angles)
    assert map_in_workers(orbit_info, angles, jobs=3, desc='orbits') == serial
    assert [info.orbit[0] for info in serial] == angles


def test_map_in_workers_on_empty_input():
    assert map_in_workers(orbit_info, [], jobs=4) == []


def test_report(caplog):
    report = Report('prelamination')
    assert report.passed
    report.add('crossing', '0/1-1/2 crosses 1/4-3/4')
    other = Report('gaps')
    other.add('central', 'expected one central gap, found 0')
    report.extend(other)

    assert not report.passed
    assert report.kinds() == {'crossing', 'central'}
    assert str(report.violations[0]) == 'crossing: 0/1-1/2 crosses 1/4-3/4'

    report.log()
    assert any(
        'prelamination: central: expected one central gap' in message
        for message in caplog.text.splitlines()
    ), 'Expected each violation to be logged as a warning.'


def test_config_reads_prefixed_environment(monkeypatch):
    monkeypatch.setenv('SYMLAM_JOBS', '4')
    monkeypatch.setenv('SYMLAM_SHOW_PROGRESS', 'true')
    settings = Config()
    assert settings.jobs == 4
    assert settings.show_progress is True

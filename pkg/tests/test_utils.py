import json
import logging
import math
import os

import numpy as np
import pytest

from src.models.params import SystemParams
from src.models.trace import TRACE_HEADER, PopulationTrace
from src.physics.dynamics import populations
from src.utils.errors import DomainError
from src.utils.file_io import format_cell, read_csv_rows, read_json, write_csv_rows, write_json
from src.utils.helpers import display_banner, format_number, parse_angle, parse_values
from src.utils.log import configure_logging
from src.utils.metadata import build_sidecar, sidecar_path


@pytest.mark.parametrize(
    'text, expected',
    [
        ('pi/4', math.pi / 4),
        ('PI/2', math.pi / 2),
        ('3*pi/8', 3 * math.pi / 8),
        ('3pi/8', 3 * math.pi / 8),
        ('-pi', -math.pi),
        ('pi', math.pi),
        ('0.25', 0.25),
        (1, 1.0),
    ]
)
def test_parse_angle(text, expected):
    assert parse_angle(text) == pytest.approx(expected)


@pytest.mark.parametrize('text', ['quarter', 'pi/0', '.pi', ''])
def test_parse_angle_rejects_garbage(text):
    with pytest.raises(DomainError):
        parse_angle(text)


def test_parse_values_ranges_are_inclusive():
    assert parse_values('10:50:10', integer=True) == [10, 20, 30, 40, 50]
    assert parse_values('0, pi/2') == pytest.approx([0.0, math.pi / 2])
    assert parse_values('0:pi/2:pi/4') == pytest.approx([0.0, math.pi / 4, math.pi / 2])
    assert parse_values('-0.8:-0.2:0.3') == pytest.approx([-0.8, -0.5, -0.2])


@pytest.mark.parametrize(
    'text, integer',
    [
        ('', False),
        ('1:2', False),
        ('5:1:0', False),
        ('1.5', True),
    ]
)
def test_parse_values_errors(text, integer):
    with pytest.raises(DomainError):
        parse_values(text, integer=integer)


def test_format_helpers(capsys):
    assert format_number(0.123456) == '0.1235'
    assert format_cell(0.1) == '0.10000000000000001'
    assert format_cell(np.float64(2.5)) == '2.5'
    assert format_cell(3) == '3'
    display_banner('evolve', ['N = 4'])
    out = capsys.readouterr().out
    assert 'evolve' in out and 'N = 4' in out


def test_csv_round_trip_is_exact(tmp_path):
    params = SystemParams(3, 1.7, 0.9, 0.2, 0.4)
    trace = populations(params, np.linspace(0.0, 2.0, 5))
    path = str(tmp_path / 'trace.csv')
    assert write_csv_rows(path, TRACE_HEADER, trace.to_rows())

    with open(path, 'rb') as file:
        raw = file.read()
    assert b'\r\n' not in raw
    assert raw.startswith(b't,site,channel,probability\n')

    again = PopulationTrace.from_rows(read_csv_rows(path, TRACE_HEADER), params)
    np.testing.assert_array_equal(again.times, trace.times)
    np.testing.assert_array_equal(again.p_atom, trace.p_atom)
    np.testing.assert_array_equal(again.p_photon, trace.p_photon)


def test_csv_header_is_checked(tmp_path):
    path = str(tmp_path / 'other.csv')
    write_csv_rows(path, ('a', 'b'), [(1, 2)])
    with pytest.raises(ValueError):
        read_csv_rows(path, TRACE_HEADER)


def test_write_failure_returns_false(tmp_path):
    blocker = tmp_path / 'file.txt'
    blocker.write_text('x')
    target = str(blocker / 'out.csv')
    assert write_csv_rows(target, ('a',), [(1,)]) is False
    assert write_json(target, {'a': 1}) is False


def test_json_helpers(tmp_path):
    path = str(tmp_path / 'nested' / 'data.json')
    assert write_json(path, {'value': 1.5})
    assert read_json(path) == {'value': 1.5}
    assert read_json(str(tmp_path / 'missing.json')) == {}
    broken = tmp_path / 'broken.json'
    broken.write_text('{not json')
    assert read_json(str(broken)) == {}
    assert not [name for name in os.listdir(tmp_path / 'nested') if name.startswith('.tmp-')]


def test_sidecar_contents():
    meta = build_sidecar('evolve', 0.5, {'n_cavities': 4}, grid={'points': 11}, extra={'norm_error': 0.0})
    assert meta['command'] == 'evolve'
    assert meta['grid'] == {'points': 11}
    assert meta['norm_error'] == 0.0
    assert meta['created_at'].endswith('+00:00')
    json.dumps(meta)
    assert sidecar_path('results/run.csv') == 'results/run.csv.meta.json'


def test_configure_logging_levels(tmp_path):
    log_file = tmp_path / 'run.log'
    configure_logging(2, str(log_file))
    assert logging.getLogger().level == logging.DEBUG
    logging.getLogger('src.test').debug('hello')
    configure_logging(0)
    assert logging.getLogger().level == logging.WARNING
    assert 'hello' in log_file.read_text()

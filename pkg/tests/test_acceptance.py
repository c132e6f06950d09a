"""
Reference transfer figures checked on full-size arrays. Run with `pytest -m slow`
to select them alone; they take a few minutes together.
"""
import math

import numpy as np
import pytest

from src.models.encoding import EncodingScheme
from src.models.params import HoppingPattern, SystemParams
from src.models.sweep import SweepSpec
from src.physics.dynamics import site_populations
from src.physics.encoding import max_transfer_over_time
from src.physics.sweep import linear_fit_t_vs_inverse_hopping, linear_fit_t_vs_N, optimal_time, scan
from src.physics.verification import run_verification

pytestmark = pytest.mark.slow

FINE_GRID = 20001


def _uniform(n=100, coupling=10.0, hopping=1.0, beta=math.pi / 4):
    return SystemParams(n, coupling, hopping, 0.0, beta)


def _staggered(kappa, coupling, n=101):
    return SystemParams(n, coupling, 1.0, 0.0, math.pi / 4, HoppingPattern.staggered(kappa))


def test_intermediate_coupling_end_site_maxima():
    params = _uniform()
    atom = optimal_time(params, 'atom')
    photon = optimal_time(params, 'photon')
    assert atom.probability == pytest.approx(0.135, abs = 0.005)
    assert atom.time == pytest.approx(51.84, abs = 0.5)
    assert photon.probability == pytest.approx(0.139, abs = 0.005)
    assert photon.time == pytest.approx(51.73, abs = 0.5)
    assert photon.probability > atom.probability


@pytest.mark.parametrize('channel', ['atom', 'photon'])
def test_half_entangled_start_halves_the_maximum(channel):
    mixed = optimal_time(_uniform(beta=math.pi / 4), channel, grid_points=FINE_GRID)
    atomic = optimal_time(_uniform(beta=math.pi / 2), channel, grid_points=FINE_GRID)
    assert mixed.probability / atomic.probability == pytest.approx(0.5, abs = 0.1)


def test_weak_staggering_end_site_maxima():
    uniform = _uniform(n=101, coupling=200.0)
    staggered = _staggered(-0.2, 200.0)
    for channel in ('atom', 'photon'):
        dimerized = optimal_time(staggered, channel)
        assert dimerized.probability == pytest.approx(0.08, abs = 0.01)
        assert dimerized.time > optimal_time(uniform, channel).time


def test_weak_staggering_photon_maximum_under_strong_hopping():
    photon = optimal_time(_staggered(-0.2, 1 / 200), 'photon')
    assert photon.probability == pytest.approx(0.08, abs = 0.01)


def test_strong_staggering_blocks_photon_transfer():
    params = _staggered(-0.8, 1 / 200)
    photon = optimal_time(params, 'photon')
    atom = optimal_time(params, 'atom')
    assert photon.probability == pytest.approx(0.0026, abs = 0.0005)
    assert photon.probability > atom.probability


def test_strong_staggering_localizes_at_first_cavity():
    params = _staggered(-0.8, 200.0)
    atom, photon = site_populations(params, 1, np.linspace(0.0, 150.0, 1501))
    assert np.mean(atom + photon) > 0.5


def test_encoding_beats_classical_limit():
    for n in (50, 100, 150, 200):
        results = {}
        for k in (2, 4, 8):
            results[k] = max_transfer_over_time(EncodingScheme(k, _uniform(n=n)), resolution=FINE_GRID)
        atom8, photon8 = results[8]
        assert atom8.probability > 0.86
        assert photon8.probability > 0.86
        for channel in (0, 1):
            assert results[8][channel].probability > results[4][channel].probability > results[2][channel].probability


def test_optimal_time_scales_inversely_with_hopping():
    sizes = (20, 40, 60, 80, 100)
    slow = scan(SweepSpec('size', sizes, _uniform(n=20, coupling=10.0, hopping=1.0, beta=0.0)), workers=2)
    fast = scan(SweepSpec('size', sizes, _uniform(n=20, coupling=40.0, hopping=4.0, beta=0.0)), workers=2)
    for channel in ('atom', 'photon'):
        slow_fit = linear_fit_t_vs_N(slow, channel)
        fast_fit = linear_fit_t_vs_N(fast, channel)
        assert slow_fit.residual < 0.02
        assert fast_fit.residual < 0.02
        assert slow_fit.slope / fast_fit.slope == pytest.approx(4.0, abs = 0.2)


def test_optimal_time_is_linear_in_inverse_hopping():
    hopping = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0)
    fits = {}
    for n in (40, 80):
        result = scan(SweepSpec('hopping', hopping, _uniform(n=n, coupling=80.0, beta=0.0)), workers=2)
        fits[n] = {channel: linear_fit_t_vs_inverse_hopping(result, channel) for channel in ('atom', 'photon')}
    for channel in ('atom', 'photon'):
        assert fits[40][channel].residual < 0.02
        assert fits[80][channel].residual < 0.02
        assert fits[80][channel].slope > fits[40][channel].slope


def test_free_photons_arrive_twice_as_fast():
    strong_coupling = optimal_time(_uniform(n=101, coupling=200.0), 'photon')
    strong_hopping = optimal_time(_uniform(n=101, coupling=1 / 200), 'photon')
    assert strong_coupling.time / strong_hopping.time == pytest.approx(2.0, rel = 0.15)


def test_full_oracle_suite_passes():
    report = run_verification()
    assert report.passed, [check.name for check in report.failures]

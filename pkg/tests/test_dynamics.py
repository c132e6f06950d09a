import math

import hypothesis as hyp
import hypothesis.strategies as st
import numpy as np
import pytest

from src.models.params import HoppingPattern, SystemParams
from src.models.state import RestrictedState
from src.physics.cavity import initial_state
from src.physics.dynamics import (
    amplitudes_uniform,
    block_eigensystem,
    block_matrices,
    closed_form_energies,
    default_times,
    evolve_state,
    mode_system,
    closed_form_mixing_angle,
    populations,
    populations_from_state,
    populations_staggered,
    populations_uniform,
    site_coefficients_staggered,
    site_populations,
    strong_coupling_end_site,
)
from src.physics.lattice import staggered_spectrum, uniform_spectrum
from src.physics.oracle import oracle_populations
from src.utils.errors import DomainError

params_strategy = dict(
    coupling = st.floats(min_value = 0, max_value = 5),
    hopping = st.floats(min_value = 0, max_value = 3),
    detuning = st.floats(min_value = -5, max_value = 5),
    beta = st.floats(min_value = 0, max_value = math.pi / 2),
    t = st.floats(min_value = 0, max_value = 10),
)


def test_uncoupled_blocks():
    params = SystemParams(6, coupling=0.0, hopping=1.5, detuning=0.0)
    spectrum = uniform_spectrum(6)
    eig = block_eigensystem(spectrum, params)
    center = 1.5 * spectrum.eigenvalues
    np.testing.assert_allclose(eig.energy_plus, center + np.abs(center), atol = 1e-14)
    np.testing.assert_allclose(eig.energy_minus, center - np.abs(center), atol = 1e-14)


def test_zero_energy_mode_is_equal_weight():
    params = SystemParams(3, coupling=2.0, hopping=1.0, detuning=0.0)
    eig = block_eigensystem(uniform_spectrum(3), params)
    # the middle mode of an odd uniform chain has eps = 0
    assert eig.energy_plus[1] == pytest.approx(2 * math.sqrt(2))
    assert eig.energy_minus[1] == pytest.approx(-2 * math.sqrt(2))
    assert eig.mixing_angle[1] == pytest.approx(-math.pi / 4)


def test_block_energies_match_closed_form():
    params = SystemParams(100, coupling=10.0, hopping=1.0, detuning=0.0)
    spectrum, eig = mode_system(params)
    plus, minus = closed_form_energies(spectrum.eigenvalues, params)
    np.testing.assert_allclose(eig.energy_plus, plus, atol = 1e-12)
    np.testing.assert_allclose(eig.energy_minus, minus, atol = 1e-12)


@pytest.mark.parametrize('pattern', [HoppingPattern.uniform(), HoppingPattern.staggered(-0.4)])
def test_dressed_vectors_diagonalize_blocks(pattern):
    params = SystemParams(9, coupling=1.7, hopping=0.8, detuning=-1.2, pattern=pattern)
    spectrum, eig = mode_system(params)
    blocks = block_matrices(spectrum.eigenvalues, params)
    plus, minus = eig.dressed_vectors()
    for block, p, m, e_plus, e_minus in zip(blocks, plus, minus, eig.energy_plus, eig.energy_minus):
        assert np.max(np.abs(block @ p - e_plus * p)) < 1e-12
        assert np.max(np.abs(block @ m - e_minus * m)) < 1e-12
        assert abs(p @ m) < 1e-12
    assert np.all(eig.mixing_angle <= 1e-15)
    assert np.all(eig.mixing_angle >= -math.pi / 2 - 1e-15)


def test_closed_form_mixing_angle_agrees(small_uniform):
    _, eig = mode_system(small_uniform)
    closed_form = closed_form_mixing_angle(eig.energy_plus, eig.energy_minus, small_uniform)
    np.testing.assert_allclose(closed_form, eig.mixing_angle, atol = 1e-8)


def test_amplitudes_rebuild_initial_state(small_uniform):
    n = small_uniform.n_cavities
    _, eig = mode_system(small_uniform)
    for site in range(1, n + 1):
        atom = photon = 0.0
        for mode in range(1, n + 1):
            f_plus, f_minus = amplitudes_uniform(small_uniform, site, mode, 0.0)
            alpha = eig.mixing_angle[mode - 1]
            atom += f_plus * math.cos(alpha) + f_minus * math.sin(alpha)
            photon += -f_plus * math.sin(alpha) + f_minus * math.cos(alpha)
        expected = initial_state(small_uniform)
        assert atom == pytest.approx(expected.atom_amps[site - 1], abs = 1e-13)
        assert photon == pytest.approx(expected.photon_amps[site - 1], abs = 1e-13)


def test_amplitude_moduli_do_not_depend_on_time(small_uniform):
    early = amplitudes_uniform(small_uniform, 3, 2, 0.0)
    late = amplitudes_uniform(small_uniform, 3, 2, 17.3)
    np.testing.assert_allclose(np.abs(early), np.abs(late), atol = 1e-15)


def test_amplitudes_check_indices(small_uniform):
    with pytest.raises(DomainError):
        amplitudes_uniform(small_uniform, 0, 1, 0.0)
    with pytest.raises(DomainError):
        amplitudes_uniform(small_uniform.with_changes(n_cavities=7, pattern=HoppingPattern.staggered(0.2)), 1, 1, 0.0)


@hyp.settings(
    max_examples = 30,
    deadline = None,
)
@hyp.given(n = st.integers(min_value = 1, max_value = 10), **params_strategy)
def test_uniform_populations_match_oracle(n, coupling, hopping, detuning, beta, t):
    params = SystemParams(n, coupling, hopping, detuning, beta)
    times = np.array([0.0, t, 2 * t])
    analytic = populations_uniform(params, times)
    dense = oracle_populations(params, initial_state(params), times)
    np.testing.assert_allclose(analytic.p_atom, dense.p_atom, atol = 1e-9)
    np.testing.assert_allclose(analytic.p_photon, dense.p_photon, atol = 1e-9)


@hyp.settings(
    max_examples = 30,
    deadline = None,
)
@hyp.given(
    half = st.integers(min_value = 1, max_value = 5),
    kappa = st.floats(min_value = -0.9, max_value = 0.9).filter(lambda k: abs(k) > 1e-3),
    **params_strategy,
)
def test_staggered_populations_match_oracle(half, kappa, coupling, hopping, detuning, beta, t):
    params = SystemParams(2 * half + 1, coupling, hopping, detuning, beta, HoppingPattern.staggered(kappa))
    times = np.array([0.0, t, 2 * t])
    analytic = populations_staggered(params, times)
    dense = oracle_populations(params, initial_state(params), times)
    np.testing.assert_allclose(analytic.p_atom, dense.p_atom, atol = 1e-9)
    np.testing.assert_allclose(analytic.p_photon, dense.p_photon, atol = 1e-9)


@hyp.settings(
    max_examples = 30,
    deadline = None,
)
@hyp.given(
    n = st.integers(min_value = 1, max_value = 30),
    staggered = st.booleans(),
    kappa = st.floats(min_value = -0.9, max_value = 0.9),
    **params_strategy,
)
def test_every_trace_is_normalized(n, staggered, kappa, coupling, hopping, detuning, beta, t):
    if staggered:
        n = 2 * (n // 2) + 3
        pattern = HoppingPattern.staggered(kappa)
    else:
        pattern = HoppingPattern.uniform()
    params = SystemParams(n, coupling, hopping, detuning, beta, pattern)
    trace = populations(params, np.linspace(0.0, t, 7))
    assert trace.max_norm_error() < 1e-8


def test_oracle_example_population():
    params = SystemParams(8, coupling=10.0, hopping=1.0, detuning=0.0, beta=math.pi / 4)
    analytic = populations_uniform(params, [3.7])
    dense = oracle_populations(params, initial_state(params), [3.7])
    np.testing.assert_allclose(analytic.p_atom, dense.p_atom, atol = 1e-10)
    np.testing.assert_allclose(analytic.p_photon, dense.p_photon, atol = 1e-10)


def test_staggered_site_coefficients_are_overlaps():
    spectrum = staggered_spectrum(5, -0.2)
    vectors = spectrum.vectors
    initial = site_coefficients_staggered(spectrum, 1)
    for site in range(1, 6):
        closed = site_coefficients_staggered(spectrum, site)
        overlaps = vectors[:, site - 1]
        np.testing.assert_allclose(np.abs(closed), np.abs(overlaps), atol = 1e-10)
        # mode phases are a gauge; the products entering the populations are not
        np.testing.assert_allclose(initial * closed, vectors[:, 0] * overlaps, atol = 1e-10)


@pytest.mark.parametrize('site', [2, 4, 6])
def test_even_site_coefficients(site):
    n = 7
    spectrum = staggered_spectrum(n, 0.35)
    closed = site_coefficients_staggered(spectrum, site)
    assert closed[0] == 0.0
    minus, plus = closed[1::2], closed[2::2]
    m = np.arange(1, (n - 1) // 2 + 1)
    expected = math.sqrt(2 / (n + 1)) * np.sin(site * m * math.pi / (n + 1))
    np.testing.assert_allclose(plus, expected, atol = 1e-15)
    np.testing.assert_allclose(minus, expected, atol = 1e-15)


def test_odd_site_coefficients_are_antisymmetric():
    closed = site_coefficients_staggered(staggered_spectrum(9, -0.5), 3)
    np.testing.assert_allclose(closed[1::2], -closed[2::2], atol = 1e-15)


def test_near_zero_staggering_matches_uniform():
    uniform = SystemParams(21, coupling=3.0, hopping=1.0, detuning=0.5, beta=0.7)
    almost = uniform.with_changes(pattern=HoppingPattern.staggered(1e-6))
    times = np.linspace(0.0, 10.0, 101)
    a = populations_uniform(uniform, times)
    b = populations_staggered(almost, times)
    assert np.max(np.abs(a.p_atom - b.p_atom)) < 1e-4
    assert np.max(np.abs(a.p_photon - b.p_photon)) < 1e-4


def test_flat_staggering_is_exactly_uniform():
    uniform = SystemParams(9, coupling=2.0, hopping=0.5, detuning=-1.0, beta=1.1)
    flat = uniform.with_changes(pattern=HoppingPattern.staggered(0.0))
    times = np.linspace(0.0, 10.0, 21)
    np.testing.assert_allclose(populations(flat, times).p_atom, populations_uniform(uniform, times).p_atom, atol = 1e-10)


def test_mirror_symmetry(small_uniform):
    n = small_uniform.n_cavities
    beta = small_uniform.beta
    times = np.linspace(0.0, 6.0, 13)
    forward = populations_uniform(small_uniform, times)
    mirrored_state = RestrictedState.localized(n, n, atom=math.sin(beta), photon=math.cos(beta))
    backward = populations_from_state(small_uniform, mirrored_state, times)
    np.testing.assert_allclose(forward.p_atom, backward.p_atom[:, ::-1], atol = 1e-12)
    np.testing.assert_allclose(forward.p_photon, backward.p_photon[:, ::-1], atol = 1e-12)


def test_no_hopping_gives_rabi_oscillation():
    coupling = 0.8
    params = SystemParams(5, coupling=coupling, hopping=0.0, detuning=0.0, beta=math.pi / 2)
    times = np.linspace(0.0, 5.0, 51)
    trace = populations_uniform(params, times)
    np.testing.assert_allclose(trace.site(1, 'atom'), np.cos(math.sqrt(2) * coupling * times) ** 2, atol = 1e-12)
    np.testing.assert_allclose(trace.site(1, 'photon'), np.sin(math.sqrt(2) * coupling * times) ** 2, atol = 1e-12)
    assert np.max(trace.p_atom[:, 1:]) < 1e-20
    assert np.max(trace.p_photon[:, 1:]) < 1e-20


def test_strong_hopping_traps_the_atom():
    params = SystemParams(101, coupling=1 / 200, hopping=1.0, detuning=0.0, beta=math.pi / 2)
    atom = site_populations(params, 1, np.linspace(0.0, 50.0, 501))[0]
    assert atom.min() > 0.99


def test_strong_hopping_keeps_half_the_atom_at_home():
    params = SystemParams(101, coupling=1 / 200, hopping=1.0, detuning=0.0, beta=math.pi / 4)
    atom = site_populations(params, 1, np.linspace(0.0, 50.0, 501))[0]
    np.testing.assert_allclose(atom, 0.5, atol = 0.03)


def test_strong_coupling_shortcut_tracks_full_result():
    params = SystemParams(20, coupling=200.0, hopping=1.0, detuning=0.0, beta=math.pi / 4)
    times = np.linspace(0.0, 20.0, 201)
    shortcut = strong_coupling_end_site(params, times)
    atom, photon = site_populations(params, 20, times)
    assert np.max(np.abs(shortcut - atom)) < 1e-2
    assert np.max(np.abs(shortcut - photon)) < 1e-2


def test_site_populations_match_full_trace(small_staggered):
    times = np.linspace(0.0, 4.0, 9)
    trace = populations(small_staggered, times)
    atom, photon = site_populations(small_staggered, 5, times)
    np.testing.assert_allclose(atom, trace.site(5, 'atom'), atol = 1e-14)
    np.testing.assert_allclose(photon, trace.site(5, 'photon'), atol = 1e-14)


@pytest.mark.parametrize('fixture', ['small_uniform', 'small_staggered'])
def test_evolve_state_matches_oracle_for_arbitrary_states(fixture, request):
    params = request.getfixturevalue(fixture)
    rng = np.random.default_rng(7)
    n = params.n_cavities
    vector = rng.normal(size=2 * n) + 1j * rng.normal(size=2 * n)
    state = RestrictedState.from_vector(vector / np.linalg.norm(vector))
    times = np.array([0.0, 1.3, 4.1])
    analytic = populations_from_state(params, state, times)
    dense = oracle_populations(params, state, times)
    np.testing.assert_allclose(analytic.p_atom, dense.p_atom, atol = 1e-10)
    np.testing.assert_allclose(analytic.p_photon, dense.p_photon, atol = 1e-10)
    atom, photon = evolve_state(params, state, [0.0])
    np.testing.assert_allclose(atom[0], state.atom_amps, atol = 1e-12)
    np.testing.assert_allclose(photon[0], state.photon_amps, atol = 1e-12)


def test_pattern_guards_and_empty_grids(small_uniform, small_staggered):
    with pytest.raises(DomainError):
        populations_uniform(small_staggered, [0.0])
    with pytest.raises(DomainError):
        populations_staggered(small_uniform, [0.0])
    with pytest.raises(DomainError):
        populations(small_uniform, [])


def test_default_times_span_two_crossings():
    params = SystemParams(10, 1.0, 2.0)
    times = default_times(params, 11)
    assert times[0] == 0.0 and times[-1] == pytest.approx(10.0)
    with pytest.raises(DomainError):
        default_times(params.with_changes(hopping=0.0))

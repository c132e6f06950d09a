"""
Closed-form evolution in the single-excitation sector.

Every chain mode v couples |v>|e,0> and |v>|g,2> through the 2x2 block
    [[Delta/2,        sqrt(2) lambda          ],
     [sqrt(2) lambda, -Delta/2 + 2 xi eps_v   ]]
so the array dynamics is a sum of independent two-level problems.
"""
import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np

from src.models.params import SystemParams
from src.models.spectrum import BlockEigenSystem, ChainSpectrum
from src.models.state import RestrictedState
from src.models.trace import PopulationTrace
from src.physics.lattice import chain_spectrum, staggered_angles, zero_mode_amplitudes
from src.utils.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 2001


def default_times(params: SystemParams, points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Uniform grid over [0, 2N/xi]."""
    return np.linspace(*default_window(params), points)


def default_window(params: SystemParams) -> Tuple[float, float]:
    if params.hopping <= 0:
        raise DomainError("the default time window 2N/xi needs xi > 0")
    return 0.0, 2.0 * params.n_cavities / params.hopping


def default_tolerance(params: SystemParams) -> float:
    if params.hopping <= 0:
        raise DomainError("the default refinement tolerance 1e-4/xi needs xi > 0")
    return 1e-4 / params.hopping


def _check_times(times) -> np.ndarray:
    times = np.asarray(times, dtype=float).reshape(-1)
    if times.size == 0:
        raise DomainError("empty time grid")
    if not np.all(np.isfinite(times)):
        raise DomainError("time grid contains non-finite values")
    return times


def block_matrices(chain_eigenvalues: np.ndarray, params: SystemParams) -> np.ndarray:
    eps = np.asarray(chain_eigenvalues, dtype=float)
    blocks = np.empty((eps.size, 2, 2))
    blocks[:, 0, 0] = params.detuning / 2
    blocks[:, 0, 1] = math.sqrt(2) * params.coupling
    blocks[:, 1, 0] = math.sqrt(2) * params.coupling
    blocks[:, 1, 1] = -params.detuning / 2 + 2 * params.hopping * eps
    return blocks


def closed_form_energies(chain_eigenvalues, params: SystemParams):
    """E+/- = xi eps +/- sqrt((Delta/2 - xi eps)^2 + 2 lambda^2)"""
    center = params.hopping * np.asarray(chain_eigenvalues, dtype=float)
    root = np.sqrt((params.detuning / 2 - center) ** 2 + 2 * params.coupling ** 2)
    return center + root, center - root


def closed_form_mixing_angle(energy_plus, energy_minus, params: SystemParams) -> np.ndarray:
    """tan(alpha) = -sqrt(((Delta - 2E+)^2 + 8 lambda^2) / ((Delta - 2E-)^2 + 8 lambda^2))"""
    numerator = (params.detuning - 2 * np.asarray(energy_plus)) ** 2 + 8 * params.coupling ** 2
    denominator = (params.detuning - 2 * np.asarray(energy_minus)) ** 2 + 8 * params.coupling ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        return -np.arctan(np.sqrt(numerator / denominator))


def block_eigensystem(spectrum: ChainSpectrum, params: SystemParams) -> BlockEigenSystem:
    """
    Diagonalize every block. alpha comes from the E+ eigenvector (cos a, -sin a),
    so alpha lies in [-pi/2, 0] for lambda >= 0.
    """
    blocks = block_matrices(spectrum.eigenvalues, params)
    energies, vectors = np.linalg.eigh(blocks)
    plus = vectors[:, :, 1]
    flip = (plus[:, 0] < 0) | ((plus[:, 0] == 0) & (plus[:, 1] < 0))
    plus = np.where(flip[:, None], -plus, plus)
    alpha = np.arctan2(-plus[:, 1], plus[:, 0])

    if params.coupling > 0:
        closed_form = closed_form_mixing_angle(energies[:, 1], energies[:, 0], params)
        mismatch = np.nanmax(np.abs(closed_form - alpha))
        if mismatch > 1e-8:
            logger.warning("closed-form tan(alpha) differs from the block eigenvectors by %.3g rad", mismatch)

    return BlockEigenSystem(
        spectrum.labels,
        spectrum.eigenvalues,
        energies[:, 1].copy(),
        energies[:, 0].copy(),
        alpha
    )


@lru_cache(maxsize=64)
def mode_system(params: SystemParams) -> Tuple[ChainSpectrum, BlockEigenSystem]:
    spectrum = chain_spectrum(params)
    return spectrum, block_eigensystem(spectrum, params)


def _require_uniform(params: SystemParams):
    if params.pattern.is_staggered:
        raise DomainError("this operation is defined for uniform hopping")


def _require_staggered(params: SystemParams):
    if not params.pattern.is_staggered:
        raise DomainError("this operation is defined for staggered hopping")


def amplitudes_uniform(params: SystemParams, site: int, mode: int, t: float) -> Tuple[complex, complex]:
    """
    (f+_{M,m}(t), f-_{M,m}(t)):
    2/(N+1) exp(-i E+/- t) chi+/-(beta - alpha_m) sin(m pi/(N+1)) sin(m M pi/(N+1)),
    chi+ = sin, chi- = cos.
    """
    _require_uniform(params)
    n = params.n_cavities
    if not (1 <= site <= n and 1 <= mode <= n):
        raise DomainError(f"site and mode must lie in 1..{n}")
    _, eig = mode_system(params)
    index = mode - 1
    alpha = eig.mixing_angle[index]
    shape = 2.0 / (n + 1) * math.sin(mode * math.pi / (n + 1)) * math.sin(mode * site * math.pi / (n + 1))
    f_plus = shape * math.sin(params.beta - alpha) * np.exp(-1j * eig.energy_plus[index] * t)
    f_minus = shape * math.cos(params.beta - alpha) * np.exp(-1j * eig.energy_minus[index] * t)
    return complex(f_plus), complex(f_minus)


def _channel_weights(eig: BlockEigenSystem, beta: float):
    """Weights of exp(-i E+ t) and exp(-i E- t) in the atom and photon amplitudes."""
    alpha = eig.mixing_angle
    plus_source = np.sin(beta - alpha)
    minus_source = np.cos(beta - alpha)
    atom = (np.cos(alpha) * plus_source, np.sin(alpha) * minus_source)
    photon = (-np.sin(alpha) * plus_source, np.cos(alpha) * minus_source)
    return atom, photon


def _assemble(times, eig: BlockEigenSystem, beta: float, profile: np.ndarray):
    """
    Amplitudes of shape (T, sites):
    sum_v profile[v, s] [w+_v exp(-i E+_v t) + w-_v exp(-i E-_v t)] per channel.
    """
    phase_plus = np.exp(-1j * np.outer(times, eig.energy_plus))
    phase_minus = np.exp(-1j * np.outer(times, eig.energy_minus))
    (atom_p, atom_m), (photon_p, photon_m) = _channel_weights(eig, beta)
    atom = (phase_plus * atom_p) @ profile + (phase_minus * atom_m) @ profile
    photon = (phase_plus * photon_p) @ profile + (phase_minus * photon_m) @ profile
    return atom, photon


def _uniform_profile(n: int, sites: np.ndarray) -> np.ndarray:
    """2/(N+1) sin(m pi/(N+1)) sin(m s pi/(N+1)), shape (modes, sites)."""
    m = np.arange(1, n + 1)[:, None]
    return 2.0 / (n + 1) * np.sin(m * math.pi / (n + 1)) * np.sin(m * sites[None, :] * math.pi / (n + 1))


def populations_uniform(params: SystemParams, times) -> PopulationTrace:
    _require_uniform(params)
    times = _check_times(times)
    _, eig = mode_system(params)
    sites = np.arange(1, params.n_cavities + 1)
    atom, photon = _assemble(times, eig, params.beta, _uniform_profile(params.n_cavities, sites))
    return PopulationTrace(times, np.abs(atom) ** 2, np.abs(photon) ** 2, params)


def strong_coupling_end_site(params: SystemParams, times) -> np.ndarray:
    """
    Approximate P_N for beta = pi/4, Delta = 0, lambda >> xi (alpha ~ -pi/4):
    2 |sum_m exp(-i E+ t) sin(m pi/(N+1)) sin(m N pi/(N+1))|^2 / (N+1)^2
    """
    _require_uniform(params)
    times = _check_times(times)
    n = params.n_cavities
    _, eig = mode_system(params)
    m = np.arange(1, n + 1)
    shape = np.sin(m * math.pi / (n + 1)) * np.sin(m * n * math.pi / (n + 1))
    total = np.exp(-1j * np.outer(times, eig.energy_plus)) @ shape
    return 2.0 * np.abs(total) ** 2 / (n + 1) ** 2


def site_coefficients_staggered(spectrum: ChainSpectrum, site: int) -> np.ndarray:
    """
    c'_v(s) for every mode of the spectrum, in mode order.
      odd s:  c'_o ~ tau^((s-1)/2),  c'_{m+} = -c'_{m-} = sqrt(2/(N+1)) sin((s+1) m pi/(N+1) + theta_m)
      even s: c'_o = 0,              c'_{m+} =  c'_{m-} = sqrt(2/(N+1)) sin(s m pi/(N+1))
    The initial-state coefficients c_v are c'_v(1).
    """
    n = spectrum.n_sites
    if not 1 <= site <= n:
        raise DomainError(f"site {site} outside 1..{n}")
    if not spectrum.is_staggered:
        # kappa = 0 fallback: plain overlaps with the uniform modes
        return np.array([mode.site_amps[site - 1] for mode in spectrum.modes])

    kappa = spectrum.kappa
    prefactor = math.sqrt(2.0 / (n + 1))
    thetas = staggered_angles(n, kappa)
    coefficients = [zero_mode_amplitudes(n, kappa)[site - 1]]
    for m in range(1, (n + 1) // 2):
        if site % 2:
            value = prefactor * math.sin((site + 1) * m * math.pi / (n + 1) + thetas[m - 1])
            coefficients.extend([-value, value])
        else:
            value = prefactor * math.sin(site * m * math.pi / (n + 1))
            coefficients.extend([value, value])
    return np.array(coefficients)


def staggered_profile(spectrum: ChainSpectrum, sites) -> np.ndarray:
    """c_v c'_v(s), shape (modes, sites)."""
    initial = site_coefficients_staggered(spectrum, 1)
    columns = [initial * site_coefficients_staggered(spectrum, int(s)) for s in sites]
    return np.stack(columns, axis=1)


def populations_staggered(params: SystemParams, times) -> PopulationTrace:
    _require_staggered(params)
    times = _check_times(times)
    spectrum, eig = mode_system(params)
    profile = staggered_profile(spectrum, range(1, params.n_cavities + 1))
    atom, photon = _assemble(times, eig, params.beta, profile)
    return PopulationTrace(times, np.abs(atom) ** 2, np.abs(photon) ** 2, params)


def populations(params: SystemParams, times) -> PopulationTrace:
    """Populations from the cavity-1 initial state for either pattern."""
    if params.pattern.is_staggered:
        return populations_staggered(params, times)
    return populations_uniform(params, times)


def site_populations(params: SystemParams, site: int, times):
    """(P_atom,s(t), P_photon,s(t)) for one cavity without building the full trace."""
    times = _check_times(times)
    spectrum, eig = mode_system(params)
    if params.pattern.is_staggered:
        profile = staggered_profile(spectrum, [site])
    else:
        if not 1 <= site <= params.n_cavities:
            raise DomainError(f"site {site} outside 1..{params.n_cavities}")
        profile = _uniform_profile(params.n_cavities, np.array([site]))
    atom, photon = _assemble(times, eig, params.beta, profile)
    return np.abs(atom[:, 0]) ** 2, np.abs(photon[:, 0]) ** 2


def evolve_state(params: SystemParams, state: RestrictedState, times):
    """
    Spectral propagation of an arbitrary state; returns (atom, photon) amplitudes of shape (T, N).
    """
    times = _check_times(times)
    if state.n_sites != params.n_cavities:
        raise DomainError(f"state has {state.n_sites} sites, params expect {params.n_cavities}")
    spectrum, eig = mode_system(params)
    vectors = spectrum.vectors  # (modes, sites)
    plus, minus = eig.dressed_vectors()

    atom_overlap = vectors.conj() @ state.atom_amps
    photon_overlap = vectors.conj() @ state.photon_amps
    plus_coeff = plus[:, 0] * atom_overlap + plus[:, 1] * photon_overlap
    minus_coeff = minus[:, 0] * atom_overlap + minus[:, 1] * photon_overlap

    phase_plus = np.exp(-1j * np.outer(times, eig.energy_plus)) * plus_coeff
    phase_minus = np.exp(-1j * np.outer(times, eig.energy_minus)) * minus_coeff
    atom = (phase_plus * plus[:, 0] + phase_minus * minus[:, 0]) @ vectors
    photon = (phase_plus * plus[:, 1] + phase_minus * minus[:, 1]) @ vectors
    return atom, photon


def populations_from_state(params: SystemParams, state: RestrictedState, times) -> PopulationTrace:
    times = _check_times(times)
    atom, photon = evolve_state(params, state, times)
    return PopulationTrace(times, np.abs(atom) ** 2, np.abs(photon) ** 2, params)

"""
Adjacency matrix of the open cavity chain and its closed-form eigenmodes.
"""
import logging
import math

import numpy as np
from scipy.special import logsumexp

from src.models.params import SystemParams
from src.models.spectrum import ChainMode, ChainSpectrum, ModeKind, ModeLabel
from src.utils.errors import DomainError

logger = logging.getLogger(__name__)


def bond_strengths(params: SystemParams) -> np.ndarray:
    """Strength of bond (i, i+1) for i = 1..N-1."""
    i = np.arange(1, params.n_cavities)
    if params.pattern.is_staggered:
        return 1.0 - params.kappa * (-1.0) ** i
    return np.ones(i.size)


def adjacency(params: SystemParams) -> np.ndarray:
    bonds = bond_strengths(params)
    return np.diag(bonds, 1) + np.diag(bonds, -1)


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    """First nonzero amplitude gets a nonnegative real part."""
    nonzero = np.flatnonzero(np.abs(vector) > 1e-14)
    if nonzero.size and np.real(vector[nonzero[0]]) < 0:
        return -vector
    return vector


def _normalized(vector: np.ndarray, label: ModeLabel) -> np.ndarray:
    norm = np.linalg.norm(vector)
    if abs(norm - 1.0) > 1e-12:
        logger.warning("mode %s: closed-form norm %.15g renormalized to 1", label, norm)
    return vector / norm


def uniform_spectrum(n_sites: int) -> ChainSpectrum:
    """|m> = sqrt(2/(N+1)) sum_M sin(m M pi/(N+1)) |M>,  E_m = -2 cos(m pi/(N+1))"""
    if n_sites < 1:
        raise DomainError(f"a chain needs at least one site, got {n_sites}")
    sites = np.arange(1, n_sites + 1)
    prefactor = math.sqrt(2.0 / (n_sites + 1))
    modes = []
    for m in range(1, n_sites + 1):
        label = ModeLabel(ModeKind.UNIFORM, m)
        amps = prefactor * np.sin(m * sites * math.pi / (n_sites + 1))
        amps = _fix_phase(_normalized(amps, label))
        modes.append(ChainMode(label, -2.0 * math.cos(m * math.pi / (n_sites + 1)), amps))
    logger.debug("built uniform spectrum for N=%d", n_sites)
    return ChainSpectrum(tuple(modes), n_sites)


def _check_staggered(n_sites: int, kappa: float):
    if n_sites < 3 or n_sites % 2 == 0:
        raise DomainError(f"staggered spectrum needs an odd number of sites >= 3, got {n_sites}")
    if not -1.0 < kappa < 1.0:
        raise DomainError(f"kappa must lie strictly inside (-1, 1), got {kappa}")


def staggered_eigenvalues(n_sites: int, kappa: float) -> np.ndarray:
    """epsilon_{m+} = 2 sqrt(cos^2 + kappa^2 sin^2) of m pi/(N+1), m = 1..(N-1)/2"""
    x = np.arange(1, (n_sites - 1) // 2 + 1) * math.pi / (n_sites + 1)
    return 2.0 * np.sqrt(np.cos(x) ** 2 + kappa ** 2 * np.sin(x) ** 2)


def staggered_angles(n_sites: int, kappa: float) -> np.ndarray:
    """theta_m from exp(i theta_m) = (1 - kappa)/eps_{m+} (exp(-2 i m pi/(N+1)) - tau)."""
    m = np.arange(1, (n_sites - 1) // 2 + 1)
    tau = (kappa + 1.0) / (kappa - 1.0)
    phase = (1.0 - kappa) * (np.exp(-2j * m * math.pi / (n_sites + 1)) - tau)
    return np.angle(phase / staggered_eigenvalues(n_sites, kappa))


def zero_mode_amplitudes(n_sites: int, kappa: float) -> np.ndarray:
    """
    Normalized |o> on all sites: tau^(M-1) on site 2M-1, zero on even sites.
    Powers of tau are handled through logarithms, tau^(N+1) overflows for large N.
    """
    half = (n_sites + 1) // 2
    log_tau = math.log1p(kappa) - math.log1p(-kappa)  # log|tau|, tau < 0
    exponents = np.arange(half)
    log_weights = exponents * log_tau
    log_norm = 0.5 * logsumexp(2.0 * log_weights)
    signs = np.where(exponents % 2 == 0, 1.0, -1.0)
    amps = np.zeros(n_sites)
    amps[0::2] = signs * np.exp(log_weights - log_norm)
    return amps


def staggered_spectrum(n_sites: int, kappa: float) -> ChainSpectrum:
    """
    Modes of the staggered chain, ordered |o>, then (m,-), (m,+) for ascending m.
    kappa = 0 falls back to the uniform modes.
    """
    _check_staggered(n_sites, kappa)
    if kappa == 0.0:
        logger.debug("kappa = 0: using uniform modes for N=%d", n_sites)
        return uniform_spectrum(n_sites)

    modes = [ChainMode(ModeLabel(ModeKind.ZERO), 0.0, zero_mode_amplitudes(n_sites, kappa))]

    prefactor = math.sqrt(2.0 / (n_sites + 1))
    half = (n_sites + 1) // 2
    big_m = np.arange(1, half + 1)
    eps = staggered_eigenvalues(n_sites, kappa)
    thetas = staggered_angles(n_sites, kappa)
    for m in range(1, half):
        argument = 2 * m * big_m * math.pi / (n_sites + 1)
        even = np.sin(argument[:-1])
        odd = np.sin(argument + thetas[m - 1])
        for sign in (-1, 1):
            label = ModeLabel(ModeKind.STAGGERED, m, sign)
            amps = np.zeros(n_sites)
            amps[1::2] = prefactor * even
            amps[0::2] = sign * prefactor * odd
            amps = _fix_phase(_normalized(amps, label))
            modes.append(ChainMode(label, sign * float(eps[m - 1]), amps))

    logger.debug("built staggered spectrum for N=%d, kappa=%g", n_sites, kappa)
    return ChainSpectrum(tuple(modes), n_sites, kappa=float(kappa))


def chain_spectrum(params: SystemParams) -> ChainSpectrum:
    if params.pattern.is_staggered:
        return staggered_spectrum(params.n_cavities, params.kappa)
    return uniform_spectrum(params.n_cavities)


def spectrum_residuals(spectrum: ChainSpectrum, params: SystemParams):
    """
    (max |A v - eps v|, max |<v|w> - delta|, max |sum |v><v| - I|)
    """
    matrix = adjacency(params)
    vectors = spectrum.vectors
    residual = 0.0
    for mode in spectrum.modes:
        residual = max(residual, float(np.max(np.abs(matrix @ mode.site_amps - mode.eigenvalue * mode.site_amps))))
    identity = np.eye(len(spectrum))
    orthonormality = float(np.max(np.abs(vectors.conj() @ vectors.T - identity)))
    completeness = float(np.max(np.abs(vectors.T @ vectors.conj() - np.eye(spectrum.n_sites))))
    return residual, orthonormality, completeness

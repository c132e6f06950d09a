"""
k-qubit encoding at the sending end and r-qubit decoding at the receiving end
of a uniform array.
"""
import math
from typing import Optional, Tuple

import numpy as np

from src.models.encoding import EncodingScheme
from src.models.sweep import Optimum
from src.models.state import RestrictedState
from src.physics.dynamics import DEFAULT_GRID_POINTS, default_tolerance, default_window, mode_system
from src.physics.search import maximize_on_window


def encoded_initial_state(scheme: EncodingScheme) -> RestrictedState:
    """sum_nu (-1)^nu |2 nu + 1> x |e,0> / sqrt(k)"""
    n = scheme.params.n_cavities
    atom = np.zeros(n, dtype=complex)
    for nu, site in enumerate(scheme.encoding_sites):
        atom[site - 1] = (-1) ** nu / math.sqrt(scheme.k)
    return RestrictedState(atom, np.zeros(n, dtype=complex))


def decoding_targets(scheme: EncodingScheme) -> Tuple[RestrictedState, RestrictedState]:
    """Ideal atomic and photonic states on the decoding window."""
    n = scheme.params.n_cavities
    weights = np.zeros(n, dtype=complex)
    for q, site in enumerate(scheme.decoding_sites):
        weights[site - 1] = (-1) ** q / math.sqrt(scheme.r)
    empty = np.zeros(n, dtype=complex)
    return RestrictedState(weights, empty), RestrictedState(empty, weights)


def _encoding_weights(scheme: EncodingScheme):
    """
    Per mode m, the t-independent part of the decoded amplitudes:
    (1/sqrt(r)) sum_q (-1)^q (2/((N+1) sqrt(k))) sum_nu (-1)^nu sin(m M_q pi/(N+1)) sin((2nu+1) m pi/(N+1))
    """
    n = scheme.params.n_cavities
    m = np.arange(1, n + 1)
    nu = np.arange(scheme.k)
    q = np.arange(scheme.r)
    sender = np.sin(np.outer(m, scheme.encoding_sites) * math.pi / (n + 1)) @ ((-1.0) ** nu)
    receiver = np.sin(np.outer(m, scheme.decoding_sites) * math.pi / (n + 1)) @ ((-1.0) ** q)
    return 2.0 / ((n + 1) * math.sqrt(scheme.k) * math.sqrt(scheme.r)) * sender * receiver


def transfer_probabilities(scheme: EncodingScheme, times) -> Tuple[np.ndarray, np.ndarray]:
    """
    P_atom/photon = |(1/sqrt(r)) sum_m sum_q mu+/-_{m,q}|^2 with
    mu+/-_{m,q} = (-1)^q [f~+/- chi-(alpha_m) +/- f~-/+ chi+(alpha_m)] and
    f~+/-_{M,m} carrying chi-/+(alpha_m) from the purely atomic encoding.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    _, eig = mode_system(scheme.params)
    alpha = eig.mixing_angle
    shape = _encoding_weights(scheme)

    f_plus = np.exp(-1j * np.outer(times, eig.energy_plus)) * (np.cos(alpha) * shape)
    f_minus = np.exp(-1j * np.outer(times, eig.energy_minus)) * (np.sin(alpha) * shape)
    atom = (f_plus * np.cos(alpha) + f_minus * np.sin(alpha)).sum(axis=1)
    photon = (f_minus * np.cos(alpha) - f_plus * np.sin(alpha)).sum(axis=1)
    return np.abs(atom) ** 2, np.abs(photon) ** 2


def transfer_probability(scheme: EncodingScheme, t: float) -> Tuple[float, float]:
    p_atom, p_photon = transfer_probabilities(scheme, [t])
    return float(p_atom[0]), float(p_photon[0])


def max_transfer_over_time(
        scheme: EncodingScheme,
        t_window: Optional[Tuple[float, float]] = None,
        resolution: int = DEFAULT_GRID_POINTS,
        tolerance: Optional[float] = None):
    """
    (atom, photon) Optimum records, each channel maximized independently.
    Defaults: window [0, 2N/xi], tolerance 1e-4/xi.
    """
    params = scheme.params
    if t_window is None:
        t_window = default_window(params)
    if tolerance is None:
        tolerance = default_tolerance(params)

    atom = maximize_on_window(lambda t: transfer_probabilities(scheme, t)[0], t_window, resolution, tolerance)
    photon = maximize_on_window(lambda t: transfer_probabilities(scheme, t)[1], t_window, resolution, tolerance)
    return Optimum(*atom), Optimum(*photon)

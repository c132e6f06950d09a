"""
Single-cavity two-photon Jaynes-Cummings model and the initial state of the array.
"""
import math

import numpy as np

from src.models.params import SingleCavityParams, SystemParams
from src.models.state import DressedPair, RestrictedState
from src.utils.errors import DomainError


def effective_coupling(g1: float, g2: float, delta: float) -> float:
    """lambda = g1 g2 / delta after eliminating the intermediate level."""
    if delta == 0:
        raise DomainError("zero detuning of the intermediate level: adiabatic elimination is invalid")
    return g1 * g2 / delta


def single_cavity_matrix(p: SingleCavityParams) -> np.ndarray:
    """Hamiltonian of the sector {|e, n-2>, |g, n>} (that order)."""
    n = p.n_photons
    off_diagonal = p.coupling * math.sqrt(n * (n - 1))
    return np.array([
        [p.omega_a + (n - 2) * p.omega_c, off_diagonal],
        [off_diagonal, n * p.omega_c]
    ])


def jc_spectrum(p: SingleCavityParams) -> DressedPair:
    """
    Dressed energies of the n-photon sector by direct diagonalization.
    mixing_angle theta: |+> = cos(theta)|e, n-2> + sin(theta)|g, n>, theta in [0, pi/2].
    """
    matrix = single_cavity_matrix(p)
    energies, vectors = np.linalg.eigh(matrix)
    plus = vectors[:, 1]
    if plus[0] < 0 or (plus[0] == 0 and plus[1] < 0):
        plus = -plus
    theta = math.atan2(plus[1], plus[0])
    return DressedPair(float(energies[1]), float(energies[0]), theta)


def dressed_states(pair: DressedPair):
    """(|+>, |->) of a single cavity in the (|e, n-2>, |g, n>) basis."""
    theta = pair.mixing_angle
    plus = np.array([math.cos(theta), math.sin(theta)])
    minus = np.array([-math.sin(theta), math.cos(theta)])
    return plus, minus


def initial_state(params: SystemParams) -> RestrictedState:
    """|1> x (cos(beta)|g,2> + sin(beta)|e,0>)"""
    return RestrictedState.localized(
        params.n_cavities,
        1,
        atom=math.sin(params.beta),
        photon=math.cos(params.beta)
    )

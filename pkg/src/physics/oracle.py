"""
Brute-force reference: the dense 2N x 2N restricted Hamiltonian built term by term
and propagated through its full eigendecomposition.
"""
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import eigh

from src.models.params import SystemParams
from src.models.state import RestrictedState
from src.models.trace import PopulationTrace
from src.physics.lattice import adjacency
from src.utils.errors import DomainError

ORACLE_MAX_SITES = 2000
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


@dataclass(frozen=True, eq=False)
class DenseRestrictedHamiltonian:
    """Basis ordering: site-major, (|e,0>, |g,2>) minor."""
    matrix: np.ndarray
    n_sites: int

    @cached_property
    def decomposition(self):
        """(eigenvalues, eigenvectors) of the Hermitian matrix."""
        return eigh(self.matrix)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.decomposition[0]


def build_hamiltonian(params: SystemParams) -> DenseRestrictedHamiltonian:
    """(Delta/2) I x Z + sqrt(2) lambda I x X + 2 xi A x (I - Z)/2"""
    n = params.n_cavities
    if n > ORACLE_MAX_SITES:
        raise DomainError(f"the dense oracle is capped at N={ORACLE_MAX_SITES}")
    identity = np.eye(n)
    matrix = (
        params.detuning / 2 * np.kron(identity, PAULI_Z)
        + math.sqrt(2) * params.coupling * np.kron(identity, PAULI_X)
        + 2 * params.hopping * np.kron(adjacency(params), (np.eye(2) - PAULI_Z) / 2)
    )
    return DenseRestrictedHamiltonian(matrix, n)


def _check_state(hamiltonian: DenseRestrictedHamiltonian, state: RestrictedState):
    if state.n_sites != hamiltonian.n_sites:
        raise DomainError(f"state has {state.n_sites} sites, Hamiltonian has {hamiltonian.n_sites}")
    if abs(state.norm() - 1.0) > 1e-8:
        raise DomainError(f"state is not normalized (norm {state.norm():.12g})")


def evolve_many(hamiltonian: DenseRestrictedHamiltonian, state: RestrictedState, times) -> np.ndarray:
    """psi(t) = V exp(-i E t) V^dagger psi0 for every t; shape (T, 2N)."""
    _check_state(hamiltonian, state)
    times = np.asarray(times, dtype=float).reshape(-1)
    energies, vectors = hamiltonian.decomposition
    coefficients = vectors.conj().T @ state.as_vector()
    phases = np.exp(-1j * np.outer(times, energies))
    return (phases * coefficients) @ vectors.T


def evolve(hamiltonian: DenseRestrictedHamiltonian, state: RestrictedState, t: float) -> RestrictedState:
    return RestrictedState.from_vector(evolve_many(hamiltonian, state, [t])[0])


def energy(hamiltonian: DenseRestrictedHamiltonian, state: RestrictedState) -> float:
    vector = state.as_vector()
    return float(np.real(vector.conj() @ hamiltonian.matrix @ vector))


def oracle_populations(params: SystemParams, state: RestrictedState, times) -> PopulationTrace:
    times = np.asarray(times, dtype=float).reshape(-1)
    if times.size == 0:
        raise DomainError("empty time grid")
    evolved = evolve_many(build_hamiltonian(params), state, times)
    return PopulationTrace(times, np.abs(evolved[:, 0::2]) ** 2, np.abs(evolved[:, 1::2]) ** 2, params)

from dataclasses import dataclass

import numpy as np

from src.utils.errors import DomainError


@dataclass(frozen=True)
class DressedPair:
    """
    Eigen-pair of a 2x2 atom-field block.
    mixing_angle is theta_n for a single cavity, alpha for an array block.
    """
    energy_plus: float
    energy_minus: float
    mixing_angle: float

    @property
    def splitting(self) -> float:
        return self.energy_plus - self.energy_minus


@dataclass(frozen=True, eq=False)
class RestrictedState:
    """
    State in the single-excitation sector (Q = 2 - N).

    atom_amps[M-1]   amplitude on |M> x |e,0>
    photon_amps[M-1] amplitude on |M> x |g,2>
    """
    atom_amps: np.ndarray
    photon_amps: np.ndarray

    def __post_init__(self):
        atom = np.array(self.atom_amps, dtype=complex).reshape(-1)
        photon = np.array(self.photon_amps, dtype=complex).reshape(-1)
        if atom.shape != photon.shape or atom.size == 0:
            raise DomainError("atom and photon amplitudes must be non-empty and of equal length")
        atom.setflags(write=False)
        photon.setflags(write=False)
        object.__setattr__(self, "atom_amps", atom)
        object.__setattr__(self, "photon_amps", photon)

    @property
    def n_sites(self) -> int:
        return self.atom_amps.size

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.atom_amps) ** 2 + np.abs(self.photon_amps) ** 2)))

    def is_normalized(self, tol: float = 1e-10) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def as_vector(self) -> np.ndarray:
        """Dense 2N vector, site-major with (atom, photon) minor ordering."""
        vector = np.empty(2 * self.n_sites, dtype=complex)
        vector[0::2] = self.atom_amps
        vector[1::2] = self.photon_amps
        return vector

    @classmethod
    def from_vector(cls, vector) -> "RestrictedState":
        vector = np.asarray(vector, dtype=complex).reshape(-1)
        if vector.size % 2:
            raise DomainError("restricted state vectors have even length 2N")
        return cls(vector[0::2], vector[1::2])

    @classmethod
    def localized(cls, n_sites: int, site: int, atom: complex = 0.0, photon: complex = 0.0):
        """Excitation on a single cavity (1-indexed)."""
        if not 1 <= site <= n_sites:
            raise DomainError(f"site {site} outside 1..{n_sites}")
        atom_amps = np.zeros(n_sites, dtype=complex)
        photon_amps = np.zeros(n_sites, dtype=complex)
        atom_amps[site - 1] = atom
        photon_amps[site - 1] = photon
        return cls(atom_amps, photon_amps)

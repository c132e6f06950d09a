from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np


class ModeKind(str, Enum):
    UNIFORM = "uniform"
    ZERO = "zero"
    STAGGERED = "staggered"


@dataclass(frozen=True)
class ModeLabel:
    """|m> (uniform), |o> (zero mode) or |m>_+/- (staggered)."""
    kind: ModeKind
    m: Optional[int] = None
    sign: Optional[int] = None

    def __str__(self) -> str:
        if self.kind is ModeKind.ZERO:
            return "o"
        if self.kind is ModeKind.STAGGERED:
            return f"{self.m}{'+' if self.sign > 0 else '-'}"
        return str(self.m)


@dataclass(frozen=True, eq=False)
class ChainMode:
    label: ModeLabel
    eigenvalue: float
    site_amps: np.ndarray  # index 0 is site 1

    def __post_init__(self):
        amps = np.array(self.site_amps)
        amps.setflags(write=False)
        object.__setattr__(self, "site_amps", amps)


@dataclass(frozen=True, eq=False)
class ChainSpectrum:
    """
    Eigen-decomposition of the adjacency matrix of the open chain.
    kappa is None when the modes are the uniform sine modes.
    """
    modes: Tuple[ChainMode, ...]
    n_sites: int
    kappa: Optional[float] = None

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([mode.eigenvalue for mode in self.modes], dtype=float)

    @property
    def vectors(self) -> np.ndarray:
        """Mode-major matrix, shape (n_modes, n_sites)."""
        return np.array([mode.site_amps for mode in self.modes])

    @property
    def labels(self) -> Tuple[ModeLabel, ...]:
        return tuple(mode.label for mode in self.modes)

    @property
    def is_staggered(self) -> bool:
        return self.kappa is not None

    def __len__(self) -> int:
        return len(self.modes)


@dataclass(frozen=True, eq=False)
class BlockEigenSystem:
    """
    Per chain mode v: eigenvalues E+/E- of the 2x2 block and the mixing angle alpha.
    Dressed vectors in the (|e,0>, |g,2>) basis:
        |+> = (cos alpha, -sin alpha),   |-> = (sin alpha, cos alpha)
    """
    labels: Tuple[ModeLabel, ...]
    chain_eigenvalues: np.ndarray
    energy_plus: np.ndarray
    energy_minus: np.ndarray
    mixing_angle: np.ndarray

    def __len__(self) -> int:
        return len(self.labels)

    def dressed_vectors(self):
        """Arrays of shape (n_modes, 2) for |+> and |->."""
        cos_a = np.cos(self.mixing_angle)
        sin_a = np.sin(self.mixing_angle)
        plus = np.stack([cos_a, -sin_a], axis=1)
        minus = np.stack([sin_a, cos_a], axis=1)
        return plus, minus

    def all_energies(self) -> np.ndarray:
        return np.sort(np.concatenate([self.energy_plus, self.energy_minus]))

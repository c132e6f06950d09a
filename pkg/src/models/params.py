import math
from dataclasses import dataclass, field, replace
from enum import Enum

from src.utils.errors import DomainError


class PatternKind(str, Enum):
    UNIFORM = "uniform"
    STAGGERED = "staggered"


@dataclass(frozen=True)
class HoppingPattern:
    """
    Bond pattern of the open chain.
    Uniform: every bond has strength 1. Staggered: bond (i, i+1) has 1 - kappa*(-1)^i.
    """
    kind: PatternKind = PatternKind.UNIFORM
    kappa: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", PatternKind(self.kind))
        if self.kind is PatternKind.UNIFORM and self.kappa != 0.0:
            raise DomainError("kappa is only meaningful for the staggered pattern")
        if not math.isfinite(self.kappa) or not -1.0 < self.kappa < 1.0:
            raise DomainError(f"kappa must lie strictly inside (-1, 1), got {self.kappa}")

    @classmethod
    def uniform(cls) -> "HoppingPattern":
        return cls(PatternKind.UNIFORM, 0.0)

    @classmethod
    def staggered(cls, kappa: float) -> "HoppingPattern":
        return cls(PatternKind.STAGGERED, float(kappa))

    @property
    def is_staggered(self) -> bool:
        return self.kind is PatternKind.STAGGERED

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "kappa": self.kappa}

    @classmethod
    def from_dict(cls, data: dict):
        return cls(PatternKind(data["kind"]), float(data.get("kappa", 0.0)))


@dataclass(frozen=True)
class SystemParams:
    """
    All constants of the cavity array in one validated record (hbar = 1).

    n_cavities: number of cavities N
    coupling:   two-photon atom-cavity strength lambda
    hopping:    intercavity two-photon tunneling xi
    detuning:   Delta = omega_a - 2 omega_c
    beta:       mixing angle of the initial state in cavity 1, in [0, pi/2]
    """
    n_cavities: int
    coupling: float
    hopping: float
    detuning: float = 0.0
    beta: float = math.pi / 4
    pattern: HoppingPattern = field(default_factory=HoppingPattern.uniform)

    def __post_init__(self):
        if isinstance(self.n_cavities, bool) or int(self.n_cavities) != self.n_cavities:
            raise DomainError(f"n_cavities must be an integer, got {self.n_cavities!r}")
        object.__setattr__(self, "n_cavities", int(self.n_cavities))
        for name in ("coupling", "hopping", "detuning", "beta"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

        if self.n_cavities < 1:
            raise DomainError(f"n_cavities must be positive, got {self.n_cavities}")
        if self.coupling < 0:
            raise DomainError(f"coupling must be non-negative, got {self.coupling}")
        if self.hopping < 0:
            raise DomainError(f"hopping must be non-negative, got {self.hopping}")
        # small slack so that math.pi / 2 passed through text survives
        if not -1e-15 <= self.beta <= math.pi / 2 + 1e-15:
            raise DomainError(f"beta must lie in [0, pi/2], got {self.beta}")
        if self.pattern.is_staggered:
            if self.n_cavities < 3 or self.n_cavities % 2 == 0:
                raise DomainError(
                    f"staggered hopping needs an odd number of cavities >= 3, got {self.n_cavities}")

    @property
    def kappa(self) -> float:
        return self.pattern.kappa

    def with_changes(self, **changes) -> "SystemParams":
        """Copy with some fields replaced (re-validated)."""
        return replace(self, **changes)

    def to_dict(self) -> dict:
        """Plain dictionary for JSON output"""
        return {
            "n_cavities": self.n_cavities,
            "coupling": self.coupling,
            "hopping": self.hopping,
            "detuning": self.detuning,
            "beta": self.beta,
            "pattern": self.pattern.to_dict()
        }

    @classmethod
    def from_dict(cls, data: dict):
        return cls(
            data["n_cavities"],
            data["coupling"],
            data["hopping"],
            data.get("detuning", 0.0),
            data.get("beta", math.pi / 4),
            HoppingPattern.from_dict(data.get("pattern", {"kind": "uniform"}))
        )


@dataclass(frozen=True)
class SingleCavityParams:
    """
    One cavity of the two-photon JC model in the sector {|e, n-2>, |g, n>}.
    """
    omega_a: float
    omega_c: float
    coupling: float
    n_photons: int = 2

    def __post_init__(self):
        if int(self.n_photons) != self.n_photons or self.n_photons < 2:
            raise DomainError(f"the dressed sector needs n_photons >= 2, got {self.n_photons}")
        object.__setattr__(self, "n_photons", int(self.n_photons))

    @property
    def detuning(self) -> float:
        return self.omega_a - 2 * self.omega_c

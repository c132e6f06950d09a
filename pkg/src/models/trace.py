from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np

from src.models.params import SystemParams
from src.utils.errors import DomainError

CHANNELS = ("atom", "photon")
TRACE_HEADER = ("t", "site", "channel", "probability")


@dataclass(frozen=True, eq=False)
class PopulationTrace:
    """
    Site-resolved excitation populations over a time grid.
    p_atom[t][s-1] / p_photon[t][s-1] for sites s = 1..N.
    """
    times: np.ndarray
    p_atom: np.ndarray
    p_photon: np.ndarray
    params: SystemParams

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float).reshape(-1)
        p_atom = np.asarray(self.p_atom, dtype=float)
        p_photon = np.asarray(self.p_photon, dtype=float)
        expected = (times.size, self.params.n_cavities)
        if p_atom.shape != expected or p_photon.shape != expected:
            raise DomainError(f"population arrays must have shape {expected}")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "p_atom", p_atom)
        object.__setattr__(self, "p_photon", p_photon)

    @property
    def n_sites(self) -> int:
        return self.params.n_cavities

    def channel(self, name: str) -> np.ndarray:
        if name == "atom":
            return self.p_atom
        if name == "photon":
            return self.p_photon
        raise DomainError(f"unknown channel {name!r}")

    def site(self, site: int, channel: str) -> np.ndarray:
        """Time series of one cavity (1-indexed)."""
        return self.channel(channel)[:, site - 1]

    def total(self) -> np.ndarray:
        return self.p_atom.sum(axis=1) + self.p_photon.sum(axis=1)

    def max_norm_error(self) -> float:
        return float(np.max(np.abs(self.total() - 1.0)))

    def to_rows(self) -> List[Tuple[float, int, str, float]]:
        """Rows (t, site, channel, probability), by time then site, atom before photon."""
        rows = []
        for i, t in enumerate(self.times):
            for s in range(self.n_sites):
                rows.append((float(t), s + 1, "atom", float(self.p_atom[i, s])))
                rows.append((float(t), s + 1, "photon", float(self.p_photon[i, s])))
        return rows

    @classmethod
    def from_rows(cls, rows: Iterable, params: SystemParams) -> "PopulationTrace":
        """Inverse of to_rows; rows may carry strings as read from CSV."""
        times: List[float] = []
        values = {}
        for t, site, channel, probability in rows:
            t = float(t)
            if not times or times[-1] != t:
                times.append(t)
            values[(len(times) - 1, int(site), str(channel))] = float(probability)

        n = params.n_cavities
        p_atom = np.zeros((len(times), n))
        p_photon = np.zeros((len(times), n))
        for (i, site, channel), probability in values.items():
            if channel not in CHANNELS or not 1 <= site <= n:
                raise DomainError(f"bad trace row: site={site} channel={channel}")
            target = p_atom if channel == "atom" else p_photon
            target[i, site - 1] = probability
        return cls(np.array(times), p_atom, p_photon, params)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "times": self.times.tolist(),
            "p_atom": self.p_atom.tolist(),
            "p_photon": self.p_photon.tolist()
        }

    @classmethod
    def from_dict(cls, data: dict):
        return cls(
            np.asarray(data["times"]),
            np.asarray(data["p_atom"]),
            np.asarray(data["p_photon"]),
            SystemParams.from_dict(data["params"])
        )

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.models.params import SystemParams
from src.utils.errors import DomainError


@dataclass(frozen=True)
class EncodingScheme:
    """
    k-qubit encoding on odd sites 1, 3, ..., 2k-1 with signs (-1)^nu,
    decoded on r sites M_q = N - 2(r-1) + 2q at the far end.
    """
    k: int
    params: SystemParams
    r: Optional[int] = None  # defaults to k

    def __post_init__(self):
        if self.r is None:
            object.__setattr__(self, "r", self.k)
        n = self.params.n_cavities
        if self.k < 1 or self.r < 1:
            raise DomainError(f"k and r must be positive, got k={self.k}, r={self.r}")
        if self.params.pattern.is_staggered:
            raise DomainError("the k-qubit encoding is defined for uniform hopping only")
        if 2 * self.k - 1 > n:
            raise DomainError(f"encoding window 1..{2 * self.k - 1} exceeds N={n}")
        if self.decoding_sites[0] < 1:
            raise DomainError(f"decoding window of r={self.r} does not fit into N={n}")
        if self.decoding_sites[0] < 2 * self.k:
            raise DomainError(
                f"encoding sites 1..{2 * self.k - 1} overlap the decoding window "
                f"starting at {self.decoding_sites[0]}")

    @property
    def encoding_sites(self) -> np.ndarray:
        return 2 * np.arange(self.k) + 1

    @property
    def decoding_sites(self) -> np.ndarray:
        n = self.params.n_cavities
        return n - 2 * (self.r - 1) + 2 * np.arange(self.r)

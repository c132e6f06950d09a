from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from src.models.params import SystemParams
from src.utils.errors import DomainError

SWEEP_HEADER = ("axis_value", "channel", "t_opt", "p_max")


class SweepAxis(str, Enum):
    SYSTEM_SIZE = "size"
    BETA = "beta"
    KAPPA = "kappa"
    ENCODING_K = "encoding-k"
    HOPPING = "hopping"

    @property
    def is_integer(self) -> bool:
        return self in (SweepAxis.SYSTEM_SIZE, SweepAxis.ENCODING_K)


@dataclass(frozen=True)
class Optimum:
    """Best time and probability of one channel."""
    time: float
    probability: float


@dataclass(frozen=True)
class SweepSpec:
    """
    One parameter scan.
    time_window None means [0, 2N/xi] per point; refine_tolerance None means 1e-4/xi.
    encoding_k set turns every point into the k-qubit encoded transfer (r = k).
    """
    axis: SweepAxis
    values: Tuple
    fixed: SystemParams
    time_window: Optional[Tuple[float, float]] = None
    grid_points: int = 2001
    refine_tolerance: Optional[float] = None
    encoding_k: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "axis", SweepAxis(self.axis))
        if self.axis.is_integer:
            fractional = [v for v in self.values if float(v) != int(float(v))]
            if fractional:
                raise DomainError(f"the {self.axis.value} axis takes whole numbers, got {fractional[0]!r}")
            values = tuple(int(float(v)) for v in self.values)
        else:
            values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise DomainError("a sweep needs at least one axis value")
        if self.grid_points < 2:
            raise DomainError(f"grid_points must be >= 2, got {self.grid_points}")
        if self.time_window is not None:
            start, stop = (float(x) for x in self.time_window)
            if start < 0 or stop <= start:
                raise DomainError(f"time window must satisfy 0 <= start < stop, got {self.time_window}")
            object.__setattr__(self, "time_window", (start, stop))
        if self.refine_tolerance is not None and self.refine_tolerance <= 0:
            raise DomainError("refine_tolerance must be positive")
        if self.encoding_k is not None and self.axis is SweepAxis.ENCODING_K:
            raise DomainError("encoding_k is implied by the encoding-k axis")

    def to_dict(self) -> dict:
        return {
            "axis": self.axis.value,
            "values": list(self.values),
            "fixed": self.fixed.to_dict(),
            "time_window": list(self.time_window) if self.time_window else None,
            "grid_points": self.grid_points,
            "refine_tolerance": self.refine_tolerance,
            "encoding_k": self.encoding_k
        }

    @classmethod
    def from_dict(cls, data: dict):
        window = data.get("time_window")
        return cls(
            SweepAxis(data["axis"]),
            tuple(data["values"]),
            SystemParams.from_dict(data["fixed"]),
            tuple(window) if window else None,
            data.get("grid_points", 2001),
            data.get("refine_tolerance"),
            data.get("encoding_k")
        )


@dataclass(frozen=True)
class SweepPoint:
    axis_value: float
    atom: Optimum
    photon: Optimum
    wall_time: float = field(default=0.0, compare=False)

    def channel(self, name: str) -> Optimum:
        if name == "atom":
            return self.atom
        if name == "photon":
            return self.photon
        raise DomainError(f"unknown channel {name!r}")


@dataclass(frozen=True)
class SweepResult:
    points: Tuple[SweepPoint, ...]
    spec: SweepSpec

    @property
    def axis_values(self) -> List[float]:
        return [point.axis_value for point in self.points]

    def series(self, channel: str, quantity: str = "probability") -> List[float]:
        return [getattr(point.channel(channel), quantity) for point in self.points]

    def to_rows(self) -> List[Tuple[float, str, float, float]]:
        rows = []
        for point in self.points:
            for name in ("atom", "photon"):
                optimum = point.channel(name)
                rows.append((point.axis_value, name, optimum.time, optimum.probability))
        return rows

    @classmethod
    def from_rows(cls, rows: Iterable, spec: SweepSpec) -> "SweepResult":
        grouped = {}
        order = []
        for axis_value, channel, t_opt, p_max in rows:
            value = int(float(axis_value)) if spec.axis.is_integer else float(axis_value)
            if value not in grouped:
                grouped[value] = {}
                order.append(value)
            grouped[value][str(channel)] = Optimum(float(t_opt), float(p_max))
        points = []
        for value in order:
            channels = grouped[value]
            if set(channels) != {"atom", "photon"}:
                raise DomainError(f"sweep rows for {value!r} need both channels")
            points.append(SweepPoint(value, channels["atom"], channels["photon"]))
        return cls(tuple(points), spec)

    def to_dict(self) -> dict:
        """Wall times stay out so equal scans serialize identically."""
        points = []
        for p in self.points:
            record = {
                "axis_value": p.axis_value,
                "t_opt_atom": p.atom.time,
                "p_max_atom": p.atom.probability,
                "t_opt_photon": p.photon.time,
                "p_max_photon": p.photon.probability
            }
            points.append(record)
        return {"spec": self.spec.to_dict(), "points": points}

    @classmethod
    def from_dict(cls, data: dict):
        points = tuple(
            SweepPoint(
                p["axis_value"],
                Optimum(p["t_opt_atom"], p["p_max_atom"]),
                Optimum(p["t_opt_photon"], p["p_max_photon"])
            )
            for p in data["points"]
        )
        return cls(points, SweepSpec.from_dict(data["spec"]))


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    residual: float  # RMS of residuals over mean of the fitted data

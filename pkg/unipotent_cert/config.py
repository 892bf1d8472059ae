"""Run settings shared by the pipeline and the command line."""

from dataclasses import asdict, dataclass, replace
from typing import Any


@dataclass(frozen=True)
class Settings:
    """Tunables for classification, search and verification."""

    precision: int = 16  # Laurent window size N
    budget: int = 8  # substitution steps for split certification
    seed: int = 0
    search_degree: int = 2  # s-degree bound for isotropy witness scans
    oracle_cap: int = 200_000  # enumerated half-candidates in the oracle
    samples: int = 4  # torsor targets solved when spot-checking a split verdict
    spot_window: tuple[int, int] = (-1, 1)
    spot_degree: int = 1
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise ValueError("precision must be positive")
        if self.budget < 0:
            raise ValueError("budget must be non-negative")
        if self.search_degree < 0 or self.spot_degree < 0:
            raise ValueError("degree bounds must be non-negative")
        if self.spot_window[0] > self.spot_window[1]:
            raise ValueError("spot_window must be (vmin, vmax) with vmin <= vmax")

    def replace(self, **changes: Any) -> "Settings":
        """Return a copy with some fields changed."""
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["spot_window"] = list(self.spot_window)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Settings":
        """Create from dictionary."""
        data = dict(data)
        if "spot_window" in data:
            data["spot_window"] = tuple(data["spot_window"])
        return cls(**data)

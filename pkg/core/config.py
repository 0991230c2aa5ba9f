"""Runtime configuration for the pectoral suppression toolkit."""

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

from .errors import InvalidConfig

T = TypeVar("T")

DEFAULT_DELTA_FRAC = 0.10


def _env_value(name: str, parse: Callable[[str], T]) -> Optional[T]:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return None
    try:
        return parse(value)
    except ValueError as e:
        raise InvalidConfig(f"{name}={value!r} is not a valid {parse.__name__}") from e


def _env_float(name: str) -> Optional[float]:
    return _env_value(name, float)


@dataclass(frozen=True)
class SuppressionConfig:
    """Tunable parameters for the segmentation methods and batch runs."""

    delta_frac: float = DEFAULT_DELTA_FRAC
    crossover: Optional[float] = None
    bandwidth: Optional[float] = None
    int_exponent: Optional[float] = None
    defuzz_threshold: Optional[float] = None
    workers: int = 1
    database_path: Optional[Path] = None
    tracking_uri: Optional[str] = None

    @classmethod
    def from_env(cls) -> "SuppressionConfig":
        """Create config from environment variables."""
        delta_frac = _env_float("PECTORAL_DELTA_FRAC")
        workers = _env_value("PECTORAL_WORKERS", int)
        db_path = os.getenv("PECTORAL_DATABASE_PATH")
        return cls(
            delta_frac=DEFAULT_DELTA_FRAC if delta_frac is None else delta_frac,
            crossover=_env_float("PECTORAL_CROSSOVER"),
            bandwidth=_env_float("PECTORAL_BANDWIDTH"),
            int_exponent=_env_float("PECTORAL_INT_EXPONENT"),
            defuzz_threshold=_env_float("PECTORAL_DEFUZZ_THRESHOLD"),
            workers=1 if workers is None else workers,
            database_path=Path(db_path) if db_path else None,
            tracking_uri=os.getenv("MLFLOW_TRACKING_URI") or None,
        )

    def with_overrides(self, **overrides: Any) -> "SuppressionConfig":
        """Return a copy where every non-None override replaces the current value."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes)

    def fuzzy_overrides(self) -> dict[str, float]:
        """Fuzzy parameters explicitly set by the user, keyed by FuzzyParams field."""
        candidates = {
            "crossover": self.crossover,
            "bandwidth": self.bandwidth,
            "int_exponent": self.int_exponent,
            "defuzz_threshold": self.defuzz_threshold,
        }
        return {key: value for key, value in candidates.items() if value is not None}

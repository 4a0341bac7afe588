import os
from dataclasses import dataclass, replace

from dotenv import load_dotenv

from .exceptions import HyperdetConfigurationError


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw.replace("_", ""))
    except ValueError as e:
        raise HyperdetConfigurationError(f"{name} must be an integer, got {raw!r}") from e


@dataclass(frozen=True)
class EngineConfig:
    """Enumeration and search configuration."""

    budget: int = 10**9  # Maximum number of contributors a single operation may visit
    workers: int = 1  # Worker processes for enumeration and search
    exhaustive_cap: int = 5  # Largest n for exhaustive search and experiments
    progress_interval: int = 2**20  # Candidates between search progress lines
    record_timings: bool = False  # Attach per-class elapsed seconds to reports
    log_level: str = "WARNING"

    def __post_init__(self) -> None:
        if self.budget < 0:
            raise HyperdetConfigurationError("budget must be non-negative")
        if self.workers < 1:
            raise HyperdetConfigurationError("workers must be at least 1")
        if self.exhaustive_cap < 1:
            raise HyperdetConfigurationError("exhaustive_cap must be at least 1")
        if self.progress_interval < 1:
            raise HyperdetConfigurationError("progress_interval must be at least 1")

    @classmethod
    def from_env(cls) -> "EngineConfig":
        """
        Create the configuration from environment variables (and a `.env` file).

        Raises:
            HyperdetConfigurationError: If a variable holds a malformed value.
        """
        load_dotenv()
        defaults = cls()
        return cls(
            budget=_int_from_env("HYPERDET_BUDGET", defaults.budget),
            workers=_int_from_env("HYPERDET_WORKERS", defaults.workers),
            exhaustive_cap=_int_from_env("HYPERDET_EXHAUSTIVE_CAP", defaults.exhaustive_cap),
            progress_interval=_int_from_env("HYPERDET_PROGRESS_INTERVAL", defaults.progress_interval),
            record_timings=os.getenv("HYPERDET_TIMINGS", "false").lower() in ("1", "true", "yes"),
            log_level=os.getenv("HYPERDET_LOG_LEVEL", defaults.log_level).upper(),
        )

    def with_overrides(self, **overrides: object) -> "EngineConfig":
        """Return a copy with every non-None override applied."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes)  # type: ignore[arg-type]

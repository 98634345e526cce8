from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from lpa_chen.errors import ConfigError

_FIELDS = ("rational", "prime")
_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class AppConfig:
    name: str = "lpa-chen"
    log_level: str = "WARNING"


@dataclass
class AlgebraConfig:
    field: str = "rational"
    modulus: int | None = None  # required when field is "prime"


@dataclass
class PathsConfig:
    max_len: int = 4
    probe_depth: int = 6
    kernel_horizon: int | None = None  # overrides prefix + 2·|recurrent| if set


@dataclass
class ReportsConfig:
    json_indent: int = 2
    witness_limit: int = 5


@dataclass
class Config:
    app: AppConfig = field(default_factory=AppConfig)
    algebra: AlgebraConfig = field(default_factory=AlgebraConfig)
    paths: PathsConfig = field(default_factory=PathsConfig)
    reports: ReportsConfig = field(default_factory=ReportsConfig)


def load_config(path: str | Path | None = None) -> Config:
    """Load configuration from YAML.

    Without *path*, ``config/config.yaml`` is used when present, then
    ``config/example.yaml``; if neither exists the defaults apply.

    Raises:
        ConfigError: if a section holds unknown keys or invalid values.
    """
    if path is None:
        root = Path(__file__).resolve().parents[2]
        path = root / "config" / "config.yaml"
        if not path.exists():
            path = root / "config" / "example.yaml"
    path = Path(path)

    data: dict = {}
    if path.exists():
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"Cannot read {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"Expected a mapping at the top of {path}")

    try:
        cfg = Config(
            app=AppConfig(**data.get("app", {})),
            algebra=AlgebraConfig(**data.get("algebra", {})),
            paths=PathsConfig(**data.get("paths", {})),
            reports=ReportsConfig(**data.get("reports", {})),
        )
    except TypeError as exc:
        raise ConfigError(f"Invalid configuration in {path}: {exc}") from exc
    validate_config(cfg)
    return cfg


def validate_config(cfg: Config) -> None:
    """Raise :class:`ConfigError` if *cfg* holds an unusable value."""
    if cfg.app.log_level.upper() not in _LOG_LEVELS:
        raise ConfigError(f"Unknown log level '{cfg.app.log_level}'")
    if cfg.algebra.field not in _FIELDS:
        raise ConfigError(
            f"Unknown field '{cfg.algebra.field}'. Expected one of: {', '.join(_FIELDS)}"
        )
    if cfg.algebra.field == "prime":
        if cfg.algebra.modulus is None or not _is_prime(cfg.algebra.modulus):
            raise ConfigError(
                f"Prime field mode needs a prime modulus, got {cfg.algebra.modulus!r}"
            )
    if cfg.paths.max_len < 1:
        raise ConfigError("paths.max_len must be at least 1")
    if cfg.paths.probe_depth < 1:
        raise ConfigError("paths.probe_depth must be at least 1")
    if cfg.paths.kernel_horizon is not None and cfg.paths.kernel_horizon < 0:
        raise ConfigError("paths.kernel_horizon must be non-negative")
    if cfg.reports.witness_limit < 1:
        raise ConfigError("reports.witness_limit must be at least 1")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True

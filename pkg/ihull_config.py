"""Settings for the ihull workbench, read from config/ihull.yaml.

Usage:
    settings = load_settings()                  # config/ihull.yaml next to this file
    settings = load_settings("my.yaml")         # explicit file
    settings = settings.override(max_hull=500)  # command-line flags win
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

import yaml

from ihull_errors import ValidationError

logger = logging.getLogger("ihull.config")

CONFIG_PATH = Path(__file__).parent / "config" / "ihull.yaml"

# yaml section -> {yaml key: Settings field}
_SECTIONS: dict[str, dict[str, str]] = {
    "limits": {
        "max_hull": "max_hull",
        "max_cover": "max_cover",
        "oracle_max_elements": "oracle_max_elements",
        "pi_tight_max_members": "pi_tight_max_members",
    },
    "free_product": {
        "syllable_bound": "fp_syllable_bound",
        "enumeration_budget": "fp_enumeration_budget",
    },
    "verify": {
        "nf_lambda_size": "nf_lambda_size",
        "relative_lambda_size": "relative_lambda_size",
    },
    "logging": {
        "level": "log_level",
        "format": "log_format",
        "file": "log_file",
        "events": "events_file",
    },
}


@dataclass(frozen=True)
class Settings:
    max_hull: int = 100000
    max_cover: int = 20
    oracle_max_elements: int = 12
    pi_tight_max_members: int = 8
    fp_syllable_bound: int = 4
    fp_enumeration_budget: int = 200000
    nf_lambda_size: int = 2
    relative_lambda_size: int = 2
    log_level: str = "WARNING"
    log_format: str = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"
    log_file: str | None = None
    events_file: str | None = None
    # set from --oracle; not read from YAML
    oracle: bool = False

    def override(self, **flags: Any) -> Settings:
        """Return a copy with every non-None flag applied."""
        return replace(self, **{k: v for k, v in flags.items() if v is not None})

    @property
    def log_level_number(self) -> int:
        level = logging.getLevelName(self.log_level.upper())
        if not isinstance(level, int):
            raise ValidationError(f"unknown log level {self.log_level!r}")
        return level


def _check_type(name: str, value: Any) -> Any:
    expected = {f.name: f.type for f in fields(Settings)}[name]
    if value is None:
        if "None" not in str(expected):
            raise ValidationError(f"setting {name} may not be null")
        return value
    if "int" in str(expected):
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ValidationError(f"setting {name} must be a positive integer")
    elif not isinstance(value, str):
        raise ValidationError(f"setting {name} must be a string")
    return value


def load_settings(path: str | Path | None = None) -> Settings:
    """Load settings from YAML; a missing default file yields built-in defaults."""
    config_path = Path(path) if path is not None else CONFIG_PATH
    if not config_path.exists():
        if path is not None:
            raise ValidationError(f"config file not found: {config_path}")
        logger.debug("No config at %s, using defaults", config_path)
        return Settings()

    try:
        with config_path.open(encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ValidationError(f"cannot parse {config_path}: {e}") from e
    if not isinstance(raw, dict):
        raise ValidationError(f"{config_path}: top level must be a mapping")

    values: dict[str, Any] = {}
    for section, body in raw.items():
        if section not in _SECTIONS:
            raise ValidationError(f"{config_path}: unknown section {section!r}")
        body = body or {}
        if not isinstance(body, dict):
            raise ValidationError(f"{config_path}: section {section!r} must be a mapping")
        for key, value in body.items():
            if key not in _SECTIONS[section]:
                raise ValidationError(f"{config_path}: unknown key {section}.{key}")
            name = _SECTIONS[section][key]
            values[name] = _check_type(name, value)

    logger.debug("Loaded settings from %s", config_path)
    return Settings(**values)

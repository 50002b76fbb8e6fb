from __future__ import annotations

import logging
import pathlib
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import yaml

from .automata import DEFAULT_ENUMERATION_CAP, DEFAULT_PAIR_STATE_CAP, DEFAULT_SUBSET_STATE_CAP
from .word_ops import ClosureConfig, Direction

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass
class LimitsConfig:
    name: str = "default"
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    subset_state_cap: int = DEFAULT_SUBSET_STATE_CAP
    pair_state_cap: int = DEFAULT_PAIR_STATE_CAP


@dataclass
class ClosureDefaults:
    max_len: int = 8
    intermediate_cap_factor: int = 3
    max_iter: Optional[int] = None
    direction_mode: Direction = Direction.TWO_GSCO

    def closure_config(
        self,
        max_len: Optional[int] = None,
        intermediate_cap: Optional[int] = None,
        max_iter: Optional[int] = None,
        direction: Optional[Direction] = None,
    ) -> ClosureConfig:
        length = self.max_len if max_len is None else max_len
        return ClosureConfig(
            max_len=length,
            intermediate_cap=self.intermediate_cap_factor * length if intermediate_cap is None else intermediate_cap,
            max_iter=self.max_iter if max_iter is None else max_iter,
            direction_mode=self.direction_mode if direction is None else direction,
        )


@dataclass
class ConstructionConfig:
    star_pair_include_base: bool = True
    splice_include_base: bool = False
    default_max_len: int = 8


@dataclass
class ToolkitConfig:
    limits: LimitsConfig = field(default_factory=LimitsConfig)
    closure: ClosureDefaults = field(default_factory=ClosureDefaults)
    construction: ConstructionConfig = field(default_factory=ConstructionConfig)
    log_level: str = "WARNING"

    @property
    def log_level_value(self) -> int:
        return getattr(logging, self.log_level)


class ConfigError(Exception):
    """Raised when configuration values are missing or invalid."""


def _section(raw: Dict[str, Any], key: str) -> Dict[str, Any]:
    value = raw.get(key)
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"'{key}' must be a mapping of settings.")
    return value


def normalize_direction(value: Any) -> Direction:
    if value is None:
        return Direction.TWO_GSCO
    if isinstance(value, Direction):
        return value
    mode = str(value).strip().lower()
    aliases = {
        "": Direction.TWO_GSCO,
        "1": Direction.ONE_GSCO,
        "one": Direction.ONE_GSCO,
        "1gsco": Direction.ONE_GSCO,
        "2": Direction.TWO_GSCO,
        "two": Direction.TWO_GSCO,
        "2gsco": Direction.TWO_GSCO,
        "both": Direction.TWO_GSCO,
    }
    if mode not in aliases:
        raise ConfigError("'direction_mode' must be one of: one, two.")
    return aliases[mode]


def _normalize_positive_int(value: Any, *, name: str, default: int, minimum: int = 1) -> int:
    if value is None:
        return default
    if isinstance(value, bool):
        raise ConfigError(f"'{name}' must be a numeric value.")
    try:
        parsed = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"'{name}' must be a numeric value.") from None
    if parsed < minimum:
        raise ConfigError(f"'{name}' must be at least {minimum}.")
    return parsed


def _normalize_optional_int(value: Any, *, name: str) -> Optional[int]:
    if value is None:
        return None
    return _normalize_positive_int(value, name=name, default=0, minimum=0)


def _normalize_bool(value: Any, *, name: str, default: bool) -> bool:
    if value is None:
        return default
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in {"true", "yes", "on", "1"}:
        return True
    if text in {"false", "no", "off", "0"}:
        return False
    raise ConfigError(f"'{name}' must be true or false.")


def normalize_log_level(value: Any) -> str:
    if value is None:
        return "WARNING"
    level = str(value).strip().upper()
    if level == "WARN":
        level = "WARNING"
    if level not in _LOG_LEVELS:
        raise ConfigError(f"'logging.level' must be one of: {', '.join(_LOG_LEVELS)}.")
    return level


def _parse_limits(raw: Dict[str, Any], name: str) -> LimitsConfig:
    return LimitsConfig(
        name=str(raw.get("name", name)),
        enumeration_cap=_normalize_positive_int(
            raw.get("enumeration_cap"), name="enumeration_cap", default=DEFAULT_ENUMERATION_CAP
        ),
        subset_state_cap=_normalize_positive_int(
            raw.get("subset_state_cap"), name="subset_state_cap", default=DEFAULT_SUBSET_STATE_CAP
        ),
        pair_state_cap=_normalize_positive_int(
            raw.get("pair_state_cap"), name="pair_state_cap", default=DEFAULT_PAIR_STATE_CAP
        ),
    )


def _select_limits(raw: Dict[str, Any], profile: Optional[str]) -> LimitsConfig:
    if "profiles" in raw:
        profiles = raw.get("profiles")
        if not isinstance(profiles, dict) or not profiles:
            raise ConfigError("'profiles' must be a non-empty mapping of limit profiles.")
        if profile is None:
            default_profile = raw.get("default_profile")
            if default_profile:
                if default_profile not in profiles:
                    available = ", ".join(sorted(profiles))
                    raise ConfigError(
                        f"Default profile '{default_profile}' not found. Available profiles: {available}"
                    )
                chosen = str(default_profile)
            else:
                chosen = next(iter(profiles))
        else:
            if profile not in profiles:
                available = ", ".join(sorted(profiles))
                raise ConfigError(f"Profile '{profile}' not found. Available profiles: {available}")
            chosen = str(profile)
        profile_raw = profiles[chosen]
        if not isinstance(profile_raw, dict):
            raise ConfigError(f"Profile '{chosen}' must be a mapping of settings.")
        return _parse_limits(profile_raw, chosen)

    if profile is not None:
        raise ConfigError("Profile specified but configuration does not define any profiles.")
    return _parse_limits(_section(raw, "limits"), "default")


def parse_config(raw: Dict[str, Any], profile: Optional[str] = None) -> ToolkitConfig:
    if not isinstance(raw, dict):
        raise ConfigError("Configuration must be a mapping.")
    limits = _select_limits(raw, profile)

    closure_raw = _section(raw, "closure")
    closure = ClosureDefaults(
        max_len=_normalize_positive_int(closure_raw.get("max_len"), name="max_len", default=8, minimum=0),
        intermediate_cap_factor=_normalize_positive_int(
            closure_raw.get("intermediate_cap_factor"), name="intermediate_cap_factor", default=3
        ),
        max_iter=_normalize_optional_int(closure_raw.get("max_iter"), name="max_iter"),
        direction_mode=normalize_direction(closure_raw.get("direction_mode")),
    )

    construction_raw = _section(raw, "construction")
    construction = ConstructionConfig(
        star_pair_include_base=_normalize_bool(
            construction_raw.get("star_pair_include_base"), name="star_pair_include_base", default=True
        ),
        splice_include_base=_normalize_bool(
            construction_raw.get("splice_include_base"), name="splice_include_base", default=False
        ),
        default_max_len=_normalize_positive_int(
            construction_raw.get("default_max_len"), name="default_max_len", default=8, minimum=0
        ),
    )

    logging_raw = _section(raw, "logging")
    return ToolkitConfig(
        limits=limits,
        closure=closure,
        construction=construction,
        log_level=normalize_log_level(logging_raw.get("level")),
    )


def default_config() -> ToolkitConfig:
    return ToolkitConfig()


def load_config(path: str | pathlib.Path, profile: Optional[str] = None) -> ToolkitConfig:
    config_path = pathlib.Path(path)
    if not config_path.exists():
        raise ConfigError(f"Configuration file not found: {config_path}")

    with config_path.open("r", encoding="utf-8") as fh:
        try:
            raw = yaml.safe_load(fh) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"Configuration file {config_path} is not valid YAML: {exc}") from None

    return parse_config(raw, profile)

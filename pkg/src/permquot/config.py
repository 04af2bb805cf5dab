"""Campaign configuration read from a ``key = value`` text file."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .bounds import PRECISION_LADDER


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    theorem1_max_degree: int = 6
    theorem2_max_degree: int = 5
    induction_max_degree: int = 5
    lev_max_degree: int = 6
    lev_max_order: int = 0  # 0 means no cap
    residual_max_degree: int = 6
    residual_max_order: int = 360
    precision_ladder: tuple[int, ...] = PRECISION_LADDER
    report_digits: int = 30
    gamma_max_p: int = 50
    gamma_max_n: int = 60
    sylow_max_n: int = 12
    sylow_max_p: int = 11
    digits_max_n: int = 200
    digits_max_p: int = 50
    workers: int = 1
    allow_slow: bool = False
    slow_budget_seconds: int = 900

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _convert(name: str, raw: str, default):
    try:
        if isinstance(default, bool):
            low = raw.strip().lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, tuple):
            ladder = tuple(int(x) for x in raw.replace(",", " ").split())
            if not ladder or any(d <= 0 for d in ladder) or list(ladder) != sorted(ladder):
                raise ValueError(raw)
            return ladder
    except ValueError:
        raise ConfigError(f"bad value for {name}: {raw!r}") from None
    return raw


def parse_config(text: str) -> Config:
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    try:
        parser.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    defaults = {f.name: f.default for f in fields(Config)}
    values = {}
    for key, raw in parser["config"].items():
        name = key.replace("-", "_")
        if name not in defaults:
            raise ConfigError(f"unknown config key {key!r}")
        values[name] = _convert(name, raw, defaults[name])
    return Config(**values)


def load_config(path: str | Path | None) -> Config:
    if path is None:
        return Config()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None
    return parse_config(text)

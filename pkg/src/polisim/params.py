"""Model parameters and validation.

A ModelParams instance is the complete recipe for one simulated society:
the weighting heuristic and its saliences, the conformity switch, the
rejector fraction, and the world geometry (grid size, social reach,
population, topology).
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Any


class WeightMode(Enum):
    """How a listener weighs a statement it hears in a dialogue."""

    HOMOPHILY = "homophily"
    ATTITUDE_STRENGTH = "attitude-strength"
    COMBINED = "combined"
    JAGER_THRESHOLD = "jager-threshold"


class NetworkKind(Enum):
    """Link-structure generator used when a world is created."""

    SOCIAL_REACH = "social-reach"
    MOORE_LATTICE = "moore-lattice"


class ConfigError(ValueError):
    """Raised when a parameter set violates its documented ranges."""


@dataclass(frozen=True)
class ModelParams:
    """All salience/threshold parameters and mode switches for one run.

    Opinion-space parameters:
      s_h               salience of homophily (intolerance of dissimilarity)
      s_a               salience of attitude strength (closed-mindedness)
      s_c               salience of conformity (reliance on social support)
      rejector_fraction fraction of agents allowed negative weights
      weight_mode       which heuristic computes statement weights
      alpha, beta       acceptance/rejection thresholds (jager-threshold mode)
      conformity_enabled whether expression is pulled toward the network norm

    World geometry:
      grid_size         D; the world is a D x D grid
      social_reach      R; link radius for the social-reach network
      population        N; number of agents
      network_kind      social-reach placement or a full Moore lattice
      torus             wrap-around distance metric (False = bounded grid)
    """

    s_h: float = 1.0
    s_a: float = 0.0
    s_c: float = 0.0
    rejector_fraction: float = 0.0
    weight_mode: WeightMode = WeightMode.HOMOPHILY
    alpha: float = 1.0
    beta: float = 1.5
    conformity_enabled: bool = False
    grid_size: int = 200
    social_reach: float = 10.0
    population: int = 3000
    network_kind: NetworkKind = NetworkKind.SOCIAL_REACH
    torus: bool = True

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.s_h < 0 or self.s_a < 0 or self.s_c < 0:
            raise ConfigError("saliences s_h, s_a, s_c must be >= 0")
        if not 0.0 <= self.rejector_fraction <= 1.0:
            raise ConfigError("rejector_fraction must lie in [0, 1]")
        if self.weight_mode is WeightMode.JAGER_THRESHOLD and self.alpha > self.beta:
            raise ConfigError("alpha must be <= beta in jager-threshold mode")
        if self.grid_size < 1:
            raise ConfigError("grid_size must be a positive integer")
        if self.population < 1:
            raise ConfigError("population must be a positive integer")
        if self.social_reach <= 0:
            raise ConfigError("social_reach must be > 0")
        if self.network_kind is NetworkKind.SOCIAL_REACH:
            if self.population > self.grid_size ** 2:
                raise ConfigError(
                    f"population {self.population} exceeds the "
                    f"{self.grid_size}x{self.grid_size} grid capacity"
                )
        else:
            if self.grid_size < 3:
                raise ConfigError("moore-lattice requires grid_size >= 3")
            if self.population != self.grid_size ** 2:
                raise ConfigError(
                    "moore-lattice requires population == grid_size**2"
                )

    @property
    def conformity_active(self) -> bool:
        """True when expression actually deviates from the private opinion."""
        return self.conformity_enabled and self.s_c > 0.0

    def with_overrides(self, **overrides: Any) -> "ModelParams":
        return replace(self, **overrides)

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {}
        for f in fields(self):
            v = getattr(self, f.name)
            d[f.name] = v.value if isinstance(v, Enum) else v
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ModelParams":
        kwargs = dict(d)
        if "weight_mode" in kwargs:
            kwargs["weight_mode"] = WeightMode(kwargs["weight_mode"])
        if "network_kind" in kwargs:
            kwargs["network_kind"] = NetworkKind(kwargs["network_kind"])
        return cls(**kwargs)


# CLI-facing coercion table: field name -> parser for `--param key=value`.
_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in _BOOL_TRUE:
        return True
    if low in _BOOL_FALSE:
        return False
    raise ValueError(f"not a boolean: {text!r}")


_FIELD_PARSERS = {
    "s_h": float,
    "s_a": float,
    "s_c": float,
    "rejector_fraction": float,
    "weight_mode": WeightMode,
    "alpha": float,
    "beta": float,
    "conformity_enabled": _parse_bool,
    "grid_size": int,
    "social_reach": float,
    "population": int,
    "network_kind": NetworkKind,
    "torus": _parse_bool,
}


def coerce_param(name: str, raw: str) -> Any:
    """Parse one `--param name=value` override, raising ConfigError on junk."""
    if name not in _FIELD_PARSERS:
        raise ConfigError(f"unknown parameter: {name}")
    try:
        return _FIELD_PARSERS[name](raw)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc

"""Configuration loader for arctest."""

import copy
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ConfigDict(dict):
    """Dictionary that allows attribute access to nested values."""

    def __init__(self, data: Dict[str, Any]):
        """Initialize ConfigDict with nested dictionaries converted to ConfigDict.

        Args:
            data: Dictionary data to wrap
        """
        super().__init__()
        for key, value in data.items():
            self[key] = ConfigDict(value) if isinstance(value, dict) else value

    def __getattr__(self, name: str) -> Any:
        """Allow attribute access to dictionary keys.

        Raises:
            AttributeError: If key doesn't exist
        """
        if name in self:
            return self[name]
        raise AttributeError(f"'{type(self).__name__}' object has no attribute '{name}'")

    def __setattr__(self, name: str, value: Any) -> None:
        self[name] = value


class Config:
    """Limits, sampling and output settings shared by every check."""

    _defaults = {
        "limits": {
            "max_elements": 100_000,
            "max_vertices": 1_000_000,
            "max_cosets": 1_000_000,
            "max_s": 8,
            "max_diagonal_order": 60,
        },
        "sampling": {
            "seed": 1729,
            "random_cosets": 1000,
            "associativity_samples": 100_000,
            "exhaustive_associativity_max": 100,
        },
        "report": {
            "indent": 2,
        },
        "logging": {
            "level": "WARNING",
        },
    }

    def __init__(self, data: Dict[str, Any]):
        self._data = ConfigDict(data)

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "Config":
        """Load configuration from a YAML file merged over the defaults.

        Args:
            config_path: Path to a YAML file; missing files fall back to defaults

        Returns:
            Config instance

        Raises:
            yaml.YAMLError: If YAML is invalid
            ValueError: If config values fail validation
        """
        config_data = copy.deepcopy(cls._defaults)

        if config_path:
            path = Path(config_path)
            if path.exists():
                with open(path, "r") as f:
                    loaded_data = yaml.safe_load(f)
                if loaded_data:
                    if not isinstance(loaded_data, dict):
                        raise ValueError(f"config root must be a mapping, got {type(loaded_data).__name__}")
                    config_data = cls._deep_merge(config_data, loaded_data)

        cls._validate(config_data)
        return cls(config_data)

    @classmethod
    def get_defaults(cls) -> "Config":
        """Get default configuration."""
        return cls(copy.deepcopy(cls._defaults))

    def with_overrides(self, overrides: Mapping[str, Any]) -> "Config":
        """Return a copy with dotted keys replaced.

        ``None`` values are ignored so unset command-line flags can be passed through.

        Args:
            overrides: Mapping such as ``{"sampling.seed": 7}``

        Returns:
            New validated Config

        Raises:
            ValueError: If a key is unknown or a value fails validation
        """
        data = copy.deepcopy(self.to_dict())
        for dotted, value in overrides.items():
            if value is None:
                continue
            *parents, leaf = dotted.split(".")
            node = data
            for part in parents:
                if not isinstance(node.get(part), dict):
                    raise ValueError(f"unknown config key: {dotted}")
                node = node[part]
            if leaf not in node:
                raise ValueError(f"unknown config key: {dotted}")
            node[leaf] = value
        self._validate(data)
        return Config(data)

    def to_dict(self) -> Dict[str, Any]:
        """Plain nested dictionary copy of the settings."""
        return _plain(self._data)

    def get(self, path: str, default: Any = None) -> Any:
        """Get nested value using dot notation.

        Args:
            path: Dot-separated path to value (e.g., "limits.max_elements")
            default: Default value if path doesn't exist

        Returns:
            Value at path or default
        """
        current: Any = self._data
        for part in path.split("."):
            if isinstance(current, dict) and part in current:
                current = current[part]
            else:
                return default
        return current

    def __getattr__(self, name: str) -> Any:
        return getattr(self._data, name)

    @staticmethod
    def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
        """Deep merge two dictionaries.

        Args:
            base: Base dictionary
            override: Dictionary with values to override

        Returns:
            Merged dictionary
        """
        result = base.copy()
        for key, value in override.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = Config._deep_merge(result[key], value)
            else:
                result[key] = value
        return result

    @staticmethod
    def _validate(data: Dict[str, Any]) -> None:
        """Validate configuration data.

        Raises:
            ValueError: If validation fails
        """
        for section in ("limits", "sampling"):
            for name, value in data.get(section, {}).items():
                if isinstance(value, bool) or not isinstance(value, int):
                    raise ValueError(f"{section}.{name} must be an integer, got {value!r}")
                if name == "seed":
                    if value < 0:
                        raise ValueError(f"sampling.seed must be non-negative, got {value}")
                elif value <= 0:
                    raise ValueError(f"{section}.{name} must be positive, got {value}")

        indent = data.get("report", {}).get("indent")
        if indent is not None and (not isinstance(indent, int) or indent < 0):
            raise ValueError(f"report.indent must be a non-negative integer, got {indent!r}")

        level = data.get("logging", {}).get("level", "WARNING")
        if str(level).upper() not in LOG_LEVELS:
            raise ValueError(f"Invalid log level: {level}")


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    return value

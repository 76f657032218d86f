"""Configuration management: instance files, project file, environment."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from preproj.algebra.linalg import Field as GroundField
from preproj.cartan import CartanData, minimal_symmetrizer, validate_gcm
from preproj.errors import ConfigError

PROJECT_FILE = "preproj.yaml"


class SymmetrizerMultiple(BaseModel):
    """m times the minimal symmetrizer."""
    multiple: int = Field(ge=1)


class PrimeFieldSpec(BaseModel):
    prime: int


class InstanceConfig(BaseModel):
    """One Cartan datum with its build options.

    symmetrizer: "minimal", an explicit list, or {"multiple": m}
    orientation: "default" (pairs (i, j) with i < j) or 1-based pairs
    field: "rational" or {"prime": p}
    """
    name: str = "instance"
    cartan: list[list[int]]
    symmetrizer: Literal["minimal"] | list[int] | SymmetrizerMultiple = "minimal"
    orientation: Literal["default"] | list[tuple[int, int]] = "default"
    field: Literal["rational"] | PrimeFieldSpec = "rational"
    max_degree: int | None = Field(default=None, ge=2)
    cache: str | None = None

    def symmetrizer_values(self) -> list[int]:
        if isinstance(self.symmetrizer, list):
            return list(self.symmetrizer)
        minimal = minimal_symmetrizer(self.cartan, allow_disconnected=True)
        if isinstance(self.symmetrizer, SymmetrizerMultiple):
            return [self.symmetrizer.multiple * d for d in minimal]
        return minimal

    def resolve(self) -> CartanData:
        """Validated Cartan data (0-based orientation)."""
        orientation = None
        if isinstance(self.orientation, list):
            orientation = [(i - 1, j - 1) for i, j in self.orientation]
        return validate_gcm(self.cartan, self.symmetrizer_values(), orientation)

    def ground_field(self) -> GroundField:
        if isinstance(self.field, PrimeFieldSpec):
            try:
                return GroundField.prime(self.field.prime)
            except ValueError as e:
                raise ConfigError(str(e), field="field.prime") from e
        return GroundField.rational()

    def with_overrides(self, field_text: str | None = None, max_degree: int | None = None) -> InstanceConfig:
        data = self.model_dump()
        if field_text is not None:
            try:
                parsed = GroundField.parse(field_text)
            except ValueError as e:
                raise ConfigError(str(e), field="field") from e
            data["field"] = "rational" if parsed.characteristic == 0 else {"prime": parsed.characteristic}
        if max_degree is not None:
            data["max_degree"] = max_degree
        return InstanceConfig.model_validate(data)


class GlobalConfig(BaseModel):
    """Project-wide engine options."""
    jobs: int = Field(default=4, ge=1)
    iso_trials: int = Field(default=8, ge=1)
    seed: int = 0
    cache_dir: str = ".preproj-cache"
    max_degree: int | None = None


class ProjectConfig(BaseModel):
    """Root configuration model."""
    global_: GlobalConfig = Field(default_factory=GlobalConfig, alias="global")
    instances: dict[str, InstanceConfig] = Field(default_factory=dict)

    model_config = {"populate_by_name": True}

    def instance(self, name: str) -> InstanceConfig:
        try:
            return self.instances[name]
        except KeyError:
            known = ", ".join(sorted(self.instances))
            raise ConfigError(f"unknown instance '{name}' (known: {known})", field="instances") from None


class EngineSettings(BaseSettings):
    """PREPROJ_* environment overrides of the global section."""
    model_config = SettingsConfigDict(env_prefix="PREPROJ_")

    jobs: int | None = None
    iso_trials: int | None = None
    seed: int | None = None
    cache_dir: str | None = None

    def apply(self, config: GlobalConfig) -> GlobalConfig:
        overrides = {k: v for k, v in self.model_dump().items() if v is not None}
        return config.model_copy(update=overrides)


# Built-in desk instances, merged for names missing from the project file
DEFAULT_INSTANCES: dict[str, dict[str, Any]] = {
    "A1": {"name": "A1", "cartan": [[2]], "symmetrizer": [1]},
    "A1c2": {"name": "A1c2", "cartan": [[2]], "symmetrizer": [2]},
    "A1c3": {"name": "A1c3", "cartan": [[2]], "symmetrizer": [3]},
    "A2": {"name": "A2", "cartan": [[2, -1], [-1, 2]]},
    "A2x2": {"name": "A2x2", "cartan": [[2, -1], [-1, 2]], "symmetrizer": {"multiple": 2}},
    "B2": {"name": "B2", "cartan": [[2, -1], [-2, 2]]},
    "B2x2": {"name": "B2x2", "cartan": [[2, -1], [-2, 2]], "symmetrizer": {"multiple": 2}},
    "G2": {"name": "G2", "cartan": [[2, -1], [-3, 2]]},
    "A3": {"name": "A3", "cartan": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]},
    "B3": {"name": "B3", "cartan": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]},
}


def _yaml_error(path: Path, e: yaml.YAMLError) -> ConfigError:
    mark = getattr(e, "problem_mark", None)
    if mark is not None:
        return ConfigError(f"{path}:{mark.line + 1}: {getattr(e, 'problem', e)}", file=str(path), line=mark.line + 1)
    return ConfigError(f"{path}: {e}", file=str(path))


def _validation_error(path: Path | None, e: ValidationError, prefix: str = "") -> ConfigError:
    first = e.errors()[0]
    loc = ".".join(str(p) for p in first["loc"])
    where = f"{prefix}{loc}" if loc else prefix.rstrip(".")
    source = f"{path}: " if path else ""
    return ConfigError(f"{source}{where}: {first['msg']}", file=str(path) if path else None, field=where)


def _read_yaml(path: Path) -> Any:
    try:
        with open(path, encoding="utf-8") as f:
            return yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}", file=str(path)) from e
    except yaml.YAMLError as e:
        raise _yaml_error(path, e) from e


def find_config_file(start_dir: str | Path | None = None) -> Path | None:
    """Find preproj.yaml by walking up from start_dir."""
    current = (Path(start_dir) if start_dir is not None else Path.cwd()).resolve()
    while True:
        candidate = current / PROJECT_FILE
        if candidate.exists():
            return candidate
        parent = current.parent
        if parent == current:
            break
        current = parent

    home_config = Path.home() / ".config" / "preproj" / PROJECT_FILE
    if home_config.exists():
        return home_config

    return None


def load_config(config_path: str | Path | None = None, settings: EngineSettings | None = None) -> ProjectConfig:
    """Load the project file and apply environment overrides.

    Priority: specified path > walking up from cwd > ~/.config/preproj/preproj.yaml > defaults
    """
    path = Path(config_path) if config_path else find_config_file()
    raw: dict[str, Any] = {}
    if path and path.exists():
        raw = _read_yaml(path) or {}
    elif config_path:
        raise ConfigError(f"config file {config_path} does not exist", file=str(config_path))
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a mapping", file=str(path))

    instances_raw = dict(raw.get("instances") or {})
    for name, defaults in DEFAULT_INSTANCES.items():
        if name not in instances_raw:
            instances_raw[name] = defaults
    for name, data in instances_raw.items():
        if isinstance(data, dict):
            data.setdefault("name", name)
    raw["instances"] = instances_raw

    try:
        config = ProjectConfig.model_validate(raw)
    except ValidationError as e:
        raise _validation_error(path, e) from e

    settings = settings or EngineSettings()
    config.global_ = settings.apply(config.global_)
    return config


def load_instance(path: str | Path) -> InstanceConfig:
    """Read one instance file (YAML or JSON)."""
    path = Path(path)
    raw = _read_yaml(path)
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: instance file must be a mapping", file=str(path))
    raw.setdefault("name", path.stem)
    try:
        return InstanceConfig.model_validate(raw)
    except ValidationError as e:
        raise _validation_error(path, e) from e

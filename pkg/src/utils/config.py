"""Configuration loading and validation."""

import logging
import os
import re
from pathlib import Path
from typing import Any, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

logger = logging.getLogger(__name__)

GRAPH_KINDS = ("graph-variance", "graph-kesten-mckay", "nb-decay", "graph-hs-bound")
SPHERE_KINDS = ("sphere-variance", "sphere-kesten-mckay", "sphere-gap", "word-angles", "moment-check")
EXPERIMENT_KINDS = GRAPH_KINDS + SPHERE_KINDS

ExperimentKind = Literal[
    "graph-variance",
    "graph-kesten-mckay",
    "nb-decay",
    "graph-hs-bound",
    "sphere-variance",
    "sphere-kesten-mckay",
    "sphere-gap",
    "word-angles",
    "moment-check",
]


def expand_env_vars(config_dict: Any) -> Any:
    """
    Recursively expand environment variables in config dictionary.

    Supports ${VAR_NAME} syntax.

    Args:
        config_dict: Configuration dictionary or value

    Returns:
        Config with environment variables expanded
    """
    if isinstance(config_dict, dict):
        return {key: expand_env_vars(value) for key, value in config_dict.items()}
    elif isinstance(config_dict, list):
        return [expand_env_vars(item) for item in config_dict]
    elif isinstance(config_dict, str):
        pattern = re.compile(r"\$\{([^}]+)\}")

        def replace_var(match):
            return os.getenv(match.group(1), match.group(0))  # Keep original if not found

        return pattern.sub(replace_var, config_dict)
    else:
        return config_dict


def expand_sweep(value: Any) -> Any:
    """
    Turn a {start, stop, step} mapping into the inclusive list of values.

    Lists and scalars pass through unchanged.
    """
    if isinstance(value, dict):
        unknown = set(value) - {"start", "stop", "step"}
        if unknown:
            raise ValueError(f"Unknown sweep keys: {sorted(unknown)}")
        if "start" not in value or "stop" not in value:
            raise ValueError("Sweep ranges need 'start' and 'stop'")
        start, stop, step = int(value["start"]), int(value["stop"]), int(value.get("step", 1))
        if step < 1:
            raise ValueError(f"Sweep step must be positive, got {step}")
        return list(range(start, stop + 1, step))
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return [value]
    return value


class CoefficientConfig(BaseModel):
    """One spherical-harmonic coefficient a_{l,m}."""

    model_config = ConfigDict(extra="forbid")

    l: int = Field(..., ge=0, description="Degree")
    m: int = Field(..., description="Order, |m| <= l")
    re: float = Field(default=0.0, description="Real part")
    im: float = Field(default=0.0, description="Imaginary part")

    @model_validator(mode="after")
    def order_within_degree(self) -> "CoefficientConfig":
        if abs(self.m) > self.l:
            raise ValueError(f"|m| must not exceed l, got l={self.l}, m={self.m}")
        return self


class ObservableConfig(BaseModel):
    """Mean-zero observables used by variance experiments."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["random", "harmonic", "coefficients"] = Field(
        default="random", description="random (graphs or sphere), harmonic or coefficients (sphere)"
    )
    count: int = Field(default=1, ge=1, description="Random observables per sweep point")
    degree: int = Field(default=2, ge=1, description="Degree l of a harmonic observable")
    order: int = Field(default=0, ge=0, description="Order m of a harmonic observable")
    band: int = Field(default=4, ge=1, description="Top degree of random sphere observables")
    coefficients: List[CoefficientConfig] = Field(
        default_factory=list, description="Explicit expansion for kind=coefficients"
    )

    @model_validator(mode="after")
    def check_kind_fields(self) -> "ObservableConfig":
        if self.order > self.degree:
            raise ValueError(f"order must not exceed degree, got degree={self.degree}, order={self.order}")
        if self.kind == "coefficients":
            if not self.coefficients:
                raise ValueError("kind=coefficients needs a nonempty coefficients list")
            if any(c.l == 0 for c in self.coefficients):
                raise ValueError("observables must have mean zero: drop the l=0 coefficient")
        return self


class RotationConfig(BaseModel):
    """Rotation generators: a file, inline matrices, or neither for the default free pair."""

    model_config = ConfigDict(extra="forbid")

    file: Optional[str] = Field(default=None, description="Rotation file, one 9-entry row per matrix")
    matrices: Optional[List[List[Union[float, str]]]] = Field(
        default=None, description="Row-major 3x3 matrices, decimal or 'p/q' entries"
    )

    @model_validator(mode="after")
    def one_source(self) -> "RotationConfig":
        if self.file is not None and self.matrices is not None:
            raise ValueError("give either rotations.file or rotations.matrices, not both")
        for i, row in enumerate(self.matrices or []):
            if len(row) != 9:
                raise ValueError(f"rotation {i} has {len(row)} entries, expected 9")
        return self


class ExperimentConfig(BaseModel):
    """One parameter sweep."""

    model_config = ConfigDict(extra="forbid")

    kind: ExperimentKind = Field(..., description="Experiment kind")
    name: Optional[str] = Field(default=None, description="Output file stem, defaults to the kind")
    seed: int = Field(default=0, ge=0, description="Master seed")
    output_dir: str = Field(default="results", description="Directory for CSV and summary JSON")
    q: int = Field(default=2, description="Graph branching number; sphere kinds use 2N-1")
    k_values: List[int] = Field(default_factory=list, description="Vertex counts of random graphs")
    instances: int = Field(default=1, ge=1, description="Random graphs per vertex count")
    graph_files: List[str] = Field(default_factory=list, description="Graph files instead of random graphs")
    s_values: List[int] = Field(default_factory=list, description="Harmonic degrees")
    T_values: List[int] = Field(default_factory=lambda: [10], description="Averaging times")
    interval: Tuple[float, float] = Field(default=(-1.0, 1.0), description="Spectral window I")
    kmax: int = Field(default=20, ge=1, description="Largest non-backtracking power")
    bst_radius: int = Field(default=4, ge=1, description="Radius R of the short-loop fraction alpha_k")
    word_length: int = Field(default=10, ge=1, description="Longest reduced word")
    moments: List[int] = Field(default_factory=lambda: [2, 4], description="Trace moment orders")
    bins: int = Field(default=40, ge=2, description="Histogram bins")
    observable: ObservableConfig = Field(default_factory=ObservableConfig)
    rotations: RotationConfig = Field(default_factory=RotationConfig)

    @field_validator("k_values", "s_values", "T_values", "moments", mode="before")
    @classmethod
    def expand_ranges(cls, v: Any) -> Any:
        return expand_sweep(v)

    @field_validator("q")
    @classmethod
    def q_at_least_two(cls, v: int) -> int:
        if v < 2:
            raise ValueError("q must be ≥ 2")
        return v

    @field_validator("k_values", "T_values")
    @classmethod
    def positive_entries(cls, v: List[int]) -> List[int]:
        if any(x < 1 for x in v):
            raise ValueError(f"entries must be positive, got {v}")
        return v

    @field_validator("s_values", "moments")
    @classmethod
    def nonnegative_entries(cls, v: List[int]) -> List[int]:
        if any(x < 0 for x in v):
            raise ValueError(f"entries must be nonnegative, got {v}")
        return v

    @field_validator("interval")
    @classmethod
    def ordered_interval(cls, v: Tuple[float, float]) -> Tuple[float, float]:
        if v[0] > v[1]:
            raise ValueError(f"interval endpoints out of order: {list(v)}")
        return v

    @model_validator(mode="after")
    def ranges_for_kind(self) -> "ExperimentConfig":
        if self.kind in GRAPH_KINDS:
            if not self.k_values and not self.graph_files:
                raise ValueError(f"{self.kind} needs k_values or graph_files")
            if self.observable.kind != "random":
                raise ValueError("graph experiments only support random observables")
        elif self.kind != "word-angles" and not self.s_values:
            raise ValueError(f"{self.kind} needs s_values")
        if self.kind in ("graph-variance", "graph-hs-bound", "sphere-variance") and not self.T_values:
            raise ValueError(f"{self.kind} needs T_values")
        if self.kind == "moment-check" and not self.moments:
            raise ValueError("moment-check needs moments")
        return self

    @property
    def stem(self) -> str:
        return self.name or self.kind

    @property
    def is_sphere(self) -> bool:
        return self.kind in SPHERE_KINDS


class GlobalSettings(BaseModel):
    """Global application settings."""

    model_config = ConfigDict(extra="forbid")

    log_level: str = Field(default="INFO", description="Logging level")
    threads: Optional[int] = Field(default=None, ge=1, description="Worker pool size")
    dense_limit: int = Field(default=4096, ge=1, description="Largest dense eigensolve")
    word_budget: int = Field(default=1_000_000, ge=1, description="Largest reduced-word enumeration")
    orbit_radius_cap: int = Field(
        default=6, ge=0, description="Largest orbit radius used when certifying sphere points"
    )

    def worker_count(self) -> int:
        """ERGOLAB_THREADS, then settings.threads, then min(4, cpu count)."""
        env = os.getenv("ERGOLAB_THREADS")
        if env:
            try:
                value = int(env)
            except ValueError:
                logger.warning(f"Ignoring non-integer ERGOLAB_THREADS={env!r}")
            else:
                if value >= 1:
                    return value
                logger.warning(f"Ignoring non-positive ERGOLAB_THREADS={env!r}")
        if self.threads:
            return self.threads
        return min(4, os.cpu_count() or 1)


class AppConfig(BaseModel):
    """Main application configuration."""

    model_config = ConfigDict(extra="forbid")

    settings: GlobalSettings = Field(default_factory=GlobalSettings, description="Global settings")
    experiment: ExperimentConfig = Field(..., description="The sweep to run")


def read_config_dict(config_path: str | Path) -> dict:
    """
    Read a YAML config file with environment variables expanded.

    Raises:
        FileNotFoundError: If config file doesn't exist
        ValueError: If the file is not a YAML mapping
    """
    path = Path(config_path)
    if not path.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    logger.info(f"Loading configuration from {config_path}")
    with open(path, "r") as f:
        try:
            config_dict = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(f"Invalid configuration: {e}") from e

    if not isinstance(config_dict, dict):
        raise ValueError("Invalid configuration: top level must be a mapping")
    return expand_env_vars(config_dict)


def load_config(config_path: str | Path) -> AppConfig:
    """
    Load and validate configuration from YAML file.

    Args:
        config_path: Path to config YAML file

    Returns:
        Validated AppConfig object

    Raises:
        FileNotFoundError: If config file doesn't exist
        ValueError: If config is invalid
    """
    config_dict = read_config_dict(config_path)
    try:
        config = AppConfig(**config_dict)
    except Exception as e:
        raise ValueError(f"Invalid configuration: {e}")
    logger.info(f"Configuration loaded: {config.experiment.kind} -> {config.experiment.output_dir}")
    return config

"""Handler for `ergolab validate`: diagnostics for a config file."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Literal

from pydantic import ValidationError

from ..experiments.base import rotation_set_from_config
from ..sphere.words import GENERIC_POINT, certify_condition, total_word_count
from ..utils.config import AppConfig, SPHERE_KINDS, read_config_dict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Diagnostic:
    """A problem found in a config; only errors stop a run."""

    level: Literal["error", "warning"]
    message: str

    def __str__(self) -> str:
        return f"{self.level}: {self.message}"


def has_errors(diagnostics: List[Diagnostic]) -> bool:
    return any(d.level == "error" for d in diagnostics)


def _format_validation_error(e: ValidationError) -> List[Diagnostic]:
    diagnostics = []
    for err in e.errors():
        where = ".".join(str(part) for part in err["loc"])
        message = err["msg"].removeprefix("Value error, ")
        diagnostics.append(Diagnostic("error", f"{where}: {message}" if where else message))
    return diagnostics


def validate_config(config_path: str | Path) -> List[Diagnostic]:
    """
    Check a config file the way `run` would, without computing anything.

    Args:
        config_path: Path to the YAML config

    Returns:
        Diagnostics; no error-level entry means run accepts the config
    """
    try:
        config_dict = read_config_dict(config_path)
    except (FileNotFoundError, ValueError) as e:
        return [Diagnostic("error", str(e))]

    try:
        config = AppConfig(**config_dict)
    except ValidationError as e:
        return _format_validation_error(e)

    return check_config(config)


def check_config(config: AppConfig) -> List[Diagnostic]:
    """Checks that need more than the schema: files, budgets, sphere certification."""
    exp = config.experiment
    settings = config.settings
    diagnostics: List[Diagnostic] = []

    for path in exp.graph_files:
        if not Path(path).exists():
            diagnostics.append(Diagnostic("error", f"Graph file not found: {path}"))

    if exp.k_values and not exp.graph_files:
        d = exp.q + 1
        for k in exp.k_values:
            if (k * d) % 2:
                diagnostics.append(Diagnostic("error", f"k={k}: k*(q+1) must be even for q={exp.q}"))
            elif k <= d:
                diagnostics.append(Diagnostic("error", f"k={k}: need k > q+1 for a simple graph"))
            elif k > settings.dense_limit:
                diagnostics.append(
                    Diagnostic("error", f"k={k} exceeds the dense eigensolve limit {settings.dense_limit}")
                )

    if exp.kind not in SPHERE_KINDS:
        return diagnostics

    try:
        rots = rotation_set_from_config(exp.rotations)
    except FileNotFoundError as e:
        diagnostics.append(Diagnostic("error", str(e)))
        return diagnostics
    except ValueError as e:
        diagnostics.append(Diagnostic("error", f"rotations: {e}"))
        return diagnostics

    if exp.kind == "word-angles":
        words = total_word_count(rots.N, exp.word_length)
        if words > settings.word_budget:
            diagnostics.append(
                Diagnostic(
                    "error",
                    f"word_length={exp.word_length} needs {words} words, over the budget {settings.word_budget}",
                )
            )

    if exp.kind == "sphere-variance":
        radius_words = total_word_count(rots.N, settings.orbit_radius_cap)
        if radius_words > settings.word_budget:
            diagnostics.append(
                Diagnostic("error", f"orbit_radius_cap={settings.orbit_radius_cap} exceeds the word budget")
            )
            return diagnostics
        for T in sorted(set(exp.T_values)):
            for s in sorted(set(exp.s_values)):
                if s < 1:
                    continue
                report = certify_condition(
                    rots, GENERIC_POINT, T, s, cap=settings.orbit_radius_cap, budget=settings.word_budget
                )
                if not report.certified:
                    message = report.describe()
                    if report.capped:
                        message = (
                            f"orbit_radius_cap={settings.orbit_radius_cap} is below 4T={4 * T}, "
                            f"raise it to certify T={T}: {message}"
                        )
                    diagnostics.append(Diagnostic("warning", message))
                    break

    return diagnostics

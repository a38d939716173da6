"""Handler for `ergolab run`: execute a sweep and write its artifacts."""

import hashlib
import json
import logging
import subprocess
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from .. import __version__
from ..experiments import Experiment, PointResult, create_experiment
from ..utils.artifacts import format_csv, atomic_write_text, to_json
from ..utils.config import AppConfig, ExperimentConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FLAGGED = 1
EXIT_INVALID = 2


def config_hash(config: ExperimentConfig) -> str:
    """sha256 of the canonical JSON dump of the experiment config."""
    canonical = json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def describe_version() -> str:
    """`git describe --tags --always --dirty` of the source tree, else the package version."""
    try:
        result = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=10,
        )
    except (OSError, subprocess.SubprocessError):
        return __version__
    version = result.stdout.strip()
    return version if result.returncode == 0 and version else __version__


@dataclass
class RunRecord:
    """Provenance and outcome of one run."""

    config_hash: str
    version: str
    wall_time_s: float
    points: int
    flagged: int
    summary: Dict[str, Any] = field(default_factory=dict)
    csv_path: Optional[Path] = None
    summary_path: Optional[Path] = None

    @property
    def exit_code(self) -> int:
        return EXIT_FLAGGED if self.flagged else EXIT_OK

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config_hash": self.config_hash,
            "version": self.version,
            "wall_time_s": self.wall_time_s,
            "points": self.points,
            "flagged": self.flagged,
            "summary": self.summary,
        }


class RunHandler:
    """Runs the sweep points of one experiment under a bounded worker pool."""

    def __init__(self, config: AppConfig, workers: Optional[int] = None):
        """
        Initialize run handler.

        Args:
            config: Validated application configuration
            workers: Worker pool size; defaults to settings.worker_count()
        """
        self.config = config
        self.workers = workers or config.settings.worker_count()

    def _run_point(self, experiment: Experiment, point: Dict[str, int]) -> Tuple[PointResult, Optional[str]]:
        try:
            return experiment.run_point(point), None
        except Exception as e:
            logger.error(f"Sweep point {point} failed: {e}", exc_info=True)
            return PointResult(rows=[dict(point)]), f"{type(e).__name__}: {e}"

    def build_table(
        self, experiment: Experiment, outcomes: List[Tuple[Dict[str, int], PointResult, Optional[str]]]
    ) -> pd.DataFrame:
        """Rows of every point in sweep order with flagged and error columns appended."""
        rows = []
        for _, result, error in outcomes:
            for row in result.rows:
                rows.append({**row, "flagged": error is not None, "error": error or ""})
        present = {key for row in rows for key in row}
        columns = [c for c in experiment.columns if c in present]
        columns += sorted(present - set(columns) - {"flagged", "error"})
        columns += ["flagged", "error"]
        return pd.DataFrame(rows, columns=columns)

    def run(self, experiment: Optional[Experiment] = None) -> RunRecord:
        """
        Compute all sweep points, then write CSV and summary JSON atomically.

        Args:
            experiment: Experiment to run; built from the config when omitted

        Returns:
            RunRecord; its exit_code is 1 if any point was flagged
        """
        exp_config = self.config.experiment
        experiment = experiment or create_experiment(exp_config, self.config.settings)
        points = experiment.points()
        logger.info(f"Running {experiment.get_name()}: {len(points)} points on {self.workers} workers")

        start = time.perf_counter()
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            futures = [pool.submit(self._run_point, experiment, point) for point in points]
            # collected in sweep order, whatever the completion order
            outcomes = [(point, *future.result()) for point, future in zip(points, futures)]
        wall_time = time.perf_counter() - start

        frame = self.build_table(experiment, outcomes)
        flagged = sum(error is not None for _, _, error in outcomes)
        good = frame[~frame["flagged"]] if not frame.empty else frame
        metrics = [result.metrics for _, result, error in outcomes if error is None and result.metrics]
        try:
            summary = experiment.summarize(good.reset_index(drop=True), metrics)
        except Exception as e:
            logger.error(f"Summary for {experiment.get_name()} failed: {e}", exc_info=True)
            summary = {"error": f"{type(e).__name__}: {e}"}

        record = RunRecord(
            config_hash=config_hash(exp_config),
            version=describe_version(),
            wall_time_s=round(wall_time, 3),
            points=len(points),
            flagged=flagged,
            summary=summary,
        )

        out_dir = Path(exp_config.output_dir)
        record.csv_path = out_dir / f"{exp_config.stem}.csv"
        record.summary_path = out_dir / f"{exp_config.stem}.summary.json"
        atomic_write_text(record.csv_path, format_csv(frame))
        atomic_write_text(record.summary_path, to_json(record.to_dict()))
        logger.info(
            f"{experiment.get_name()} finished in {wall_time:.1f}s: {len(frame)} rows, "
            f"{flagged} flagged -> {record.csv_path}"
        )
        return record

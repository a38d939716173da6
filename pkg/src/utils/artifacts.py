"""Result artifacts: atomic file writes, CSV/JSON output and input parsers."""

import json
import logging
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.12g"


def atomic_write_bytes(path: Path, payload: bytes) -> None:
    """
    Write payload to path via a temporary file in the same directory and os.replace.

    A crash mid-write leaves at most a stray temporary file, never a
    truncated target.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(payload)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def atomic_write_text(path: Path, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


def format_csv(frame: pd.DataFrame) -> str:
    """Render a table as CSV with a header row and a fixed float format."""
    return frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def write_csv(frame: pd.DataFrame, path: Path) -> None:
    atomic_write_text(path, format_csv(frame))
    logger.info(f"Wrote {len(frame)} rows to {path}")


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_json_default) + "\n"


def write_json(payload: Dict[str, Any], path: Path) -> None:
    atomic_write_text(path, to_json(payload))
    logger.info(f"Wrote summary to {path}")


def parse_rational(token: str | float | int) -> float:
    """
    Parse a decimal or rational 'p/q' entry exactly, then convert to float.

    Raises:
        ValueError: If the token is not a number
    """
    if isinstance(token, (int, float)):
        return float(token)
    text = str(token).strip()
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not a decimal or rational number: {token!r}") from e


def parse_rotation_rows(rows: List[List[str | float]]) -> List[np.ndarray]:
    """Turn 9-entry row-major rows into 3x3 matrices."""
    matrices = []
    for i, row in enumerate(rows):
        if len(row) != 9:
            raise ValueError(f"Rotation {i} has {len(row)} entries, expected 9 (row-major 3x3)")
        matrices.append(np.array([parse_rational(tok) for tok in row]).reshape(3, 3))
    return matrices


def read_rotation_file(path: str | Path) -> List[np.ndarray]:
    """
    Read rotation matrices from a text file.

    One matrix per non-empty line as 9 whitespace- or comma-separated
    entries in row-major order; '#' starts a comment.

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If a line is malformed
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Rotation file not found: {path}")
    rows = []
    for line in path.read_text().splitlines():
        content = line.split("#", 1)[0].replace(",", " ").strip()
        if content:
            rows.append(content.split())
    return parse_rotation_rows(rows)


def read_eigenvalues(path: str | Path, column: str = "lambda") -> np.ndarray:
    """
    Load one numeric column of a CSV file.

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If the column is missing
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Eigenvalue file not found: {path}")
    frame = pd.read_csv(path)
    if column not in frame.columns:
        raise ValueError(f"Column {column!r} not found in {path}; columns: {list(frame.columns)}")
    return frame[column].dropna().to_numpy(dtype=float)

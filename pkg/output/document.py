import json
import logging
import math
import subprocess
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List

import pandas as pd

logger = logging.getLogger(__name__)

CSV = "csv"
JSON = "json"
FORMATS = (CSV, JSON)
FLOAT_FORMAT = "%.12g"
LABEL = "row"


def git_describe() -> str:
    """
    Returns `git describe --always --dirty` of the source tree, or "unknown".
    """
    try:
        completed = subprocess.run(["git", "describe", "--always", "--dirty"],
                                   cwd=Path(__file__).resolve().parent.parent,
                                   capture_output=True, text=True, timeout=10)
    except (OSError, subprocess.SubprocessError) as e:
        logger.debug(f"git describe failed: {e}")
        return "unknown"
    described = completed.stdout.strip()
    return described if completed.returncode == 0 and described else "unknown"


def _json_number(value):
    if isinstance(value, str):
        return value
    value = float(value)
    if not math.isfinite(value):
        return None
    # Same digits as the CSV rendering
    return float(FLOAT_FORMAT % value)


@dataclass
class OutputDocument:
    """
    A table of reals plus run metadata, rendered as CSV or JSON.

    Attributes:
        frame: The table; an optional string column named "row" holds row labels
        meta: Run metadata (order, grid, tolerances, build)
        fmt: "csv" or "json"
    """

    frame: pd.DataFrame
    meta: Dict[str, object] = field(default_factory=dict)
    fmt: str = CSV

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown output format {self.fmt!r}, expected one of {FORMATS}")

    @property
    def columns(self) -> List[str]:
        return [str(c) for c in self.frame.columns]

    def to_csv(self) -> str:
        """Header row, comma separated, LF line endings, missing values as empty fields."""
        frame = self.frame.replace([math.inf, -math.inf], math.nan)
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n", na_rep="")

    def to_json(self) -> str:
        """One object with `meta` and `rows`; missing or infinite values are null."""
        rows = [{str(name): _json_number(value) for name, value in record.items()}
                for record in self.frame.to_dict(orient="records")]
        return json.dumps({"meta": self.meta, "rows": rows}, indent=2, allow_nan=False) + "\n"

    def render(self) -> str:
        return self.to_csv() if self.fmt == CSV else self.to_json()


def labelled_frame(labels: List[str], columns: List[str], values) -> pd.DataFrame:
    """DataFrame with the row labels as a leading "row" column."""
    frame = pd.DataFrame(values, columns=columns)
    frame.insert(0, LABEL, labels)
    return frame

"""Deterministic tabular reports for experiment runs.

Rows are self-describing: each carries the experiment id, an echo of the
parameters that produced it, the metric name, the value, a pass/fail/info
status, and the tolerance used.  Wall time is isolated in the final column so
that byte-identical output modulo that column certifies determinism.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import ContractViolationError

__all__ = ["COLUMNS", "ReportRow", "format_number", "write_report", "failure_count"]

COLUMNS = ("id", "params", "metric", "value", "status", "tolerance", "wall_time_s")
_STATUSES = ("pass", "fail", "info")


def format_number(x: float) -> str:
    """Shortest decimal string that round-trips the float exactly."""
    return repr(float(x))


@dataclass
class ReportRow:
    """One experiment result; ``value`` and ``tolerance`` are preformatted."""

    id: str
    params: str
    metric: str
    value: str
    status: str = "info"
    tolerance: str = ""
    wall_time_s: float = 0.0

    def __post_init__(self) -> None:
        if self.status not in _STATUSES:
            raise ContractViolationError(f"status must be one of {_STATUSES}")

    def as_mapping(self) -> dict[str, str]:
        return {
            "id": self.id,
            "params": self.params,
            "metric": self.metric,
            "value": self.value,
            "status": self.status,
            "tolerance": self.tolerance,
            "wall_time_s": format_number(self.wall_time_s),
        }


def _sorted_rows(rows: Iterable[ReportRow]) -> list[ReportRow]:
    return sorted(rows, key=lambda row: row.id)


def failure_count(rows: Iterable[ReportRow]) -> int:
    return sum(1 for row in rows if row.status == "fail")


def write_report(
    rows: Iterable[ReportRow], out_dir: str | Path, name: str, fmt: str = "csv"
) -> Path:
    """Write rows (sorted by id) as ``<name>.<fmt>`` under ``out_dir``."""
    if fmt not in ("csv", "json"):
        raise ContractViolationError("format must be 'csv' or 'json'")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{name}.{fmt}"
    ordered = _sorted_rows(rows)
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(COLUMNS)
            for row in ordered:
                mapping = row.as_mapping()
                writer.writerow([mapping[c] for c in COLUMNS])
    else:
        with open(path, "w") as fh:
            json.dump([row.as_mapping() for row in ordered], fh, indent=2)
            fh.write("\n")
    return path

import csv
import logging
from pathlib import Path
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict, TypeAdapter

from models import VerificationReport

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("metric", "space", "value", "tolerance", "pass")


class MetricRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    metric: str
    space: str
    value: float
    tolerance: Optional[float] = None
    passed: Optional[bool] = None

    def as_csv(self) -> list[str]:
        return [
            self.metric,
            self.space,
            repr(self.value),
            "" if self.tolerance is None else repr(self.tolerance),
            "" if self.passed is None else str(self.passed).lower(),
        ]


def _prepare(path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(exist_ok=True, parents=True)
    return path


def write_metrics_csv(path: Path, rows: Sequence[MetricRow]) -> Path:
    path = _prepare(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.as_csv())
    logger.info(f"Report with {len(rows)} rows written to {path}")
    return path


def format_rows(rows: Sequence[MetricRow]) -> str:
    """Таблица для stdout в том же порядке колонок, что и CSV"""
    lines = ["\t".join(CSV_COLUMNS)]
    lines.extend("\t".join(row.as_csv()) for row in rows)
    return "\n".join(lines)


def write_trace_csv(path: Path, trace: Sequence[float]) -> Path:
    path = _prepare(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(("step", "objective"))
        for step, value in enumerate(trace):
            writer.writerow((step, repr(float(value))))
    return path


_REPORTS = TypeAdapter(list[VerificationReport])


def write_json_report(path: Path, reports: Sequence[VerificationReport]) -> Path:
    path = _prepare(path)
    path.write_bytes(_REPORTS.dump_json(list(reports), indent=2) + b"\n")
    logger.info(f"Verification report with {len(reports)} checks written to {path}")
    return path


def read_json_report(path: Path) -> list[VerificationReport]:
    return _REPORTS.validate_json(Path(path).read_bytes())

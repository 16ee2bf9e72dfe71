"""
Run Comparison
==============

Tabulates several summaries against the first one, cell by cell.

WHY THIS FILE EXISTS:
- Near vs far priority, GAQ vs baseline and random runs are judged on the
  same three numbers per scenario cell
- Deltas are always taken against the first report so a table reads as
  "what changed relative to the reference run"

COMPARISON RULES:
1. At least two reports
2. Every report covers exactly the same (ratio, total) cells
3. One output row per (report, cell); the reference report's deltas are 0
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from backend.core.exceptions import ReportMismatchError
from evaluation.summary import SummaryRow

logger = logging.getLogger(__name__)

Report = Sequence[SummaryRow]

COMPARISON_COLUMNS = (
    "ratio",
    "total",
    "label",
    "reward",
    "mean_rv_speed",
    "step_cap_probability",
    "delta_reward",
    "delta_mean_rv_speed",
    "delta_step_cap_probability",
)


@dataclass(frozen=True)
class MetricComparison:
    """One report's metrics on one cell, next to the reference report."""

    ratio: float
    total: int
    label: str
    reward: float
    mean_rv_speed: float
    step_cap_probability: float
    delta_reward: float
    delta_mean_rv_speed: float
    delta_step_cap_probability: float


def _index(report: Report, position: int) -> Dict[Tuple[float, int], SummaryRow]:
    rows: Dict[Tuple[float, int], SummaryRow] = {}
    for row in report:
        if row.cell in rows:
            raise ReportMismatchError(f"report {position} lists cell {row.cell} twice")
        rows[row.cell] = row
    return rows


def compare(reports: Sequence[Report]) -> List[MetricComparison]:
    """
    Pairwise deltas of every report against reports[0].

    Rows are ordered by cell, then by report position.

    Raises:
        ReportMismatchError: fewer than two reports, or the cell grids differ
    """
    if len(reports) < 2:
        raise ReportMismatchError(f"compare needs at least 2 reports, got {len(reports)}")

    indexed = [_index(report, position) for position, report in enumerate(reports)]
    cells = sorted(indexed[0])
    for position, rows in enumerate(indexed[1:], start=1):
        if sorted(rows) != cells:
            missing = sorted(set(cells) - set(rows))
            extra = sorted(set(rows) - set(cells))
            raise ReportMismatchError(
                f"report {position} grid differs from report 0 (missing={missing} extra={extra})"
            )

    table: List[MetricComparison] = []
    for cell in cells:
        reference = indexed[0][cell]
        for rows in indexed:
            row = rows[cell]
            table.append(
                MetricComparison(
                    ratio=row.ratio,
                    total=row.total,
                    label=row.label,
                    reward=row.reward,
                    mean_rv_speed=row.mean_rv_speed,
                    step_cap_probability=row.step_cap_probability,
                    delta_reward=row.reward - reference.reward,
                    delta_mean_rv_speed=row.mean_rv_speed - reference.mean_rv_speed,
                    delta_step_cap_probability=row.step_cap_probability - reference.step_cap_probability,
                )
            )

    logger.info(f"Compared reports count={len(reports)} cells={len(cells)} rows={len(table)}")
    return table

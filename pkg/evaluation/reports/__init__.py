"""
Run Reports
===========

CSV and JSON files written into a run directory, and the reader compare needs.

WHY THIS FILE EXISTS:
- CSV is the contract with plotting and analysis downstream
- One writer per file keeps column order fixed across runs
- Data files carry no timestamps; (config, seed) determines every value
  except the wall_time_s column of episodes.csv

RUN DIRECTORY:
    <out>/
    ├── config.json      # experiment echo + input fingerprints
    ├── episodes.csv     # one row per episode
    ├── summary.csv      # one row per (policy, scenario cell)
    ├── router.csv       # per-vehicle route decisions (optional)
    ├── checkpoint.npz   # training only
    └── metrics.prom     # Prometheus text exposition
"""

import csv
import json
import logging
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

from backend.core.config import settings
from backend.core.exceptions import ReportMismatchError
from backend.schemas.experiment import ExperimentConfig
from evaluation.comparison import COMPARISON_COLUMNS, MetricComparison
from evaluation.summary import SummaryRow
from observability.metrics import render_metrics
from orchestration.langgraph.environment import DIAGNOSTIC_COLUMNS
from orchestration.langgraph.workflow import EpisodeResult

logger = logging.getLogger(__name__)

EPISODE_COLUMNS = (
    "episode",
    "mode",
    "reward",
    "steps",
    "hit_cap",
    "mean_rv_speed",
    "mean_loss",
    "epsilon",
    "wall_time_s",
)

SUMMARY_COLUMNS = (
    "label",
    "ratio",
    "total",
    "episodes",
    "reward",
    "mean_rv_speed",
    "step_cap_probability",
)


def _write_csv(path: Path, columns: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({column: row.get(column, "") for column in columns})
    logger.debug(f"Wrote report path={path}")
    return path


def episode_row(result: EpisodeResult) -> Dict[str, Any]:
    return {
        "episode": result.episode,
        "mode": result.mode.value,
        "reward": result.reward,
        "steps": result.steps,
        "hit_cap": int(result.hit_cap),
        "mean_rv_speed": result.mean_rv_speed,
        "mean_loss": "" if result.mean_loss is None else result.mean_loss,
        "epsilon": result.epsilon,
        "wall_time_s": round(result.wall_time, 4),
    }


def write_episodes(path: Path, results: Sequence[EpisodeResult]) -> Path:
    return _write_csv(path, EPISODE_COLUMNS, (episode_row(r) for r in results))


def write_summary(path: Path, rows: Sequence[SummaryRow]) -> Path:
    return _write_csv(path, SUMMARY_COLUMNS, (asdict(row) for row in rows))


def read_summary(path: Path) -> List[SummaryRow]:
    """
    Load a summary.csv written by write_summary().

    Raises:
        ReportMismatchError: missing columns or unparsable values
    """
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [column for column in SUMMARY_COLUMNS if column not in header]
        if missing:
            raise ReportMismatchError(f"{path} is not a summary file (missing columns {missing})")
        try:
            return [
                SummaryRow(
                    label=record["label"],
                    ratio=float(record["ratio"]),
                    total=int(record["total"]),
                    episodes=int(record["episodes"]),
                    reward=float(record["reward"]),
                    mean_rv_speed=float(record["mean_rv_speed"]),
                    step_cap_probability=float(record["step_cap_probability"]),
                )
                for record in reader
            ]
        except ValueError as e:
            raise ReportMismatchError(f"{path}: {e}") from e


def write_router_diagnostics(path: Path, rows: Sequence[Mapping[str, Any]]) -> Path:
    return _write_csv(path, DIAGNOSTIC_COLUMNS, rows)


def write_comparison(path: Path, table: Sequence[MetricComparison]) -> Path:
    return _write_csv(path, COMPARISON_COLUMNS, (asdict(row) for row in table))


def write_config(path: Path, config: ExperimentConfig, fingerprint: Mapping[str, Any]) -> Path:
    """config.json: the validated experiment as run, plus input fingerprints."""
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {
        "experiment": config.model_dump(mode="json"),
        "inputs": dict(fingerprint),
    }
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def write_metrics(path: Path) -> Optional[Path]:
    """metrics.prom, unless GAQ_ENABLE_METRICS is off."""
    if not settings.enable_metrics:
        return None
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_metrics(), encoding="utf-8")
    return path

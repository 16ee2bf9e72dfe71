"""
Episode Metrics Summaries
=========================

Turns a sequence of EpisodeResult rows into the numbers reported per run.

WHY THIS FILE EXISTS:
- Training curves, test cells and baselines share one summary shape
- The step-cap probability curve has a single definition
- compare() works on SummaryRow values, wherever they came from

METRICS:
- reward series, one value per episode
- rolling step-cap probability: fraction of cap-hitting episodes in the
  trailing window (shorter at the start of the run)
- mean RV speed per episode
- post-convergence means taken from the cutoff episode onward
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from orchestration.langgraph.workflow import EpisodeResult


@dataclass(frozen=True)
class SummaryRow:
    """One line of summary.csv: one policy on one scenario cell."""

    label: str
    ratio: float
    total: int
    episodes: int
    reward: float
    mean_rv_speed: float
    step_cap_probability: float

    @property
    def cell(self) -> Tuple[float, int]:
        return (self.ratio, self.total)


@dataclass(frozen=True)
class MetricsSummary:
    """Per-episode series plus post-convergence aggregates for one cell."""

    label: str
    ratio: float
    total: int
    cutoff: int
    rewards: List[float]
    hit_cap: List[bool]
    mean_rv_speeds: List[float]
    step_cap_probability: List[float]

    def __post_init__(self) -> None:
        n = len(self.rewards)
        if not (len(self.hit_cap) == len(self.mean_rv_speeds) == len(self.step_cap_probability) == n):
            raise ValueError("summary series must all have one entry per episode")

    @property
    def episodes(self) -> int:
        return len(self.rewards)

    @property
    def post_convergence_reward(self) -> float:
        return post_convergence_mean(self.rewards, self.cutoff)

    @property
    def post_convergence_speed(self) -> float:
        return post_convergence_mean(self.mean_rv_speeds, self.cutoff)

    @property
    def post_convergence_step_cap(self) -> float:
        return post_convergence_mean([float(h) for h in self.hit_cap], self.cutoff)

    def row(self) -> SummaryRow:
        return SummaryRow(
            label=self.label,
            ratio=self.ratio,
            total=self.total,
            episodes=self.episodes,
            reward=self.post_convergence_reward,
            mean_rv_speed=self.post_convergence_speed,
            step_cap_probability=self.post_convergence_step_cap,
        )


def rolling_step_cap_probability(hit_cap: Sequence[bool], window: int) -> List[float]:
    """
    Fraction of cap-hitting episodes among the last `window` episodes.

    Entry e covers episodes max(0, e - window + 1) .. e.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if not hit_cap:
        return []
    sums = np.concatenate([[0], np.cumsum(np.asarray(hit_cap, dtype=np.int64))])
    end = np.arange(1, len(hit_cap) + 1)
    start = np.maximum(0, end - window)
    trailing = sums[end] - sums[start]
    return [float(t) / float(c) for t, c in zip(trailing.tolist(), (end - start).tolist())]


def post_convergence_mean(values: Sequence[float], cutoff: int) -> float:
    """
    Mean of values[cutoff:].

    Falls back to the mean of every value when the run is shorter than the
    cutoff, and to 0.0 for an empty run.
    """
    if not values:
        return 0.0
    tail = values[cutoff:] if cutoff < len(values) else values
    return float(np.mean(tail))


def summarize(
    label: str,
    results: Sequence[EpisodeResult],
    ratio: float,
    total: int,
    cutoff: int,
    window: int,
) -> MetricsSummary:
    hit_cap = [r.hit_cap for r in results]
    return MetricsSummary(
        label=label,
        ratio=ratio,
        total=total,
        cutoff=cutoff,
        rewards=[r.reward for r in results],
        hit_cap=hit_cap,
        mean_rv_speeds=[r.mean_rv_speed for r in results],
        step_cap_probability=rolling_step_cap_probability(hit_cap, window),
    )

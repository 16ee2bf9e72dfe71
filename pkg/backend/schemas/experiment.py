"""
Experiment Schemas
==================

Pydantic models for the experiment file passed with ``--config`` and for the
Q-learning hyperparameters it embeds.

WHY THIS FILE EXISTS:
- Every run is fully described by one validated object (echoed to config.json)
- CLI flags override fields through ``model_copy(update=...)`` and re-validation
- Defaults follow the training protocol: 800 episodes, 200 warm-up, batch 32,
  Adam at 1e-4

MODELS:
- AgentConfig: replay, target network, exploration and optimizer settings
- ExperimentConfig: files, protocol, router options, scenario grid, outputs
"""

from enum import Enum
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class RunMode(str, Enum):
    """Which protocol the experiment runs."""

    TRAIN = "train"
    TEST = "test"
    BASELINE = "baseline"
    RANDOM = "random"


class EpisodeMode(str, Enum):
    """How the agent acts inside one episode."""

    WARMUP = "warmup"
    TRAIN = "train"
    EVAL = "eval"

    @property
    def stores_transitions(self) -> bool:
        return self != EpisodeMode.EVAL


class PriorityMode(str, Enum):
    """Near favours RVs close to their destination, far the opposite."""

    NEAR = "near"
    FAR = "far"


class AgentConfig(BaseModel):
    """
    Hyperparameters of the graph-attention Q-learner.

    discount and learning_rate are distinct quantities even though the
    training protocol writes both with the same symbol.
    """

    model_config = ConfigDict(extra="forbid")

    discount: float = Field(default=0.99, ge=0.0, lt=1.0)
    learning_rate: float = Field(default=1e-4, gt=0.0)
    adam_beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    adam_beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    adam_epsilon: float = Field(default=1e-8, gt=0.0)
    batch_size: int = Field(default=32, ge=1)
    warmup_steps: int = Field(default=0, ge=0)
    target_update_every: int = Field(default=100, ge=1)
    epsilon_start: float = Field(default=1.0, ge=0.0, le=1.0)
    epsilon_end: float = Field(default=0.05, ge=0.0, le=1.0)
    epsilon_decay_episodes: int = Field(default=300, ge=1)
    buffer_capacity: int = Field(default=10_000, ge=1)
    train_frequency: Literal["control_step", "episode"] = "control_step"
    leaky_slope: float = Field(default=0.2, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def _epsilon_ordered(self) -> "AgentConfig":
        if self.epsilon_end > self.epsilon_start:
            raise ValueError("epsilon_end must not exceed epsilon_start")
        return self


class ExperimentConfig(BaseModel):
    """Complete description of one train / test / baseline run."""

    model_config = ConfigDict(extra="forbid")

    # Inputs
    network: str
    scenario: str
    mode: RunMode = RunMode.TRAIN

    # Protocol
    episodes: int = Field(default=800, ge=0)
    warmup_episodes: int = Field(default=200, ge=0)
    eval_episodes: int = Field(default=10, ge=1)
    agent: AgentConfig = Field(default_factory=AgentConfig)

    # Router
    priority: PriorityMode = PriorityMode.NEAR
    high_priority_count: int = Field(default=10, ge=0)
    k_paths: int = Field(default=3, ge=1)
    popularity_objective: Literal["min", "max"] = "min"
    entropy_normalization: Literal["share", "road_count"] = "share"

    # Fleet and test grid
    rerouting_ratio: float = 0.5
    total_vehicles: int = Field(default=100, ge=0)
    test_ratios: List[float] = Field(default_factory=lambda: [0.1, 0.3, 0.5, 0.7, 0.9])
    test_totals: List[int] = Field(default_factory=lambda: [100])

    # Metrics
    convergence_episode: Optional[int] = Field(default=None, ge=0)
    step_cap_window: int = Field(default=50, ge=1)

    # Outputs
    router_diagnostics: bool = False
    seed: Optional[int] = Field(default=None, ge=0)
    output_dir: Optional[str] = None

    @field_validator("rerouting_ratio")
    @classmethod
    def _ratio_open_interval(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise ValueError("rerouting_ratio must lie in (0, 1)")
        return value

    @field_validator("test_ratios")
    @classmethod
    def _grid_ratios(cls, values: List[float]) -> List[float]:
        if not values:
            raise ValueError("test_ratios must not be empty")
        for value in values:
            if not 0.0 < value < 1.0:
                raise ValueError(f"test ratio {value} outside (0, 1)")
        return values

    @field_validator("test_totals")
    @classmethod
    def _grid_totals(cls, values: List[int]) -> List[int]:
        if not values or any(v < 0 for v in values):
            raise ValueError("test_totals must be non-empty and non-negative")
        return values

    @model_validator(mode="after")
    def _warmup_within_episodes(self) -> "ExperimentConfig":
        if self.warmup_episodes > self.episodes:
            raise ValueError("warmup_episodes must not exceed episodes")
        return self

    @property
    def convergence_cutoff(self) -> int:
        """Episode index from which post-convergence means are taken."""
        if self.convergence_episode is not None:
            return self.convergence_episode
        return self.episodes // 2

    def resolve_seed(self, scenario_seed: int) -> int:
        """The experiment seed wins; the scenario file's seed is the fallback."""
        return self.seed if self.seed is not None else scenario_seed

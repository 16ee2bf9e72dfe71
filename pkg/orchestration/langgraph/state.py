"""
LangGraph State Definitions
===========================

TypedDict state for the episode workflow.

WHY THIS FILE EXISTS:
- LangGraph requires explicit state typing
- State shape is the contract between all nodes

THE STATE IS THE SOURCE OF TRUTH:
- All nodes read from state and return the keys they change
- The simulator itself lives in the environment, not in the state; the state
  carries only what flows between nodes within a control step
"""

from typing import List, Optional, TypedDict

import numpy as np

from agents.base import PolicyDecision
from backend.schemas.experiment import EpisodeMode


class EpisodeState(TypedDict):
    """
    State for one episode of control steps.

    IMMUTABLE FIELDS (set at start):
    - episode: Episode index
    - mode: warmup, train or eval
    - rng: Policy-side random generator for this episode

    MUTABLE FIELDS (updated by nodes):
    - step: Control steps completed
    - features: Current node feature matrix
    - decision: Road weights and actions for the current step
    - prev_speed: Mean RV speed after the previous step
    - total_reward, step_speeds, losses, transitions: episode accumulators
    - done: every RV has arrived
    """

    # === Immutable (set at episode start) ===
    episode: int
    mode: EpisodeMode
    rng: np.random.Generator

    # === Control-step state ===
    step: int
    features: np.ndarray
    decision: Optional[PolicyDecision]
    prev_speed: float
    done: bool

    # === Accumulators ===
    total_reward: float
    step_speeds: List[float]
    losses: List[float]
    transitions: int
    kept_routes: int


def create_initial_state(
    episode: int, mode: EpisodeMode, rng: np.random.Generator
) -> EpisodeState:
    """Empty accumulators; features are filled by the observe node."""
    return EpisodeState(
        episode=episode,
        mode=mode,
        rng=rng,
        step=0,
        features=np.zeros((0, 0)),
        decision=None,
        prev_speed=0.0,
        done=False,
        total_reward=0.0,
        step_speeds=[],
        losses=[],
        transitions=0,
        kept_routes=0,
    )

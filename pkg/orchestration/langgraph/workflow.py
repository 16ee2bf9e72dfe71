"""
Main Workflow Definition
========================

Builds the LangGraph workflow for one episode of control steps.

WHY THIS FILE EXISTS:
- Single source of truth for the control-step loop
- Compiles the graph once per (environment, policy) pair
- Provides run_episode(), the entry point every runner uses

THE WORKFLOW (State Machine):

    ┌──────────────────────────────────────────────────────────────┐
    │                                                              │
    │   ┌─────────┐                                                │
    │   │  START  │                                                │
    │   └────┬────┘                                                │
    │        │                                                     │
    │   ┌────▼────┐                                                │
    │   │ OBSERVE │  ← Region feature matrix at episode start      │
    │   └────┬────┘                                                │
    │        │                                                     │
    │   ┌────▼────┐                                                │
    │   │ DECIDE  │ ◄──────────────────────────────┐               │
    │   └────┬────┘  ← Road index per region       │               │
    │        │                                     │               │
    │   ┌────▼────┐                                │               │
    │   │ REROUTE │  ← k-shortest paths + entropy  │               │
    │   └────┬────┘                                │               │
    │        │                                     │               │
    │   ┌────▼────┐                                │               │
    │   │ ADVANCE │  ← One control step of ticks   │               │
    │   └────┬────┘                                │               │
    │        │                                     │               │
    │   ┌────▼────┐                                │               │
    │   │ REWARD  │  ← Reward, next state, replay  │               │
    │   └────┬────┘                                │               │
    │        │                                     │               │
    │   ┌────▼────┐                                │               │
    │   │  LEARN  │  ← One train step (train mode) │               │
    │   └────┬────┘                                │               │
    │        │                                     │               │
    │        ▼                                     │               │
    │   [route_after_learn]                        │               │
    │        │                                     │               │
    │        ├── "continue" ───────────────────────┘               │
    │        │                                                     │
    │        └── "end" ──────► [END]                               │
    │                                                              │
    └──────────────────────────────────────────────────────────────┘

DESIGN DECISIONS:
- Strictly sequential; the only branch is the loop-or-stop decision
- The episode ends when every RV has arrived or the step cap is reached
- No checkpointer: an episode is short and always runs to completion
"""

import logging
import time
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from langgraph.graph import END, StateGraph

from agents.base import RoutingPolicy
from backend.schemas.experiment import EpisodeMode
from observability.metrics import episode_reward, episodes
from observability.tracing import span
from orchestration.langgraph.edges import make_route_after_learn
from orchestration.langgraph.environment import RoutingEnvironment
from orchestration.langgraph.nodes import make_nodes
from orchestration.langgraph.state import EpisodeState, create_initial_state

logger = logging.getLogger(__name__)

# decide, reroute, advance, reward, learn
NODES_PER_STEP = 5


@dataclass(frozen=True)
class EpisodeResult:
    """One row of the episode log."""

    episode: int
    mode: EpisodeMode
    reward: float
    steps: int
    hit_cap: bool
    mean_rv_speed: float
    mean_loss: Optional[float]
    epsilon: float
    transitions: int
    wall_time: float


def build_episode_workflow(env: RoutingEnvironment, policy: RoutingPolicy) -> Any:
    """
    Build and compile the episode workflow for one environment and policy.

    Returns:
        Compiled StateGraph ready for invoke().
    """
    nodes = make_nodes(env, policy)
    workflow = StateGraph(EpisodeState)

    # === ADD NODES ===

    workflow.add_node("observe", nodes["observe"])
    # WHY: The first decision needs the state before any vehicle moved.

    workflow.add_node("decide", nodes["decide"])
    workflow.add_node("reroute", nodes["reroute"])
    workflow.add_node("advance", nodes["advance"])

    workflow.add_node("reward", nodes["reward"])
    # WHY: The next state is observed here and reused by the following decide.

    workflow.add_node("learn", nodes["learn"])

    # === SET ENTRY POINT ===
    workflow.set_entry_point("observe")

    # === ADD EDGES ===
    workflow.add_edge("observe", "decide")
    workflow.add_edge("decide", "reroute")
    workflow.add_edge("reroute", "advance")
    workflow.add_edge("advance", "reward")
    workflow.add_edge("reward", "learn")

    workflow.add_conditional_edges(
        "learn",
        make_route_after_learn(env.max_control_steps),
        {
            "continue": "decide",  # RVs still travelling, cap not reached
            "end": END,            # all RVs arrived or step cap hit
        },
    )

    return workflow.compile()


def run_episode(
    workflow: Any,
    env: RoutingEnvironment,
    policy: RoutingPolicy,
    episode: int,
    mode: EpisodeMode,
    seed: int,
) -> EpisodeResult:
    """
    Reset the environment and run one episode to completion.

    The simulator and the policy draw from separate generators derived from
    (seed, episode), so route choices never shift the demand stream.
    """
    sim_rng = np.random.default_rng([seed, episode, 0])
    policy_rng = np.random.default_rng([seed, episode, 1])

    start = time.perf_counter()
    with span("episode", episode=episode, mode=mode.value, policy=policy.name):
        env.reset(sim_rng, episode=episode)
        initial = create_initial_state(episode, mode, policy_rng)
        limit = (NODES_PER_STEP + 1) * env.max_control_steps + 10
        final = workflow.invoke(initial, {"recursion_limit": limit})

        losses = list(final["losses"])
        closing_loss = policy.end_episode(mode, policy_rng)
        if closing_loss is not None:
            losses.append(closing_loss)
    wall_time = time.perf_counter() - start

    speeds = final["step_speeds"]
    result = EpisodeResult(
        episode=episode,
        mode=mode,
        reward=float(final["total_reward"]),
        steps=int(final["step"]),
        hit_cap=not final["done"],
        mean_rv_speed=float(np.mean(speeds)) if speeds else 0.0,
        mean_loss=float(np.mean(losses)) if losses else None,
        epsilon=policy.epsilon_for(mode, episode),
        transitions=int(final["transitions"]),
        wall_time=wall_time,
    )

    episode_reward.labels(mode=mode.value).set(result.reward)
    episodes.labels(mode=mode.value, termination="cap" if result.hit_cap else "done").inc()
    logger.info(
        f"Episode finished episode={episode} mode={mode.value} policy={policy.name} "
        f"reward={result.reward:.2f} steps={result.steps} hit_cap={result.hit_cap} "
        f"epsilon={result.epsilon:.3f} kept_routes={final['kept_routes']} "
        f"wall_time={wall_time:.2f}s"
    )
    return result

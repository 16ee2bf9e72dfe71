"""
Workflow Node Definitions
=========================

Node functions for the episode workflow.

WHY THIS FILE EXISTS:
- Each node wraps one environment or policy call
- Nodes return only the state keys they change
- Separates graph structure from simulation and learning logic

NODES IN THE WORKFLOW:
1. observe: feature matrix at episode start
2. decide: policy picks road weights
3. reroute: router assigns routes to active RVs
4. advance: simulator runs one control step
5. reward: reward, next state, transition storage
6. learn: one training update when the policy learns

Nodes are built by make_nodes() so the environment and policy are bound
through closures instead of living in the state.
"""

import logging
from typing import Any, Callable, Dict

from agents.base import PolicyContext, RoutingPolicy, Transition
from observability.tracing import span
from orchestration.langgraph.environment import RoutingEnvironment
from orchestration.langgraph.state import EpisodeState

logger = logging.getLogger(__name__)

Node = Callable[[EpisodeState], Dict[str, Any]]


def make_nodes(env: RoutingEnvironment, policy: RoutingPolicy) -> Dict[str, Node]:
    """Node callables bound to one environment and one policy."""

    def observe_node(state: EpisodeState) -> Dict[str, Any]:
        with span("observe", episode=state["episode"]):
            return {"features": env.observe()}

    def decide_node(state: EpisodeState) -> Dict[str, Any]:
        with span("decide", episode=state["episode"], step=state["step"]):
            context = PolicyContext(
                features=state["features"],
                adjacency=env.adjacency,
                occupancy=env.occupancy(),
                mode=state["mode"],
                rng=state["rng"],
                episode=state["episode"],
            )
            return {"decision": policy.run(context)}

    def reroute_node(state: EpisodeState) -> Dict[str, Any]:
        with span("reroute", episode=state["episode"], step=state["step"]):
            decision = state["decision"]
            assert decision is not None
            result = env.reroute(decision.weights)
            return {"kept_routes": state["kept_routes"] + len(result.kept)}

    def advance_node(state: EpisodeState) -> Dict[str, Any]:
        with span("advance", episode=state["episode"], step=state["step"]):
            env.advance()
            return {"step": state["step"] + 1, "done": env.done()}

    def reward_node(state: EpisodeState) -> Dict[str, Any]:
        with span("reward", episode=state["episode"], step=state["step"]):
            record = env.reward(state["prev_speed"])
            next_features = env.observe()
            decision = state["decision"]
            stored = 0
            if state["mode"].stores_transitions and decision is not None and decision.actions is not None:
                policy.remember(
                    Transition(
                        features=state["features"],
                        adjacency=env.adjacency,
                        actions=decision.actions,
                        reward=record.r_t,
                        next_features=next_features,
                        next_adjacency=env.adjacency,
                        done=state["done"],
                    )
                )
                stored = 1
            logger.debug(
                f"Step reward episode={state['episode']} step={state['step']} "
                f"reward={record.r_t:.3f} rv_speed={record.mean_rv_speed:.3f} "
                f"delta={record.delta_speed:.3f}"
            )
            return {
                "features": next_features,
                "prev_speed": record.mean_rv_speed,
                "total_reward": state["total_reward"] + record.r_t,
                "step_speeds": state["step_speeds"] + [record.mean_rv_speed],
                "transitions": state["transitions"] + stored,
            }

    def learn_node(state: EpisodeState) -> Dict[str, Any]:
        with span("learn", episode=state["episode"], step=state["step"]):
            loss = policy.learn(state["mode"], state["rng"])
            if loss is None:
                return {"losses": state["losses"]}
            return {"losses": state["losses"] + [loss]}

    return {
        "observe": observe_node,
        "decide": decide_node,
        "reroute": reroute_node,
        "advance": advance_node,
        "reward": reward_node,
        "learn": learn_node,
    }

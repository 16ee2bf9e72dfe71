"""
Conditional Edge Functions
==========================

Routing logic for the episode workflow.

ROUTING DECISIONS:
- After learn: start another control step, or end the episode when every RV
  has arrived or the step cap is reached
"""

from typing import Callable

from orchestration.langgraph.state import EpisodeState


def make_route_after_learn(max_control_steps: int) -> Callable[[EpisodeState], str]:
    """
    Build the routing function for a given step cap.

    Options:
    - "continue": run another control step
    - "end": episode finished (done or capped)
    """

    def route_after_learn(state: EpisodeState) -> str:
        if state["done"]:
            return "end"
        if state["step"] >= max_control_steps:
            return "end"
        return "continue"

    return route_after_learn

"""
LangGraph Package
=================

Contains the LangGraph episode workflow.

Modules:
- environment.py: RoutingEnvironment binding simulator, partition and router
- state.py: EpisodeState definition
- nodes.py: Node factories (observe, decide, reroute, advance, reward, learn)
- edges.py: Conditional routing after each control step
- workflow.py: build_episode_workflow, run_episode
"""

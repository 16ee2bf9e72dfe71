"""
Schemas Package
===============

Pydantic models for the files the engine reads and writes.

WHY THIS PACKAGE EXISTS:
- Defines contracts between users and components
- Validates input files at the boundary (unknown keys rejected)
- Serializes configuration echoes consistently

Schema categories:
- network.py: Network file (junctions, roads, fog regions)
- scenario.py: Scenario file (inflows, timing, reward and balance terms)
- experiment.py: Experiment file (protocol, agent, router, test grid)
"""

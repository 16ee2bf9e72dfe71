"""
Services Package
================

Computation behind every control step.

Services:
- network/: road graph, fog partition, grid generator, network file I/O
- simulator/: mesoscopic simulator with seeded demand
- state_reward.py: per-region node features and the step reward
- neural/: graph-attention Q network, Adam and checkpoints
- routing/: road weights, Yen's K shortest paths, entropy-balanced assignment
"""

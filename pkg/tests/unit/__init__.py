"""
Unit Tests Package
==================

Unit tests for individual components.

Tests are organized by package:
- test_network.py: network files, fog partition, grid generator
- test_simulator.py: link model, spawning, conservation
- test_state_reward.py: node features and reward
- test_neural.py: layers, gradients, Adam, checkpoints
- test_agents.py: replay, action selection, TD learning, baselines
- test_routing.py: weights, kSP, priority, entropy, assignment
- test_workflow.py: episode workflow
- test_evaluation.py: summaries, comparison, reports, experiment files
"""

"""
Evaluation Package
==================

Experiment protocols, metrics summaries and run reports.

PACKAGE STRUCTURE:
    /evaluation
    ├── __init__.py        # This file - overview
    ├── summary.py         # MetricsSummary, SummaryRow, rolling step-cap probability
    ├── comparison.py      # compare(): per-cell deltas against a reference run
    ├── versioning.py      # Input fingerprints for config.json
    ├── runners/           # run_training, run_test, run_baseline, run_random
    │   └── __init__.py
    └── reports/           # CSV / JSON writers and the summary reader
        └── __init__.py

USAGE:
    from evaluation.runners import load_experiment, run_training, run_test

    config = load_experiment("data/experiments/desk.json")
    outcome = run_training(config, "runs/desk-train")
    cells = run_test(config, outcome.checkpoint, "runs/desk-test")

Submodules are imported explicitly; this file re-exports nothing.
"""

__version__ = "0.1.0"

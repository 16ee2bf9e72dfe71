"""
Tests Package
=============

Test suite for the rerouting engine.

Test categories:
- unit/: one module or service at a time, small hand-built networks
- integration/: CLI runs end to end, desk-scale evaluation (slow)

TESTING STRATEGY:
1. Unit tests check hand-computed values and invariants
2. Integration tests drive backend.cli.main() against temporary files
3. Slow evaluation tests assert directions, never absolute numbers

RUN TESTS:
    pytest
    pytest tests/unit
    pytest -m "slow and evaluation"
"""

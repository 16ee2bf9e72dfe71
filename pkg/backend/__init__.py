"""
Backend Package
===============

Core of the fog-region rerouting engine.

This package provides:
- The road network model, fog partition and grid generator
- The mesoscopic traffic simulator
- Region features, rewards and the numpy Q network
- Road weighting, K-shortest-path search and entropy-balanced assignment
- The gaq-reroute command line (cli.py)
"""

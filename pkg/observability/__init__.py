"""
Observability Package
=====================

Metrics and tracing for simulation, routing and training runs.

WHY THIS PACKAGE EXISTS:
- Training runs last long enough that counters beat log grepping
- Spans show how an episode's time splits across control-step nodes

Modules:
- metrics.py: Prometheus counters, gauges and histograms on a private registry
- tracing.py: OpenTelemetry spans (no-op without an SDK)

Logging itself is configured in backend/core/logging.py.
"""

"""
Distributed Tracing
===================

OpenTelemetry spans around episodes and control-step nodes.

TRACING STRATEGY:
1. One span per episode
2. One child span per workflow node (observe, decide, reroute, ...)

Only the OpenTelemetry API is a hard dependency. Without an SDK and exporter
configured (the ``observability`` extra) every span is a no-op.
"""

from contextlib import contextmanager
from typing import Iterator, Union

from opentelemetry import trace

from backend.core.config import settings

tracer = trace.get_tracer("gaq_reroute")

AttributeValue = Union[str, bool, int, float]


@contextmanager
def span(name: str, **attributes: AttributeValue) -> Iterator[None]:
    """Open a span when tracing is enabled, otherwise do nothing."""
    if not settings.enable_tracing:
        yield
        return
    with tracer.start_as_current_span(name) as current:
        for key, value in attributes.items():
            current.set_attribute(key, value)
        yield

"""
Metrics Collection
==================

Prometheus metrics for simulation, routing and training.

WHY THIS FILE EXISTS:
- Long training runs need counters that survive log rotation
- Per-run exposition (metrics.prom) makes runs comparable after the fact
- Policy latency shows where wall time goes (Yen's search vs the Q network)

METRIC TYPES:
- Counter: spawned/arrived vehicles, reroutes, episodes
- Gauge: exploration rate, last episode reward
- Histogram: training loss, policy decision latency

All metrics live on a private CollectorRegistry so importing this module
never touches the process-global registry.
"""

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, generate_latest

REGISTRY = CollectorRegistry()

# === Simulation ===

vehicles_spawned = Counter(
    "gaq_vehicles_spawned_total",
    "Vehicles inserted into the network",
    ["vehicle_class"],
    registry=REGISTRY,
)

vehicles_arrived = Counter(
    "gaq_vehicles_arrived_total",
    "Vehicles that reached their destination",
    ["vehicle_class"],
    registry=REGISTRY,
)

# === Routing ===

reroutes = Counter(
    "gaq_reroutes_total",
    "Route assignments per outcome",
    ["outcome"],
    registry=REGISTRY,
)

policy_latency = Histogram(
    "gaq_policy_decision_seconds",
    "Time for a policy to produce road weights",
    ["policy"],
    buckets=[0.0005, 0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0],
    registry=REGISTRY,
)

# === Training ===

training_loss = Histogram(
    "gaq_training_loss",
    "Mean squared TD error per train step",
    buckets=[1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6],
    registry=REGISTRY,
)

exploration_epsilon = Gauge(
    "gaq_exploration_epsilon",
    "Current exploration rate",
    registry=REGISTRY,
)

episode_reward = Gauge(
    "gaq_episode_reward",
    "Total reward of the last finished episode",
    ["mode"],
    registry=REGISTRY,
)

episodes = Counter(
    "gaq_episodes_total",
    "Finished episodes per mode and termination",
    ["mode", "termination"],
    registry=REGISTRY,
)


def render_metrics() -> str:
    """Text exposition of every metric in the private registry."""
    return generate_latest(REGISTRY).decode("utf-8")

"""
Q-Learning Steps
================

Action selection, TD targets, one gradient step and target synchronisation
for per-region factorized Q-learning.

Every fog region is one node of the graph and one 5-way decision. All nodes
share the network parameters and the scalar reward:

    y_i  = r + discount * max_a Q_target(s')[i, a]      (r alone when done)
    loss = mean over batch of mean over nodes of (y_i - Q(s)[i, a_i])^2
"""

from typing import List, Sequence

import numpy as np

from agents.base import Transition
from agents.gaq.replay import ReplayBuffer
from backend.core.exceptions import InsufficientReplayError
from backend.schemas.experiment import AgentConfig
from backend.services.network.model import FogAdjacency
from backend.services.neural.adam import AdamState, adam_step
from backend.services.neural.model import (
    ACTION_COUNT,
    QModel,
    model_backward,
    model_forward,
)


def select_actions(
    model: QModel,
    features: np.ndarray,
    adjacency: FogAdjacency,
    epsilon: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Per-node epsilon-greedy actions; greedy ties go to the lowest action index.

    The exploration draws are taken for every node whatever epsilon is, so
    the random stream advances identically in every mode.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    if epsilon == 1.0:
        n = features.shape[0]
        rng.random(n)
        return rng.integers(0, ACTION_COUNT, size=n)
    return epsilon_greedy(model_forward(model, features, adjacency), epsilon, rng)


def epsilon_greedy(q_values: np.ndarray, epsilon: float, rng: np.random.Generator) -> np.ndarray:
    """Per-row epsilon-greedy choice over a (N, actions) value matrix."""
    n, width = q_values.shape
    explore = rng.random(n) < epsilon
    random_actions = rng.integers(0, width, size=n)
    return np.where(explore, random_actions, q_values.argmax(axis=1))


def td_targets(
    batch: Sequence[Transition], target_model: QModel, discount: float
) -> np.ndarray:
    """(batch, N) targets, the shared reward broadcast to every node."""
    if not batch:
        raise ValueError("td_targets needs a non-empty batch")
    rows: List[np.ndarray] = []
    for transition in batch:
        n = transition.features.shape[0]
        if transition.done:
            rows.append(np.full(n, transition.reward, dtype=np.float64))
            continue
        next_q = model_forward(target_model, transition.next_features, transition.next_adjacency)
        rows.append(transition.reward + discount * next_q.max(axis=1))
    return np.stack(rows)


def train_step(
    model: QModel,
    target_model: QModel,
    buffer: ReplayBuffer,
    adam: AdamState,
    config: AgentConfig,
    rng: np.random.Generator,
) -> float:
    """
    Sample a batch, regress taken-action Q values onto TD targets, apply Adam.

    Raises:
        InsufficientReplayError: buffer smaller than the batch size
    """
    if len(buffer) < config.batch_size:
        raise InsufficientReplayError(size=len(buffer), batch_size=config.batch_size)
    batch = buffer.sample(config.batch_size, rng)
    targets = td_targets(batch, target_model, config.discount)

    grads = {name: np.zeros_like(value) for name, value in model.params.items()}
    total = 0.0
    b = len(batch)
    for transition, y in zip(batch, targets):
        n = transition.features.shape[0]
        nodes = np.arange(n)
        q = model_forward(model, transition.features, transition.adjacency)
        diff = q[nodes, transition.actions] - y
        total += float(np.mean(diff * diff))

        upstream = np.zeros_like(q)
        upstream[nodes, transition.actions] = 2.0 * diff / (b * n)
        for name, grad in model_backward(
            model, transition.features, transition.adjacency, upstream
        ).items():
            grads[name] += grad

    adam_step(
        model.params,
        grads,
        adam,
        lr=config.learning_rate,
        beta1=config.adam_beta1,
        beta2=config.adam_beta2,
        epsilon=config.adam_epsilon,
    )
    return total / b


def update_target(
    model: QModel, target_model: QModel, step: int, target_update_every: int
) -> bool:
    """Hard-copy online parameters into the target when step is a multiple of the period."""
    if step % target_update_every != 0:
        return False
    target_model.load_from(model)
    return True

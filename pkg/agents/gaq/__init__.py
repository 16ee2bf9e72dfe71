"""
GAQ Agent
=========

Graph-attention Q-learning over fog regions.

RESPONSIBILITY:
Every control step the agent must:
1. Read the region feature matrix and the fog adjacency
2. Pick one road index in {0..4} per region (epsilon-greedy, factorized)
3. Turn the indexes into road weights for the router
4. Store the transition and, in training, take one gradient step

EXPLORATION:
- warm-up episodes act uniformly at random (epsilon = 1)
- training episodes anneal epsilon linearly from epsilon_start to
  epsilon_end over epsilon_decay_episodes, counted from the first
  post-warm-up episode
- evaluation episodes act greedily (epsilon = 0) and store nothing
"""

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np

from agents.base import PolicyContext, PolicyDecision, RoutingPolicy, Transition
from agents.gaq.learning import select_actions, td_targets, train_step, update_target
from agents.gaq.replay import ReplayBuffer
from backend.schemas.experiment import AgentConfig, EpisodeMode
from backend.schemas.scenario import BalanceTerms
from backend.services.network.model import FogPartition, RoadNetwork
from backend.services.neural.adam import AdamState
from backend.services.neural.checkpoint import load_checkpoint, save_checkpoint
from backend.services.neural.model import QModel, init_model
from backend.services.routing.weights import road_weights
from observability.metrics import exploration_epsilon, training_loss

logger = logging.getLogger(__name__)

__all__ = [
    "GAQAgent",
    "ReplayBuffer",
    "select_actions",
    "td_targets",
    "train_step",
    "update_target",
]


class GAQAgent(RoutingPolicy):
    """
    Online network, target network, replay buffer and Adam state.

    The same instance runs warm-up, training and evaluation episodes; the
    episode mode in the PolicyContext decides how it acts.
    """

    learns = True

    def __init__(
        self,
        network: RoadNetwork,
        partition: FogPartition,
        config: AgentConfig,
        balance: BalanceTerms,
        model_rng: np.random.Generator,
        warmup_episodes: int = 0,
        model: Optional[QModel] = None,
        adam: Optional[AdamState] = None,
    ):
        super().__init__(name="gaq", network=network, partition=partition)
        self.config = config
        self.balance = balance
        self.warmup_episodes = warmup_episodes
        self.model = model or init_model(model_rng, leaky_slope=config.leaky_slope)
        self.target = self.model.copy()
        self.adam = adam or AdamState.zeros_like(self.model.params)
        self.buffer = ReplayBuffer(config.buffer_capacity)
        self.train_steps = 0

    # === Acting ===

    def epsilon_for(self, mode: EpisodeMode, episode: int) -> float:
        if mode == EpisodeMode.WARMUP:
            return 1.0
        if mode == EpisodeMode.EVAL:
            return 0.0
        progress = min(1.0, max(0, episode - self.warmup_episodes) / self.config.epsilon_decay_episodes)
        start, end = self.config.epsilon_start, self.config.epsilon_end
        return start + (end - start) * progress

    def decide(self, context: PolicyContext) -> PolicyDecision:
        epsilon = self.epsilon_for(context.mode, context.episode)
        actions = select_actions(
            self.model, context.features, context.adjacency, epsilon, context.rng
        )
        weights = road_weights(
            actions,
            context.occupancy,
            self.partition,
            t1=self.balance.index,
            t2=self.balance.density,
        )
        exploration_epsilon.set(epsilon)
        return PolicyDecision(weights=weights, actions=actions, epsilon=epsilon)

    # === Learning ===

    def remember(self, transition: Transition) -> None:
        self.buffer.append(transition)

    def _train_once(self, rng: np.random.Generator) -> Optional[float]:
        ready = max(self.config.batch_size, self.config.warmup_steps)
        if len(self.buffer) < ready:
            return None
        loss = train_step(self.model, self.target, self.buffer, self.adam, self.config, rng)
        self.train_steps += 1
        if update_target(self.model, self.target, self.train_steps, self.config.target_update_every):
            logger.debug(f"Target network synced train_step={self.train_steps}")
        training_loss.observe(loss)
        return loss

    def learn(self, mode: EpisodeMode, rng: np.random.Generator) -> Optional[float]:
        if mode != EpisodeMode.TRAIN or self.config.train_frequency != "control_step":
            return None
        return self._train_once(rng)

    def end_episode(self, mode: EpisodeMode, rng: np.random.Generator) -> Optional[float]:
        if mode != EpisodeMode.TRAIN or self.config.train_frequency != "episode":
            return None
        return self._train_once(rng)

    # === Persistence ===

    def save(self, path: Union[str, Path]) -> Path:
        return save_checkpoint(path, self.model, self.adam)

    @classmethod
    def from_checkpoint(
        cls,
        path: Union[str, Path],
        network: RoadNetwork,
        partition: FogPartition,
        config: AgentConfig,
        balance: BalanceTerms,
    ) -> "GAQAgent":
        """
        Raises:
            CheckpointError: unreadable checkpoint or architecture mismatch
        """
        expected = init_model(np.random.default_rng(0), leaky_slope=config.leaky_slope)
        model, adam = load_checkpoint(path, expected=expected)
        return cls(
            network,
            partition,
            config,
            balance,
            model_rng=np.random.default_rng(0),
            model=model,
            adam=adam,
        )

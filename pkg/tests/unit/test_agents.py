"""
Agent Unit Tests
================

Unit tests for the routing policies and their Q-learning machinery.

These tests verify:
- Replay buffer FIFO eviction and sampling
- Epsilon-greedy choice, ties and exploration statistics
- TD targets and the loss of one training step
- Target synchronisation and the exploration schedule
- Baseline policies emit weights for every road
"""

import numpy as np
import pytest

from agents.base import PolicyContext, Transition
from agents.baseline import DensityBaselinePolicy, RandomIndexPolicy
from agents.gaq import GAQAgent
from agents.gaq.learning import (
    epsilon_greedy,
    select_actions,
    td_targets,
    train_step,
    update_target,
)
from agents.gaq.replay import ReplayBuffer
from backend.core.exceptions import InsufficientReplayError
from backend.schemas.experiment import AgentConfig, EpisodeMode
from backend.schemas.scenario import BalanceTerms
from backend.services.network.fog import fog_adjacency
from backend.services.network.model import FogAdjacency
from backend.services.neural.adam import AdamState
from backend.services.neural.model import ACTION_COUNT, ENCODER_LAYERS, QNET_LAYERS, init_model
from backend.services.routing.weights import WEIGHT_FLOOR


def passthrough_model():
    """
    Model whose every action value equals the node's first feature.

    Only unit weights on hidden unit 0 are non-zero; with a self-only adjacency
    the attention row is [1] and non-negative features pass every ReLU.
    """
    model = init_model(np.random.default_rng(0))
    for value in model.params.values():
        value[...] = 0.0
    for name in ENCODER_LAYERS + ("gat",) + QNET_LAYERS:
        model.params[f"{name}.weight"][0, 0] = 1.0
    model.params["head.weight"][0, :] = 1.0
    return model


def self_loops(n: int) -> FogAdjacency:
    return FogAdjacency(matrix=np.eye(n, dtype=np.int8))


def make_transition(
    reward: float,
    first_feature=(2.0, 3.0),
    next_first_feature=None,
    actions=None,
    done: bool = False,
) -> Transition:
    n = len(first_feature)
    if next_first_feature is None:
        next_first_feature = first_feature
    features = np.column_stack([np.asarray(first_feature, dtype=float), np.zeros(n)])
    next_features = np.column_stack([np.asarray(next_first_feature, dtype=float), np.zeros(n)])
    return Transition(
        features=features,
        adjacency=self_loops(n),
        actions=np.zeros(n, dtype=np.int64) if actions is None else np.asarray(actions),
        reward=reward,
        next_features=next_features,
        next_adjacency=self_loops(n),
        done=done,
    )


class TestReplayBuffer:
    """Tests for experience replay."""

    def test_fifo_eviction(self):
        buffer = ReplayBuffer(capacity=3)
        for i in range(5):
            buffer.append(make_transition(reward=float(i)))

        assert len(buffer) == 3
        assert [t.reward for t in buffer] == [2.0, 3.0, 4.0]

    def test_sample_without_replacement(self, rng):
        buffer = ReplayBuffer(capacity=10)
        for i in range(10):
            buffer.append(make_transition(reward=float(i)))

        batch = buffer.sample(10, rng)

        assert sorted(t.reward for t in batch) == [float(i) for i in range(10)]

    def test_sample_is_uniform(self, rng):
        buffer = ReplayBuffer(capacity=100)
        for i in range(100):
            buffer.append(make_transition(reward=float(i)))

        counts = np.zeros(100)
        for _ in range(10_000):
            for transition in buffer.sample(10, rng):
                counts[int(transition.reward)] += 1

        # 1000 expected per slot, standard deviation about 31
        assert counts.min() > 850 and counts.max() < 1150

    def test_insufficient(self, rng):
        buffer = ReplayBuffer(capacity=10)
        buffer.append(make_transition(reward=0.0))

        with pytest.raises(InsufficientReplayError) as exc:
            buffer.sample(2, rng)

        assert exc.value.error_code == "INSUFFICIENT_REPLAY"

    def test_capacity_must_be_positive(self):
        with pytest.raises(ValueError):
            ReplayBuffer(capacity=0)


class TestActionSelection:
    """Tests for epsilon-greedy action choice."""

    def test_greedy_tie_goes_to_lowest_index(self, rng):
        q = np.array([[0.0, 3.0, 3.0, 1.0, 0.0]])

        assert epsilon_greedy(q, 0.0, rng).tolist() == [1]

    def test_shift_invariant(self):
        q = np.random.default_rng(3).normal(size=(6, ACTION_COUNT))

        a = epsilon_greedy(q, 0.3, np.random.default_rng(9))
        b = epsilon_greedy(q + 17.3, 0.3, np.random.default_rng(9))

        np.testing.assert_array_equal(a, b)

    def test_full_exploration_is_uniform(self, rng):
        q = np.zeros((1000, ACTION_COUNT))
        q[:, 2] = 1.0

        draws = np.concatenate([epsilon_greedy(q, 1.0, rng) for _ in range(100)])
        counts = np.bincount(draws, minlength=ACTION_COUNT)
        expected = len(draws) / ACTION_COUNT
        chi_square = float(np.sum((counts - expected) ** 2 / expected))

        # 4 degrees of freedom, p = 0.001
        assert chi_square < 18.47

    def test_select_actions_greedy(self):
        model = passthrough_model()
        features = np.array([[2.0, 0.0], [3.0, 0.0]])

        actions = select_actions(model, features, self_loops(2), 0.0, np.random.default_rng(0))

        # all five values tie, so every node takes index 0
        assert actions.tolist() == [0, 0]

    def test_full_exploration_stream(self):
        model = passthrough_model()
        features = np.zeros((4, 2))

        actions = select_actions(model, features, self_loops(4), 1.0, np.random.default_rng(5))
        replay = np.random.default_rng(5)
        replay.random(4)

        np.testing.assert_array_equal(actions, replay.integers(0, ACTION_COUNT, size=4))

    @pytest.mark.parametrize("epsilon", [-0.1, 1.5])
    def test_epsilon_range(self, rng, epsilon):
        with pytest.raises(ValueError):
            select_actions(passthrough_model(), np.zeros((1, 2)), self_loops(1), epsilon, rng)


class TestTDTargets:
    """Tests for the bootstrapped regression targets."""

    def test_bootstrapped(self):
        batch = [make_transition(reward=1.0, next_first_feature=(2.0, 3.0))]

        targets = td_targets(batch, passthrough_model(), discount=0.99)

        np.testing.assert_allclose(targets, [[2.98, 3.97]])

    def test_terminal_uses_reward_only(self):
        batch = [make_transition(reward=7.0, done=True)]

        np.testing.assert_array_equal(td_targets(batch, passthrough_model(), 0.99), [[7.0, 7.0]])

    def test_zero_discount(self):
        batch = [make_transition(reward=4.0)]

        np.testing.assert_array_equal(td_targets(batch, passthrough_model(), 0.0), [[4.0, 4.0]])

    def test_empty_batch(self):
        with pytest.raises(ValueError):
            td_targets([], passthrough_model(), 0.99)


class TestTrainStep:
    """Tests for one replay training step."""

    def _buffer(self, *transitions) -> ReplayBuffer:
        buffer = ReplayBuffer(capacity=100)
        for transition in transitions:
            buffer.append(transition)
        return buffer

    def test_loss_hand_case(self, rng):
        model = passthrough_model()
        target = model.copy()
        buffer = self._buffer(make_transition(5.0, first_feature=(2.0,), actions=[3], done=True))
        config = AgentConfig(batch_size=1)

        loss = train_step(model, target, buffer, AdamState.zeros_like(model.params), config, rng)

        assert loss == 9.0
        assert model.params["head.bias"][3] != 0.0
        assert not target.params["head.bias"].any()

    def test_exact_targets_leave_params(self, rng):
        model = passthrough_model()
        before = model.copy()
        buffer = self._buffer(make_transition(2.0, first_feature=(2.0,), actions=[1], done=True))

        loss = train_step(
            model, model.copy(), buffer, AdamState.zeros_like(model.params), AgentConfig(batch_size=1), rng
        )

        assert loss == 0.0
        for name in model.params:
            np.testing.assert_array_equal(model.params[name], before.params[name])

    def test_insufficient_buffer(self, rng):
        model = passthrough_model()

        with pytest.raises(InsufficientReplayError):
            train_step(
                model,
                model.copy(),
                self._buffer(make_transition(1.0)),
                AdamState.zeros_like(model.params),
                AgentConfig(batch_size=2),
                rng,
            )

    def test_loss_decreases_on_frozen_buffer(self):
        rng = np.random.default_rng(11)
        model = init_model(rng)
        target = model.copy()
        adjacency = FogAdjacency(matrix=np.ones((3, 3), dtype=np.int8))
        buffer = ReplayBuffer(capacity=64)
        for _ in range(64):
            features = rng.normal(size=(3, 2))
            buffer.append(
                Transition(
                    features=features,
                    adjacency=adjacency,
                    actions=rng.integers(0, ACTION_COUNT, size=3),
                    reward=float(rng.uniform(5.0, 10.0)),
                    next_features=features,
                    next_adjacency=adjacency,
                    done=True,
                )
            )
        adam = AdamState.zeros_like(model.params)
        config = AgentConfig(learning_rate=5e-3, batch_size=32)

        losses = [train_step(model, target, buffer, adam, config, rng) for _ in range(100)]

        assert np.mean(losses[-10:]) < 0.5 * np.mean(losses[:10])
        assert adam.step == 100


class TestTargetSync:
    """Tests for hard target updates."""

    def test_copies_on_period(self, rng):
        model = init_model(rng)
        target = model.copy()
        model.params["head.bias"] += 1.0

        assert update_target(model, target, step=100, target_update_every=100)
        for name in model.params:
            np.testing.assert_array_equal(target.params[name], model.params[name])

        model.params["head.bias"] += 1.0
        assert not np.array_equal(target.params["head.bias"], model.params["head.bias"])

    def test_skips_off_period(self, rng):
        model = init_model(rng)
        target = model.copy()
        model.params["head.bias"] += 1.0

        assert not update_target(model, target, step=101, target_update_every=100)
        assert not target.params["head.bias"].any()


class TestGAQAgent:
    """Tests for the agent wrapper around the Q-learner."""

    @pytest.fixture
    def agent(self, grid_network, grid_partition_2):
        return GAQAgent(
            grid_network,
            grid_partition_2,
            AgentConfig(batch_size=2),
            BalanceTerms(),
            model_rng=np.random.default_rng(0),
            warmup_episodes=10,
        )

    @pytest.mark.parametrize(
        "mode, episode, expected",
        [
            (EpisodeMode.WARMUP, 3, 1.0),
            (EpisodeMode.EVAL, 500, 0.0),
            (EpisodeMode.TRAIN, 10, 1.0),
            (EpisodeMode.TRAIN, 160, 0.525),
            (EpisodeMode.TRAIN, 310, 0.05),
            (EpisodeMode.TRAIN, 1000, 0.05),
        ],
    )
    def test_epsilon_schedule(self, agent, mode, episode, expected):
        assert agent.epsilon_for(mode, episode) == pytest.approx(expected)

    def test_eval_decision(self, agent, grid_network, grid_partition_2, rng):
        context = PolicyContext(
            features=np.array([[12.0, 0.5], [9.0, 1.5]]),
            adjacency=fog_adjacency(grid_network, grid_partition_2),
            occupancy={},
            mode=EpisodeMode.EVAL,
            rng=rng,
        )

        first = agent.run(context)
        second = agent.run(context)

        assert set(first.weights) == set(grid_network.road_ids)
        assert first.actions.shape == (2,)
        assert first.epsilon == 0.0
        np.testing.assert_array_equal(first.actions, second.actions)

    def test_learn_only_in_training(self, agent, rng):
        assert agent.learn(EpisodeMode.WARMUP, rng) is None
        assert agent.learn(EpisodeMode.TRAIN, rng) is None

        for i in range(2):
            agent.remember(make_transition(float(i)))
        loss = agent.learn(EpisodeMode.TRAIN, rng)

        assert isinstance(loss, float)
        assert agent.train_steps == 1
        assert agent.learn(EpisodeMode.EVAL, rng) is None

    def test_episode_frequency(self, grid_network, grid_partition_2, rng):
        agent = GAQAgent(
            grid_network,
            grid_partition_2,
            AgentConfig(batch_size=1, train_frequency="episode"),
            BalanceTerms(),
            model_rng=np.random.default_rng(0),
        )
        agent.remember(make_transition(1.0))

        assert agent.learn(EpisodeMode.TRAIN, rng) is None
        assert agent.end_episode(EpisodeMode.TRAIN, rng) is not None

    def test_warmup_steps_gate_training(self, grid_network, grid_partition_2, rng):
        agent = GAQAgent(
            grid_network,
            grid_partition_2,
            AgentConfig(batch_size=1, warmup_steps=3),
            BalanceTerms(),
            model_rng=np.random.default_rng(0),
        )
        for i in range(2):
            agent.remember(make_transition(float(i)))

        assert agent.learn(EpisodeMode.TRAIN, rng) is None

        agent.remember(make_transition(2.0))
        assert agent.learn(EpisodeMode.TRAIN, rng) is not None

    def test_checkpoint_round_trip(self, agent, grid_network, grid_partition_2, tmp_path):
        path = agent.save(tmp_path / "checkpoint.npz")

        loaded = GAQAgent.from_checkpoint(
            path, grid_network, grid_partition_2, AgentConfig(batch_size=2), BalanceTerms()
        )

        for name in agent.model.params:
            np.testing.assert_array_equal(loaded.model.params[name], agent.model.params[name])
            np.testing.assert_array_equal(loaded.target.params[name], agent.model.params[name])


class TestBaselines:
    """Tests for the policies that never learn."""

    def _context(self, network, partition, rng, occupancy):
        return PolicyContext(
            features=np.zeros((partition.n_regions, 2)),
            adjacency=fog_adjacency(network, partition),
            occupancy=occupancy,
            mode=EpisodeMode.EVAL,
            rng=rng,
        )

    def test_density_baseline(self, grid_network, grid_partition_2, rng):
        policy = DensityBaselinePolicy(grid_network, grid_partition_2)

        decision = policy.run(self._context(grid_network, grid_partition_2, rng, {"J0_0-J0_1": 3}))

        assert decision.actions is None
        assert decision.weights["J0_0-J0_1"] == 3 + WEIGHT_FLOOR
        assert decision.weights["J0_1-J0_0"] == WEIGHT_FLOOR
        assert len(decision.weights) == len(grid_network.road_ids)

    def test_random_index(self, grid_network, grid_partition_2, rng):
        policy = RandomIndexPolicy(grid_network, grid_partition_2, BalanceTerms())

        decision = policy.run(self._context(grid_network, grid_partition_2, rng, {}))

        assert decision.actions.shape == (2,)
        assert np.all((decision.actions >= 0) & (decision.actions < ACTION_COUNT))
        assert decision.epsilon == 1.0
        assert set(decision.weights) == set(grid_network.road_ids)

"""
Workflow Unit Tests
===================

Unit tests for the LangGraph episode workflow.

These tests verify:
- Conditional routing after the learn node
- Episode termination (all RVs arrived vs. step cap)
- Transition storage per episode mode
- Seeded episodes are reproducible
"""

from dataclasses import asdict

import numpy as np
import pytest

from agents.baseline import DensityBaselinePolicy, RandomIndexPolicy
from agents.gaq import GAQAgent
from backend.schemas.experiment import AgentConfig, EpisodeMode
from backend.schemas.scenario import BalanceTerms
from orchestration.langgraph.edges import make_route_after_learn
from orchestration.langgraph.environment import DIAGNOSTIC_COLUMNS, RouterOptions, RoutingEnvironment
from orchestration.langgraph.state import create_initial_state
from orchestration.langgraph.workflow import build_episode_workflow, run_episode
from tests.conftest import desk_scenario


def episode(network, partition, scenario, policy, mode=EpisodeMode.EVAL, seed=7, number=0, diagnostics=False):
    env = RoutingEnvironment(network, partition, scenario, RouterOptions(), record_diagnostics=diagnostics)
    workflow = build_episode_workflow(env, policy)
    return run_episode(workflow, env, policy, number, mode, seed), env


def gaq_agent(network, partition, batch_size=32):
    return GAQAgent(
        network,
        partition,
        AgentConfig(batch_size=batch_size),
        BalanceTerms(),
        model_rng=np.random.default_rng(0),
    )


class TestWorkflowRouting:
    """Tests for the loop-or-stop decision."""

    @pytest.fixture
    def state(self, rng):
        return create_initial_state(0, EpisodeMode.TRAIN, rng)

    def test_continue(self, state):
        state["step"] = 1

        assert make_route_after_learn(3)(state) == "continue"

    def test_end_when_done(self, state):
        state["step"] = 1
        state["done"] = True

        assert make_route_after_learn(3)(state) == "end"

    def test_end_at_cap(self, state):
        state["step"] = 3

        assert make_route_after_learn(3)(state) == "end"


class TestEpisodeTermination:
    """Tests for how episodes end."""

    def test_no_rvs_runs_to_cap_with_zero_reward(self, grid_network, grid_partition_2):
        scenario = desk_scenario(rv_quota=0, bv_quota=5, ticks=10, max_steps=3)
        policy = DensityBaselinePolicy(grid_network, grid_partition_2)

        result, _ = episode(grid_network, grid_partition_2, scenario, policy)

        assert result.hit_cap
        assert result.steps == 3
        assert result.reward == 0.0
        assert result.mean_rv_speed == 0.0

    def test_all_rvs_arrived(self, grid_network, grid_partition_2):
        scenario = desk_scenario(rv_quota=1, bv_quota=0, rate=3600.0, ticks=60, max_steps=10)
        agent = gaq_agent(grid_network, grid_partition_2)

        result, env = episode(grid_network, grid_partition_2, scenario, agent, mode=EpisodeMode.WARMUP)

        assert not result.hit_cap
        assert result.steps < 10
        assert env.simulator.state.arrived_count() == 2
        assert list(agent.buffer)[-1].done
        assert not any(t.done for t in list(agent.buffer)[:-1])


class TestTransitionStorage:
    """Tests for which modes feed the replay buffer."""

    @pytest.fixture
    def scenario(self):
        return desk_scenario(rv_quota=3, bv_quota=3, ticks=20, max_steps=4)

    def test_eval_stores_nothing(self, grid_network, grid_partition_2, scenario):
        agent = gaq_agent(grid_network, grid_partition_2)

        result, _ = episode(grid_network, grid_partition_2, scenario, agent, mode=EpisodeMode.EVAL)

        assert result.transitions == 0
        assert len(agent.buffer) == 0
        assert result.epsilon == 0.0
        assert result.mean_loss is None

    def test_warmup_stores_every_step(self, grid_network, grid_partition_2, scenario):
        agent = gaq_agent(grid_network, grid_partition_2)

        result, _ = episode(grid_network, grid_partition_2, scenario, agent, mode=EpisodeMode.WARMUP)

        assert result.transitions == result.steps == len(agent.buffer)
        assert result.mean_loss is None
        assert agent.train_steps == 0

    def test_training_steps_report_loss(self, grid_network, grid_partition_2, scenario):
        agent = gaq_agent(grid_network, grid_partition_2, batch_size=1)

        result, _ = episode(grid_network, grid_partition_2, scenario, agent, mode=EpisodeMode.TRAIN)

        assert agent.train_steps == result.steps
        assert result.mean_loss is not None

    def test_baseline_never_stores(self, grid_network, grid_partition_2, scenario):
        policy = DensityBaselinePolicy(grid_network, grid_partition_2)

        result, _ = episode(grid_network, grid_partition_2, scenario, policy, mode=EpisodeMode.WARMUP)

        assert result.transitions == 0


class TestReproducibility:
    """Tests for seeded episodes."""

    def test_same_seed_same_episode(self, grid_network, grid_partition_2):
        scenario = desk_scenario(rv_quota=4, bv_quota=4, ticks=20, max_steps=4)

        runs = []
        for _ in range(2):
            agent = gaq_agent(grid_network, grid_partition_2)
            result, _ = episode(grid_network, grid_partition_2, scenario, agent, mode=EpisodeMode.WARMUP)
            row = asdict(result)
            row.pop("wall_time")
            runs.append((row, [t.actions.tolist() for t in agent.buffer]))

        assert runs[0] == runs[1]

    def test_policies_share_the_demand_stream(self, grid_network, grid_partition_2):
        scenario = desk_scenario(rv_quota=None, bv_quota=None, rate=600.0, ticks=20, max_steps=3)
        policies = [
            DensityBaselinePolicy(grid_network, grid_partition_2),
            RandomIndexPolicy(grid_network, grid_partition_2, BalanceTerms()),
        ]

        spawned = []
        for policy in policies:
            _, env = episode(grid_network, grid_partition_2, scenario, policy)
            state = env.simulator.state
            ids = set(state.vehicles) | {record.vehicle_id for record in state.arrived}
            spawned.append((list(state.spawned_per_inflow), ids))

        assert spawned[0] == spawned[1]


class TestDiagnostics:
    """Tests for per-decision router diagnostics."""

    def test_rows_recorded(self, grid_network, grid_partition_2):
        scenario = desk_scenario(rv_quota=3, bv_quota=0, rate=3600.0, ticks=10, max_steps=3)
        policy = DensityBaselinePolicy(grid_network, grid_partition_2)

        _, env = episode(grid_network, grid_partition_2, scenario, policy, diagnostics=True)

        assert env.diagnostics
        assert all(set(row) == set(DIAGNOSTIC_COLUMNS) for row in env.diagnostics)
        assert {row["step"] for row in env.diagnostics} <= {1, 2}

    def test_off_by_default(self, grid_network, grid_partition_2):
        scenario = desk_scenario(rv_quota=3, bv_quota=0, ticks=10, max_steps=3)

        _, env = episode(grid_network, grid_partition_2, scenario, DensityBaselinePolicy(grid_network, grid_partition_2))

        assert env.diagnostics == []

"""
Experiment Runners
==================

Train, test and baseline protocols on top of the episode workflow.

WHY THIS FILE EXISTS:
- The CLI and the evaluation tests run experiments the same way
- Input loading, seeding and output layout are defined once
- Every protocol ends in MetricsSummary objects and a populated run directory

PROTOCOLS:
- run_training: warm-up episodes with random actions, then training episodes;
  writes the checkpoint of the final online network
- run_test: greedy evaluation of a checkpoint on every (ratio, total) cell
- run_baseline: the same grid with density-only road weights, no agent
- run_random: the same grid with a uniformly random index per region

SEEDING:
Episode e of a run uses generators derived from (seed, e), so a test cell,
a baseline cell and a random cell with the same seed see the same demand
stream and differ only through route choices.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
from pydantic import ValidationError

from agents.base import RoutingPolicy
from agents.baseline import DensityBaselinePolicy, RandomIndexPolicy
from agents.gaq import GAQAgent
from backend.core.exceptions import ConfigValidationError
from backend.schemas.experiment import EpisodeMode, ExperimentConfig
from backend.schemas.scenario import ScenarioFile, apply_fleet
from backend.services.network.loader import load_fog_partition, load_network
from backend.services.network.model import FogPartition, RoadNetwork
from evaluation.reports import (
    write_config,
    write_episodes,
    write_metrics,
    write_router_diagnostics,
    write_summary,
)
from evaluation.summary import MetricsSummary, summarize
from evaluation.versioning import InputFingerprint, fingerprint_inputs
from observability.tracing import span
from orchestration.langgraph.environment import RouterOptions, RoutingEnvironment
from orchestration.langgraph.workflow import EpisodeResult, build_episode_workflow, run_episode

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
PolicyFactory = Callable[["RunInputs", ScenarioFile], RoutingPolicy]


# === Inputs ===


@dataclass(frozen=True)
class RunInputs:
    """Everything loaded from disk before the first episode."""

    network: RoadNetwork
    partition: FogPartition
    scenario: ScenarioFile
    seed: int
    fingerprint: InputFingerprint


@dataclass(frozen=True)
class TrainingOutcome:
    summary: MetricsSummary
    results: List[EpisodeResult]
    checkpoint: Path
    agent: GAQAgent


def _validation_error(source: str, error: ValidationError) -> ConfigValidationError:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return ConfigValidationError(f"{source}: {first['msg']}", field=location or None)


def load_experiment(path: PathLike) -> ExperimentConfig:
    """
    Read and validate an experiment file.

    Raises:
        ConfigValidationError: schema violation (unknown keys included)
        OSError: file cannot be read
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        return ExperimentConfig.model_validate_json(text)
    except ValidationError as e:
        raise _validation_error(str(path), e) from e


def load_scenario(path: PathLike) -> Tuple[ScenarioFile, str]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return ScenarioFile.model_validate_json(text), text
    except ValidationError as e:
        raise _validation_error(str(path), e) from e


def load_inputs(config: ExperimentConfig) -> RunInputs:
    """
    Load the network, its fog partition and the base scenario.

    Relative paths are resolved against the working directory.

    Raises:
        NetworkParseError, NetworkValidationError, PartitionError,
        ConfigValidationError: invalid input files
    """
    network_text = Path(config.network).read_text(encoding="utf-8")
    network = load_network(network_text)
    partition = load_fog_partition(network_text, network)
    scenario, scenario_text = load_scenario(config.scenario)
    seed = config.resolve_seed(scenario.seed)
    fingerprint = fingerprint_inputs(
        config.network, network_text, config.scenario, scenario_text, seed
    )
    logger.info(
        f"Loaded inputs network={config.network} roads={len(network.roads)} "
        f"regions={partition.n_regions} scenario={config.scenario} seed={seed}"
    )
    return RunInputs(
        network=network,
        partition=partition,
        scenario=scenario,
        seed=seed,
        fingerprint=fingerprint,
    )


def _environment(
    inputs: RunInputs,
    scenario: ScenarioFile,
    config: ExperimentConfig,
) -> RoutingEnvironment:
    return RoutingEnvironment(
        inputs.network,
        inputs.partition,
        scenario,
        RouterOptions.from_experiment(config),
        record_diagnostics=config.router_diagnostics,
    )


def _cell_dir(out_dir: Path, ratio: float, total: int) -> Path:
    return out_dir / "cells" / f"ratio-{ratio:g}_total-{total}"


# === Training ===


def run_training(
    config: ExperimentConfig,
    out_dir: PathLike,
    inputs: Optional[RunInputs] = None,
) -> TrainingOutcome:
    """
    Warm-up then training on the configured fleet, followed by a checkpoint.

    Writes config.json, episodes.csv, summary.csv, checkpoint.npz,
    router.csv (when enabled) and metrics.prom.
    """
    out = Path(out_dir)
    inputs = inputs or load_inputs(config)
    scenario = apply_fleet(inputs.scenario, config.rerouting_ratio, config.total_vehicles)
    write_config(out / "config.json", config, inputs.fingerprint.as_dict())

    env = _environment(inputs, scenario, config)
    agent = GAQAgent(
        inputs.network,
        inputs.partition,
        config.agent,
        scenario.balance_terms,
        model_rng=np.random.default_rng(inputs.seed),
        warmup_episodes=config.warmup_episodes,
    )
    workflow = build_episode_workflow(env, agent)

    logger.info(
        f"Training started episodes={config.episodes} warmup={config.warmup_episodes} "
        f"ratio={config.rerouting_ratio} total={config.total_vehicles} "
        f"priority={config.priority.value} out={out}"
    )
    results: List[EpisodeResult] = []
    with span("training", episodes=config.episodes, seed=inputs.seed):
        for episode in range(config.episodes):
            mode = EpisodeMode.WARMUP if episode < config.warmup_episodes else EpisodeMode.TRAIN
            results.append(run_episode(workflow, env, agent, episode, mode, inputs.seed))

    summary = summarize(
        "gaq",
        results,
        ratio=config.rerouting_ratio,
        total=config.total_vehicles,
        cutoff=config.convergence_cutoff,
        window=config.step_cap_window,
    )
    checkpoint = agent.save(out / "checkpoint.npz")
    write_episodes(out / "episodes.csv", results)
    write_summary(out / "summary.csv", [summary.row()])
    if config.router_diagnostics:
        write_router_diagnostics(out / "router.csv", env.diagnostics)
    write_metrics(out / "metrics.prom")

    logger.info(
        f"Training finished episodes={len(results)} train_steps={agent.train_steps} "
        f"post_convergence_reward={summary.post_convergence_reward:.2f} checkpoint={checkpoint}"
    )
    return TrainingOutcome(summary=summary, results=results, checkpoint=checkpoint, agent=agent)


# === Evaluation grid ===


def evaluate_grid(
    config: ExperimentConfig,
    label: str,
    make_policy: PolicyFactory,
    out_dir: PathLike,
    inputs: Optional[RunInputs] = None,
) -> List[MetricsSummary]:
    """
    eval_episodes greedy episodes on every (ratio, total) cell of the test grid.

    One summary row per cell, in grid order (ratios outer, totals inner).
    """
    out = Path(out_dir)
    inputs = inputs or load_inputs(config)
    write_config(out / "config.json", config, inputs.fingerprint.as_dict())

    summaries: List[MetricsSummary] = []
    with span("evaluation", label=label, seed=inputs.seed):
        for ratio in config.test_ratios:
            for total in config.test_totals:
                scenario = apply_fleet(inputs.scenario, ratio, total)
                env = _environment(inputs, scenario, config)
                policy = make_policy(inputs, scenario)
                workflow = build_episode_workflow(env, policy)
                results = [
                    run_episode(workflow, env, policy, episode, EpisodeMode.EVAL, inputs.seed)
                    for episode in range(config.eval_episodes)
                ]
                summary = summarize(
                    label, results, ratio=ratio, total=total, cutoff=0, window=config.step_cap_window
                )
                cell = _cell_dir(out, ratio, total)
                write_episodes(cell / "episodes.csv", results)
                if config.router_diagnostics:
                    write_router_diagnostics(cell / "router.csv", env.diagnostics)
                summaries.append(summary)
                logger.info(
                    f"Cell evaluated label={label} ratio={ratio} total={total} "
                    f"reward={summary.post_convergence_reward:.2f} "
                    f"step_cap={summary.post_convergence_step_cap:.3f}"
                )

    write_summary(out / "summary.csv", [s.row() for s in summaries])
    write_metrics(out / "metrics.prom")
    return summaries


def run_test(
    config: ExperimentConfig,
    checkpoint: PathLike,
    out_dir: PathLike,
    inputs: Optional[RunInputs] = None,
) -> List[MetricsSummary]:
    """
    Raises:
        CheckpointError: unreadable checkpoint or architecture mismatch
    """
    inputs = inputs or load_inputs(config)
    agent = GAQAgent.from_checkpoint(
        checkpoint,
        inputs.network,
        inputs.partition,
        config.agent,
        inputs.scenario.balance_terms,
    )

    def make_policy(run_inputs: RunInputs, scenario: ScenarioFile) -> RoutingPolicy:
        return agent

    return evaluate_grid(config, "gaq", make_policy, out_dir, inputs)


def run_baseline(
    config: ExperimentConfig,
    out_dir: PathLike,
    inputs: Optional[RunInputs] = None,
) -> List[MetricsSummary]:
    def make_policy(run_inputs: RunInputs, scenario: ScenarioFile) -> RoutingPolicy:
        return DensityBaselinePolicy(run_inputs.network, run_inputs.partition)

    return evaluate_grid(config, "baseline", make_policy, out_dir, inputs)


def run_random(
    config: ExperimentConfig,
    out_dir: PathLike,
    inputs: Optional[RunInputs] = None,
) -> List[MetricsSummary]:
    def make_policy(run_inputs: RunInputs, scenario: ScenarioFile) -> RoutingPolicy:
        return RandomIndexPolicy(run_inputs.network, run_inputs.partition, scenario.balance_terms)

    return evaluate_grid(config, "random", make_policy, out_dir, inputs)

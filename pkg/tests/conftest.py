"""
Pytest Configuration
====================

Shared fixtures and configuration for all tests.

WHY THIS FILE EXISTS:
- Defines fixtures used across test modules
- Configures pytest behavior
- Builds small networks and scenarios by hand so tests never depend on data/
"""

import json
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pytest

from backend.schemas.scenario import ScenarioFile, VehicleClass
from backend.services.network.fog import build_fog_partition
from backend.services.network.grid import generate_grid, grid_partition
from backend.services.network.model import FogPartition, Road, RoadNetwork
from backend.services.simulator.vehicle import Vehicle

FIXTURES = Path(__file__).parent / "fixtures"


# === Builders ===


def make_road(
    road_id: str,
    u: str,
    v: str,
    length: float = 100.0,
    lanes: int = 1,
    speed_limit: float = 15.0,
) -> Road:
    return Road(
        id=road_id,
        from_junction=u,
        to_junction=v,
        length=length,
        lane_count=lanes,
        speed_limit=speed_limit,
    )


def make_vehicle(
    vehicle_id: str,
    route: Sequence[str],
    destination: str,
    offset: float = 0.0,
    vehicle_class: VehicleClass = VehicleClass.RV,
    route_position: int = 0,
) -> Vehicle:
    return Vehicle(
        id=vehicle_id,
        vehicle_class=vehicle_class,
        route=list(route),
        route_position=route_position,
        offset=offset,
        speed=0.0,
        destination_junction=destination,
        spawn_step=0,
        spawn_clock=0.0,
    )


def single_region(network: RoadNetwork) -> FogPartition:
    return build_fog_partition(network, {road_id: 0 for road_id in network.road_ids})


# === Fixtures ===


@pytest.fixture
def line_network() -> RoadNetwork:
    """
    Three junctions in a row, one road each way between neighbours.

        A --ab--> B --bc--> C      (and ba, cb back)
    """
    junctions = ("A", "B", "C")
    roads = (
        make_road("ab", "A", "B"),
        make_road("ba", "B", "A"),
        make_road("bc", "B", "C"),
        make_road("cb", "C", "B"),
    )
    return RoadNetwork(junctions=junctions, roads=roads)


@pytest.fixture
def diamond_network() -> RoadNetwork:
    """
    Origin road s into a diamond with two disjoint two-road branches.

        O --s--> S --a1--> P --a2--> T
                 S --b1--> Q --b2--> T
    """
    junctions = ("O", "S", "P", "Q", "T")
    roads = (
        make_road("s", "O", "S"),
        make_road("a1", "S", "P"),
        make_road("a2", "P", "T"),
        make_road("b1", "S", "Q"),
        make_road("b2", "Q", "T"),
    )
    return RoadNetwork(junctions=junctions, roads=roads)


@pytest.fixture
def grid_network() -> RoadNetwork:
    """Desk grid: 4x4 bidirectional, 100 m roads, 1 lane, 15 m/s."""
    return generate_grid(4, 4)


@pytest.fixture
def grid_partition_2(grid_network) -> FogPartition:
    return grid_partition(grid_network, cols=4, regions=2)


@pytest.fixture
def small_network_text() -> str:
    return (FIXTURES / "small_network.json").read_text(encoding="utf-8")


@pytest.fixture
def small_network_document() -> Dict:
    return json.loads((FIXTURES / "small_network.json").read_text(encoding="utf-8"))


def desk_scenario(
    rv_quota: Optional[int] = 10,
    bv_quota: Optional[int] = 10,
    rate: float = 600.0,
    ticks: int = 60,
    max_steps: int = 10,
    seed: int = 0,
) -> ScenarioFile:
    """Two RV and two BV inflows crossing a 4x4 grid in opposite corners."""
    inflows = [
        {"entry_road": "J0_0-J0_1", "class": "RV", "rate_vph": rate,
         "destination": "J3_3", "max_vehicles": rv_quota},
        {"entry_road": "J3_0-J2_0", "class": "RV", "rate_vph": rate,
         "destination": "J0_3", "max_vehicles": rv_quota},
        {"entry_road": "J0_3-J1_3", "class": "BV", "rate_vph": rate,
         "destination": "J3_0", "max_vehicles": bv_quota},
        {"entry_road": "J3_3-J3_2", "class": "BV", "rate_vph": rate,
         "destination": "J0_0", "max_vehicles": bv_quota},
    ]
    return ScenarioFile.model_validate(
        {
            "inflows": inflows,
            "ticks_per_control_step": ticks,
            "max_control_steps": max_steps,
            "seed": seed,
        }
    )


@pytest.fixture
def scenario() -> ScenarioFile:
    return desk_scenario()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


def grid_inputs_files(tmp_path: Path, scenario_file: ScenarioFile) -> Tuple[Path, Path]:
    """Write a 4x4 grid network and a scenario into tmp_path."""
    from backend.services.network.loader import serialize_network

    network = generate_grid(4, 4)
    partition = grid_partition(network, cols=4, regions=2)
    network_path = tmp_path / "grid.json"
    network_path.write_text(serialize_network(network, partition), encoding="utf-8")
    scenario_path = tmp_path / "scenario.json"
    scenario_path.write_text(
        scenario_file.model_dump_json(by_alias=True, exclude_none=True), encoding="utf-8"
    )
    return network_path, scenario_path


# === Markers ===


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')"
    )
    config.addinivalue_line(
        "markers", "integration: marks tests as integration tests"
    )
    config.addinivalue_line(
        "markers", "evaluation: marks tests as evaluation tests"
    )

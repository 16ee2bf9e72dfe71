"""
Scenario File Schema
====================

Pydantic models for the JSON scenario file: demand (inflows), simulator
timing, link-model constants, state/reward constants and road-weight balance terms.

WHY THIS FILE EXISTS:
- One validated object carries every knob of an episode
- Unknown keys are rejected
- Defaults reproduce the desk-scale scenario

USAGE:
    scenario = ScenarioFile.model_validate_json(path.read_text())
    scenario = apply_fleet(scenario, ratio=0.5, total=100)
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from backend.core.exceptions import ScenarioError


class VehicleClass(str, Enum):
    """Rerouting vehicles are controlled, background vehicles add load."""

    RV = "RV"
    BV = "BV"


class InflowRecord(BaseModel):
    """
    A Bernoulli inflow of one vehicle class at one entry road.

    max_vehicles is a spawn quota for the episode; None means unlimited.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    entry_road: str
    vehicle_class: VehicleClass = Field(alias="class")
    rate_vph: float = Field(ge=0.0)
    destination: str
    max_vehicles: Optional[int] = Field(default=None, ge=0)


class RewardWeights(BaseModel):
    """w_base, w_bonus, w_penalty of the speed reward."""

    model_config = ConfigDict(extra="forbid")

    base: float = Field(default=10.0, gt=0.0)
    bonus: float = Field(default=50.0, ge=0.0)
    penalty: float = Field(default=50.0, ge=0.0)


class BalanceTerms(BaseModel):
    """T1 scales the region index, T2 scales road occupancy in the road weight."""

    model_config = ConfigDict(extra="forbid")

    index: float = Field(default=1.0, ge=0.0)
    density: float = Field(default=1.0, ge=0.0)


class ScenarioFile(BaseModel):
    """Top-level scenario file."""

    model_config = ConfigDict(extra="forbid")

    inflows: List[InflowRecord] = Field(default_factory=list)
    tick_seconds: float = Field(default=1.0, gt=0.0)
    ticks_per_control_step: int = Field(default=60, ge=1)
    max_control_steps: int = Field(default=10, ge=1)
    jam_density_per_lane: float = Field(default=0.15, gt=0.0)
    speed_floor: float = Field(default=0.05, gt=0.0, le=1.0)
    seed: int = Field(default=0, ge=0)
    tau: float = Field(default=100.0, gt=0.0)
    reward_weights: RewardWeights = Field(default_factory=RewardWeights)
    balance_terms: BalanceTerms = Field(default_factory=BalanceTerms)

    @field_validator("inflows")
    @classmethod
    def _inflows_not_duplicated(cls, inflows: List[InflowRecord]) -> List[InflowRecord]:
        keys = [(i.entry_road, i.vehicle_class, i.destination) for i in inflows]
        if len(keys) != len(set(keys)):
            raise ValueError("duplicate inflow (entry_road, class, destination)")
        return inflows


def apply_fleet(scenario: ScenarioFile, ratio: float, total: int) -> ScenarioFile:
    """
    Rescale a scenario to a rerouting ratio and total fleet size.

    RV count = round(ratio * total), BV count = total - RV count. Each class's
    count becomes the sum of its inflows' quotas, split as evenly as possible
    (earlier inflows take the remainder). When the base scenario gives a quota
    for every inflow of a class, that class's rates are scaled by
    target / base quota so that more vehicles also arrive per unit time.

    Raises:
        ScenarioError: a class needs vehicles but has no inflow
    """
    if not 0.0 < ratio < 1.0:
        raise ScenarioError(f"rerouting ratio must lie in (0, 1), got {ratio}", field="ratio")
    if total < 0:
        raise ScenarioError(f"total vehicles must be >= 0, got {total}", field="total")

    rv_target = int(round(ratio * total))
    targets: Dict[VehicleClass, int] = {
        VehicleClass.RV: rv_target,
        VehicleClass.BV: total - rv_target,
    }

    inflows = [record.model_copy() for record in scenario.inflows]
    for vehicle_class, target in targets.items():
        members = [i for i, rec in enumerate(inflows) if rec.vehicle_class == vehicle_class]
        if not members:
            if target > 0:
                raise ScenarioError(
                    f"scenario has no {vehicle_class.value} inflow for {target} vehicles",
                    field="inflows",
                )
            continue

        quotas = [inflows[i].max_vehicles for i in members]
        base = sum(quotas) if all(q is not None for q in quotas) else None
        share, remainder = divmod(target, len(members))
        for position, index in enumerate(members):
            record = inflows[index]
            quota = share + (1 if position < remainder else 0)
            rate = record.rate_vph
            if base:
                rate = rate * target / base
            inflows[index] = record.model_copy(update={"max_vehicles": quota, "rate_vph": rate})

    return scenario.model_copy(update={"inflows": inflows})

"""
Network File Schema
===================

Pydantic models for the JSON network file.

WHY THIS FILE EXISTS:
- The file format is a contract with whoever writes networks by hand
- Unknown keys must be rejected, not silently ignored
- Field names are fixed: junctions, roads, fog_regions

Structural invariants (positive lengths, dangling junctions, duplicate ids)
are NOT enforced here; the loader checks them after parsing so they surface
as validation errors naming the violated invariant.
"""

from typing import List

from pydantic import BaseModel, ConfigDict, Field


class RoadRecord(BaseModel):
    """One road as written in the network file."""

    model_config = ConfigDict(extra="forbid")

    id: str
    from_: str = Field(alias="from")
    to: str
    length_m: float
    lanes: int
    speed_limit_mps: float


class FogRegionRecord(BaseModel):
    """One fog region: its index and the roads it governs."""

    model_config = ConfigDict(extra="forbid")

    index: int
    roads: List[str]


class NetworkFile(BaseModel):
    """Top-level network file."""

    model_config = ConfigDict(extra="forbid")

    junctions: List[str]
    roads: List[RoadRecord]
    fog_regions: List[FogRegionRecord] = Field(default_factory=list)

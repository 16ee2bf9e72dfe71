"""
Network File Loading
====================

Parses, validates and serializes the JSON network file.

WHY THIS FILE EXISTS:
- Stands in for a map import: networks come from hand-written or generated files
- Parse problems are reported with line or field context
- Invariant problems are reported with the name of the violated invariant

PIPELINE:
1. json.loads                 -> NetworkParseError(line=...)
2. NetworkFile.model_validate  -> NetworkParseError(field=...)
3. RoadNetwork(...)            -> NetworkValidationError(invariant=...)

serialize_network() is the inverse of load_network(): loading the serialized
text gives back an equal RoadNetwork.
"""

import json
import logging
from typing import Dict, Optional

from pydantic import ValidationError

from backend.core.exceptions import NetworkParseError, PartitionError
from backend.schemas.network import FogRegionRecord, NetworkFile, RoadRecord
from backend.services.network.fog import build_fog_partition
from backend.services.network.model import FogPartition, Road, RoadNetwork

logger = logging.getLogger(__name__)


def _parse(text: str) -> NetworkFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkParseError(f"invalid JSON: {e.msg}", line=e.lineno) from e

    try:
        return NetworkFile.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise NetworkParseError(first["msg"], field=location) from e


def load_network(text: str) -> RoadNetwork:
    """
    Build a validated RoadNetwork from network file content.

    Raises:
        NetworkParseError: malformed JSON or schema mismatch (unknown keys included)
        NetworkValidationError: dangling junction, nonpositive length, duplicate id, ...
    """
    parsed = _parse(text)
    roads = tuple(
        Road(
            id=record.id,
            from_junction=record.from_,
            to_junction=record.to,
            length=record.length_m,
            lane_count=record.lanes,
            speed_limit=record.speed_limit_mps,
        )
        for record in parsed.roads
    )
    network = RoadNetwork(junctions=tuple(parsed.junctions), roads=roads)
    logger.debug(f"Loaded network junctions={len(network.junctions)} roads={len(roads)}")
    return network


def load_fog_partition(text: str, network: RoadNetwork) -> FogPartition:
    """Read the fog_regions block of a network file into a FogPartition."""
    parsed = _parse(text)
    assignment: Dict[str, int] = {}
    for region in parsed.fog_regions:
        for road_id in region.roads:
            if road_id in assignment:
                raise PartitionError(
                    f"road '{road_id}' listed more than once in fog_regions "
                    f"(regions {assignment[road_id]} and {region.index})",
                    road=road_id,
                )
            assignment[road_id] = region.index
    return build_fog_partition(network, assignment)


def serialize_network(network: RoadNetwork, partition: Optional[FogPartition] = None) -> str:
    """Write a network (and optionally its partition) in the network file format."""
    document = NetworkFile(
        junctions=list(network.junctions),
        roads=[
            RoadRecord.model_validate(
                {
                    "id": road.id,
                    "from": road.from_junction,
                    "to": road.to_junction,
                    "length_m": road.length,
                    "lanes": road.lane_count,
                    "speed_limit_mps": road.speed_limit,
                }
            )
            for road in network.roads
        ],
        fog_regions=[
            FogRegionRecord(index=index, roads=list(roads))
            for index, roads in enumerate(partition.region_roads)
        ]
        if partition is not None
        else [],
    )
    return json.dumps(document.model_dump(by_alias=True), indent=2)

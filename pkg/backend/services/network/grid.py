"""
Synthetic Grid Networks
=======================

Desk-scale lattice networks standing in for a real city grid.

generate_grid(rows, cols, ...) places rows x cols junctions J{r}_{c}. Every
lattice edge becomes one road, or two opposing roads when bidirectional, so a
bidirectional grid has 2 * (2*rows*cols - rows - cols) roads.

One-way grids alternate direction by row and by column, the way avenue grids do.
"""

from typing import Dict, List, Tuple

from backend.core.exceptions import PartitionError
from backend.services.network.fog import build_fog_partition
from backend.services.network.model import FogPartition, Road, RoadNetwork


def junction_id(row: int, col: int) -> str:
    return f"J{row}_{col}"


def _parse_junction(junction: str) -> Tuple[int, int]:
    row, col = junction[1:].split("_")
    return int(row), int(col)


def generate_grid(
    rows: int,
    cols: int,
    road_length: float = 100.0,
    lanes: int = 1,
    speed_limit: float = 15.0,
    bidirectional: bool = True,
) -> RoadNetwork:
    """
    Build a rows x cols lattice network.

    Raises:
        ValueError: rows or cols below 2
    """
    if rows < 2 or cols < 2:
        raise ValueError(f"grid needs rows, cols >= 2, got {rows}x{cols}")

    junctions = tuple(junction_id(r, c) for r in range(rows) for c in range(cols))
    edges: List[Tuple[str, str]] = []
    for r in range(rows):
        for c in range(cols - 1):
            a, b = junction_id(r, c), junction_id(r, c + 1)
            edges.append((a, b) if bidirectional or r % 2 == 0 else (b, a))
    for c in range(cols):
        for r in range(rows - 1):
            a, b = junction_id(r, c), junction_id(r + 1, c)
            edges.append((a, b) if bidirectional or c % 2 == 0 else (b, a))

    pairs: List[Tuple[str, str]] = []
    for a, b in edges:
        pairs.append((a, b))
        if bidirectional:
            pairs.append((b, a))

    roads = tuple(
        Road(
            id=f"{u}-{v}",
            from_junction=u,
            to_junction=v,
            length=float(road_length),
            lane_count=int(lanes),
            speed_limit=float(speed_limit),
        )
        for u, v in pairs
    )
    return RoadNetwork(junctions=junctions, roads=roads)


def grid_partition(network: RoadNetwork, cols: int, regions: int) -> FogPartition:
    """
    Split a generated grid into vertical column bands.

    A road belongs to the band of its upstream junction's column.
    """
    if not 1 <= regions <= cols:
        raise PartitionError(f"cannot cut {cols} columns into {regions} bands")
    assignment: Dict[str, int] = {}
    for road in network.roads:
        _, col = _parse_junction(road.from_junction)
        assignment[road.id] = col * regions // cols
    return build_fog_partition(network, assignment)

"""
Network Model Unit Tests
========================

Tests for the road graph, its file format, fog partitions and grid generation.

These tests verify:
- Parse errors carry line or field context
- Structural invariants are named when violated
- serialize_network / load_network round trip
- Fog adjacency shape, symmetry and unit diagonal
"""

import json

import numpy as np
import pytest

from backend.core.exceptions import NetworkParseError, NetworkValidationError, PartitionError
from backend.services.network.fog import build_fog_partition, fog_adjacency
from backend.services.network.grid import generate_grid, grid_partition
from backend.services.network.loader import load_fog_partition, load_network, serialize_network
from backend.services.network.model import RoadNetwork
from tests.conftest import make_road


class TestLoadNetwork:
    """Tests for parsing the network file."""

    def test_loads_fixture(self, small_network_text):
        network = load_network(small_network_text)

        assert network.junctions == ("A", "B", "C", "D")
        assert network.road_ids == ("ab", "ba", "bc", "cd", "da")
        assert network.road("bc").capacity_length == 400.0
        assert network.successors("ab") == frozenset({"ba", "bc"})
        assert network.successors("cd") == frozenset({"da"})

    def test_invalid_json_reports_line(self):
        text = '{\n  "junctions": ["A",,]\n}'

        with pytest.raises(NetworkParseError) as exc:
            load_network(text)

        assert exc.value.line == 2
        assert exc.value.error_code == "NETWORK_PARSE_ERROR"

    def test_unknown_key_rejected(self):
        text = json.dumps({"junctions": [], "roads": [], "landmarks": []})

        with pytest.raises(NetworkParseError) as exc:
            load_network(text)

        assert exc.value.field == "landmarks"

    def test_missing_road_field_reports_location(self, small_network_document):
        del small_network_document["roads"][0]["lanes"]

        with pytest.raises(NetworkParseError) as exc:
            load_network(json.dumps(small_network_document))

        assert exc.value.field == "roads.0.lanes"

    @pytest.mark.parametrize(
        "key, value, invariant",
        [
            ("length_m", 0.0, "nonpositive length"),
            ("length_m", -5.0, "nonpositive length"),
            ("lanes", 0, "lane count below one"),
            ("speed_limit_mps", 0.0, "nonpositive speed limit"),
            ("to", "Z", "dangling junction"),
        ],
    )
    def test_invariant_violations_are_named(self, small_network_document, key, value, invariant):
        small_network_document["roads"][2][key] = value

        with pytest.raises(NetworkValidationError) as exc:
            load_network(json.dumps(small_network_document))

        assert exc.value.invariant == invariant

    def test_duplicate_road_id(self, small_network_document):
        small_network_document["roads"][1]["id"] = "ab"

        with pytest.raises(NetworkValidationError) as exc:
            load_network(json.dumps(small_network_document))

        assert exc.value.invariant == "duplicate id"

    def test_duplicate_junction_id(self):
        with pytest.raises(NetworkValidationError) as exc:
            RoadNetwork(junctions=("A", "A"), roads=())

        assert exc.value.invariant == "duplicate id"


class TestSerialization:
    """Tests for the serialize/load round trip."""

    def test_round_trip_network(self, small_network_text):
        network = load_network(small_network_text)

        again = load_network(serialize_network(network))

        assert again == network

    def test_round_trip_partition(self, small_network_text):
        network = load_network(small_network_text)
        partition = load_fog_partition(small_network_text, network)

        text = serialize_network(network, partition)
        again = load_fog_partition(text, load_network(text))

        assert again.region_roads == partition.region_roads
        assert dict(again.region_of) == dict(partition.region_of)

    def test_grid_round_trip(self, grid_network, grid_partition_2):
        text = serialize_network(grid_network, grid_partition_2)

        assert load_network(text) == grid_network
        assert load_fog_partition(text, grid_network).region_roads == grid_partition_2.region_roads


class TestFogPartition:
    """Tests for building and validating fog partitions."""

    def test_region_sizes(self, small_network_text):
        network = load_network(small_network_text)
        partition = load_fog_partition(small_network_text, network)

        assert partition.n_regions == 2
        assert partition.region_size(0) == 2
        assert partition.region_size(1) == 3
        assert partition.region_of["cd"] == 1

    def test_road_in_two_regions_rejected(self, small_network_document):
        small_network_document["fog_regions"] = [
            {"index": 0, "roads": ["ab", "ba", "bc"]},
            {"index": 1, "roads": ["bc", "cd", "da"]},
        ]
        text = json.dumps(small_network_document)
        network = load_network(text)

        with pytest.raises(PartitionError, match="more than once") as exc_info:
            load_fog_partition(text, network)
        assert exc_info.value.road == "bc"
        assert exc_info.value.error_code == "PARTITION_ERROR"

    def test_road_listed_twice_in_one_region_rejected(self, small_network_document):
        small_network_document["fog_regions"] = [
            {"index": 0, "roads": ["ab", "ba", "ab"]},
            {"index": 1, "roads": ["bc", "cd", "da"]},
        ]
        text = json.dumps(small_network_document)

        with pytest.raises(PartitionError) as exc_info:
            load_fog_partition(text, load_network(text))
        assert exc_info.value.road == "ab"

    def test_missing_road(self, line_network):
        with pytest.raises(PartitionError, match="missing road"):
            build_fog_partition(line_network, {"ab": 0, "ba": 0, "bc": 0})

    def test_unknown_road(self, line_network):
        assignment = {"ab": 0, "ba": 0, "bc": 0, "cb": 0, "zz": 0}

        with pytest.raises(PartitionError, match="unknown roads"):
            build_fog_partition(line_network, assignment)

    def test_non_contiguous_indexes(self, line_network):
        with pytest.raises(PartitionError, match="non-contiguous"):
            build_fog_partition(line_network, {"ab": 0, "ba": 0, "bc": 2, "cb": 2})


class TestFogAdjacency:
    """Tests for the fog-region graph."""

    def test_two_regions_touching(self, small_network_text):
        network = load_network(small_network_text)
        partition = load_fog_partition(small_network_text, network)

        adjacency = fog_adjacency(network, partition)

        np.testing.assert_array_equal(adjacency.matrix, [[1, 1], [1, 1]])
        assert adjacency.n == 2

    def test_column_bands_are_a_path_graph(self, grid_network):
        partition = grid_partition(grid_network, cols=4, regions=4)

        adjacency = fog_adjacency(grid_network, partition)

        expected = np.array(
            [
                [1, 1, 0, 0],
                [1, 1, 1, 0],
                [0, 1, 1, 1],
                [0, 0, 1, 1],
            ]
        )
        np.testing.assert_array_equal(adjacency.matrix, expected)
        assert adjacency.neighbours(0) == (0, 1)
        assert adjacency.neighbours(2) == (1, 2, 3)

    def test_symmetric_unit_diagonal_read_only(self, grid_network, grid_partition_2):
        matrix = fog_adjacency(grid_network, grid_partition_2).matrix

        np.testing.assert_array_equal(matrix, matrix.T)
        assert np.all(np.diag(matrix) == 1)
        assert not matrix.flags.writeable

    def test_disconnected_regions_only_self_loops(self):
        roads = (make_road("ab", "A", "B"), make_road("cd", "C", "D"))
        network = RoadNetwork(junctions=("A", "B", "C", "D"), roads=roads)
        partition = build_fog_partition(network, {"ab": 0, "cd": 1})

        np.testing.assert_array_equal(fog_adjacency(network, partition).matrix, np.eye(2))


class TestGrid:
    """Tests for synthetic grid networks."""

    @pytest.mark.parametrize("rows, cols", [(2, 2), (3, 2), (4, 4), (3, 5)])
    def test_bidirectional_road_count(self, rows, cols):
        network = generate_grid(rows, cols)

        assert len(network.roads) == 2 * (2 * rows * cols - rows - cols)
        assert len(network.junctions) == rows * cols

    def test_one_way_grid_has_one_road_per_edge(self):
        network = generate_grid(4, 4, bidirectional=False)

        assert len(network.roads) == 2 * 16 - 8

    def test_road_attributes(self):
        network = generate_grid(2, 3, road_length=250.0, lanes=2, speed_limit=12.5)
        road = network.road("J0_0-J0_1")

        assert (road.length, road.lane_count, road.speed_limit) == (250.0, 2, 12.5)
        assert road.from_junction == "J0_0" and road.to_junction == "J0_1"

    def test_too_small(self):
        with pytest.raises(ValueError):
            generate_grid(1, 4)

    def test_band_partition_by_upstream_column(self, grid_partition_2):
        assert grid_partition_2.region_of["J0_1-J0_2"] == 0
        assert grid_partition_2.region_of["J0_2-J0_1"] == 1
        assert grid_partition_2.region_size(0) == grid_partition_2.region_size(1) == 24

    def test_too_many_bands(self, grid_network):
        with pytest.raises(PartitionError):
            grid_partition(grid_network, cols=4, regions=5)


class TestDistances:
    """Tests for static distances used by priority and validation."""

    def test_distances_to(self, line_network):
        assert line_network.distances_to("C") == {"C": 0.0, "B": 100.0, "A": 200.0}

    def test_can_reach(self):
        roads = (make_road("ab", "A", "B"), make_road("bc", "B", "C"))
        network = RoadNetwork(junctions=("A", "B", "C"), roads=roads)

        assert network.can_reach("ab", "C")
        assert not network.can_reach("bc", "A")

    def test_grid_manhattan_distance(self, grid_network):
        distances = grid_network.distances_to("J3_3")

        assert distances["J0_0"] == 600.0
        assert distances["J2_3"] == 100.0

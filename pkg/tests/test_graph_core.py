import math

import pytest

from mncomplex.errors import ConfigError
from mncomplex.graph_core import (
    Graph,
    Seed,
    common_neighbor_count,
    common_neighbors,
    sample_er,
)


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


class TestSampleEr:
    def test_p_one_gives_complete_graph(self):
        g = sample_er(5, 1.0, Seed(123))
        assert g.edge_count() == 10
        assert g == Graph.complete(5)

    def test_p_zero_gives_empty_graph(self):
        g = sample_er(5, 0.0, Seed(123))
        assert g.edge_count() == 0

    def test_edge_count_within_five_sigma(self):
        g = sample_er(1000, 0.2, Seed(7))
        mean = 0.2 * math.comb(1000, 2)
        sigma = math.sqrt(math.comb(1000, 2) * 0.2 * 0.8)
        assert abs(g.edge_count() - mean) <= 5 * sigma

    def test_same_seed_same_graph(self):
        assert sample_er(50, 0.3, Seed(9, 4)) == sample_er(50, 0.3, Seed(9, 4))

    def test_different_trials_differ(self):
        assert sample_er(50, 0.3, Seed(9, 0)) != sample_er(50, 0.3, Seed(9, 1))

    def test_bad_probability_rejected(self):
        with pytest.raises(ConfigError):
            sample_er(5, 1.5, Seed(0))


class TestGraph:
    def test_validation_rejects_asymmetry(self):
        with pytest.raises(ConfigError):
            Graph(2, [0b10, 0b00])

    def test_validation_rejects_loops(self):
        with pytest.raises(ConfigError):
            Graph(2, [0b01, 0b10])

    def test_edges_in_lexicographic_order(self):
        g = Graph.from_edges(4, [(2, 3), (0, 1), (0, 3)])
        assert list(g.edges()) == [(0, 1), (0, 3), (2, 3)]

    def test_edge_list_round_trip(self):
        g = sample_er(40, 0.25, Seed(5))
        assert Graph.from_edge_list(g.to_edge_list()) == g

    def test_edge_list_header_checked(self):
        with pytest.raises(ConfigError):
            Graph.from_edge_list("3 5\n0 1\n")

    def test_words_match_rows(self):
        g = sample_er(130, 0.4, Seed(11))
        for i in range(g.n):
            row = int.from_bytes(g.words[i].tobytes(), "little")
            assert row == g.rows[i]


class TestCommonNeighbors:
    def test_complete_graph_pair(self):
        assert common_neighbors(Graph.complete(4), {0, 1}) == {2, 3}

    def test_five_cycle_adjacent_pair_has_none(self):
        assert common_neighbors(cycle(5), {0, 1}) == set()

    def test_five_cycle_distance_two_pair(self):
        assert common_neighbors(cycle(5), {0, 2}) == {1}

    def test_empty_set_gives_all_vertices(self):
        g = cycle(5)
        assert common_neighbors(g, set()) == set(range(5))
        assert common_neighbor_count(g, ()) == 5

    def test_count_matches_set_size(self):
        g = sample_er(30, 0.4, Seed(3))
        for s in [(0,), (1, 2), (3, 4, 5)]:
            assert common_neighbor_count(g, s) == len(common_neighbors(g, s))

    def test_out_of_range_vertex_rejected(self):
        with pytest.raises(ConfigError):
            common_neighbors(cycle(5), {7})

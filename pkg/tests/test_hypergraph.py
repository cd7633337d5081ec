# relturan - Constructive relative Turán numbers for hypergraph cycles.
# Copyright (C) 2024 The relturan developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Tests of the hypergraph core.
"""
import math
import itertools

import pytest
from hypothesis import given, settings

from relturan.exceptions import InvalidInput
from relturan.generators import FANO_PLANE, complete, partite_complete, random_hypergraph
from relturan.hypergraph import (
    Hypergraph,
    Partition,
    degree_profile,
    greedy_matching,
    induced_k_graph,
    is_linear,
    k_degree,
    linear_subgraph,
    partite_reduce,
    transversal_edges,
)

from tests.strategies import hypergraphs


class TestHypergraph:
    def test_edges_are_sorted(self):
        host = Hypergraph(3, 5, [(4, 2, 0), (3, 1, 0)])
        assert host.edges == ((0, 1, 3), (0, 2, 4))
        assert host.edge_id((4, 0, 2)) == 1
        assert host.incident(0) == (0, 1)
        assert host.has_edge((0, 1, 3))
        assert not host.has_edge((0, 1, 2))

    @pytest.mark.parametrize(
        "edges",
        [
            [(0, 1)],
            [(0, 0, 1)],
            [(0, 1, 5)],
            [(0, 1, 2), (2, 1, 0)],
        ],
    )
    def test_invalid_edges(self, edges):
        with pytest.raises(InvalidInput):
            Hypergraph(3, 5, edges)

    def test_subgraph_keeps_vertices_and_partition(self):
        host = partite_complete((2, 2, 2))
        sub = host.subgraph([0, 3])
        assert sub.vertex_count == 6
        assert sub.partition == host.partition
        assert sub.num_edges == 2

    def test_partition_must_be_transversal(self):
        partition = Partition([0, 0, 1, 2], 3)
        with pytest.raises(InvalidInput):
            Hypergraph(3, 4, [(0, 1, 2)], partition)

    def test_text_format(self, tmp_path):
        host = Hypergraph(3, 5, [(0, 1, 2), (2, 3, 4)])
        assert host.to_text() == "3 5 2\n0 1 2\n2 3 4\n"
        path = tmp_path / "host.hg"
        host.save(path)
        assert Hypergraph.load(path) == host
        assert Hypergraph.load(path).digest() == host.digest()

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "3 5\n0 1 2\n",
            "3 5 2\n0 1 2\n",
            "3 5 1\n2 1 0\n",
            "3 5 2\n0 1 2\n0 1 2\n",
            "3 5 1\n0 a 2\n",
        ],
    )
    def test_malformed_text(self, text):
        with pytest.raises(InvalidInput):
            Hypergraph.from_text(text)

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(InvalidInput):
            Hypergraph.load(tmp_path / "missing.hg")


class TestDegrees:
    def test_k_degree_complete(self):
        assert k_degree(complete(4, 3), {0, 1}) == 2

    def test_k_degree_empty_host(self):
        assert k_degree(Hypergraph(3, 4), {0}) == 0

    @pytest.mark.parametrize("vertices", [set(), {0, 1, 2}, {0, 9}])
    def test_k_degree_invalid(self, vertices):
        with pytest.raises(InvalidInput):
            k_degree(complete(4, 3), vertices)

    def test_profile_complete(self):
        profile = degree_profile(complete(5, 3))
        assert profile.max_degree == 6
        assert profile.k(1) == 6
        assert profile.k(2) == 3
        assert profile.max_pair_degree == 3

    def test_profile_empty(self):
        profile = degree_profile(Hypergraph(3, 4))
        assert profile.max_degree == 0
        assert profile.max_k_degree == {1: 0, 2: 0}

    @settings(max_examples=50, deadline=None)
    @given(hypergraphs(uniformity=4, min_vertices=4, max_vertices=7))
    def test_profile_is_monotone(self, host):
        profile = degree_profile(host)
        assert profile.max_degree == profile.k(1)
        assert profile.k(1) >= profile.k(2) >= profile.k(3)
        for k in range(1, 4):
            brute = max(
                (k_degree(host, subset) for subset in itertools.combinations(range(host.vertex_count), k)),
                default=0,
            )
            assert profile.k(k) == brute


class TestLinearity:
    def test_fano_is_linear(self):
        assert is_linear(FANO_PLANE)
        assert degree_profile(FANO_PLANE).max_pair_degree == 1

    def test_clique_is_not_linear(self):
        assert not is_linear(complete(4, 3))

    @settings(max_examples=50, deadline=None)
    @given(hypergraphs())
    def test_linear_subgraph(self, host):
        linear = linear_subgraph(host)
        assert is_linear(linear)
        assert set(linear.edges) <= set(host.edges)
        if host.num_edges:
            pair_degree = degree_profile(host).max_pair_degree
            assert linear.num_edges >= host.num_edges / (9 * pair_degree)


class TestPartiteReduce:
    def test_transversal_edges(self):
        host = Hypergraph(3, 6, [(0, 2, 4), (0, 1, 4), (1, 3, 5)])
        partition = Partition.from_parts([[0, 1], [2, 3], [4, 5]], 6)
        assert transversal_edges(host, partition) == [1, 2]

    def test_hint_is_used(self):
        host = partite_complete((2, 2, 2))
        partition, reduced = partite_reduce(host, seed=0)
        assert partition == host.partition
        assert reduced.num_edges == 8

    @settings(max_examples=30, deadline=None)
    @given(hypergraphs(min_vertices=3, max_vertices=8))
    def test_bound(self, host):
        partition, reduced = partite_reduce(host, seed=1)
        assert reduced.partition == partition
        assert reduced.num_edges >= host.num_edges / 27
        assert set(reduced.edges) <= set(host.edges)
        for edge in reduced.edges:
            assert partition.is_transversal(edge)

    @pytest.mark.parametrize("seed", range(200))
    def test_single_edge_survives(self, seed):
        host = Hypergraph(5, 5, [(0, 1, 2, 3, 4)])
        partition, reduced = partite_reduce(host, seed=seed)
        assert reduced.edges == host.edges
        assert partition.is_transversal((0, 1, 2, 3, 4))

    def test_single_edge_without_random_partitions(self):
        host = Hypergraph(5, 5, [(0, 1, 2, 3, 4)])
        _, reduced = partite_reduce(host, seed=0, retries=0)
        assert reduced.num_edges == 1

    @settings(max_examples=20, deadline=None)
    @given(hypergraphs(uniformity=4, min_vertices=4, max_vertices=7))
    def test_bound_four_uniform(self, host):
        partition, reduced = partite_reduce(host, seed=2, retries=1)
        assert reduced.num_edges >= host.num_edges / 4**4
        for edge in reduced.edges:
            assert partition.is_transversal(edge)

    def test_deterministic(self):
        host = random_hypergraph(12, 3, 0.3, seed=5)
        first = partite_reduce(host, seed=3)
        second = partite_reduce(host, seed=3)
        assert first[0] == second[0]
        assert first[1] == second[1]


class TestInducedKGraph:
    def test_complete_partite(self):
        host = partite_complete((2, 2, 2))
        graph = induced_k_graph(host, host.partition, {0, 1})
        assert graph.uniformity == 2
        assert graph.edges == ((0, 2), (0, 3), (1, 2), (1, 3))

    def test_duplicates_collapse(self):
        host = partite_complete((1, 1, 3))
        graph = induced_k_graph(host, host.partition, {0, 1})
        assert graph.num_edges == 1

    @pytest.mark.parametrize("index_set", [set(), {3}, {-1, 0}])
    def test_invalid_index_set(self, index_set):
        host = partite_complete((2, 2, 2))
        with pytest.raises(InvalidInput):
            induced_k_graph(host, host.partition, index_set)


class TestMatching:
    @settings(max_examples=50, deadline=None)
    @given(hypergraphs())
    def test_greedy_matching(self, host):
        matching = greedy_matching(host)
        edges = matching.edges(host)
        for first, second in itertools.combinations(edges, 2):
            assert not set(first) & set(second)
        if host.num_edges:
            delta = degree_profile(host).max_degree
            assert matching.size >= math.ceil(host.num_edges / (3 * delta))

    def test_empty(self):
        assert greedy_matching(Hypergraph(3, 4)).size == 0

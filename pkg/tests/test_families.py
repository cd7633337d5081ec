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
Tests of the detectors, the canonical forms and the family algebra.
"""
import math
import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from relturan.exceptions import InvalidInput, ResourceExceeded
from relturan.generators import FANO_PLANE, complete, random_hypergraph, sunflower_host
from relturan.hypergraph import Hypergraph, degree_profile
from relturan.families.berge import find_berge_cycle, girth
from relturan.families.canonical import are_isomorphic, canonical_form
from relturan.families.embedding import (
    F5_COUNTING_PATTERN,
    F5_PATTERN,
    contains_f5,
    contains_loose_cycle,
    count_f5,
    count_loose_cycles,
    loose_cycle,
)
from relturan.families.family import FamilyKind, ForbiddenFamily
from relturan.families.local_iso import local_isomorphic_images, local_isomorphism_exists
from relturan.families.projection import project_family
from relturan.families.sunflower import find_sunflower_plus, is_sunflower, is_sunflower_plus
from relturan.families.witness import WitnessKind, validate_witness

from tests.strategies import hypergraphs

C4 = Hypergraph(2, 4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def cycle_graph(length: int) -> Hypergraph:
    return Hypergraph(2, length, [(i, (i + 1) % length) for i in range(length)])


def brute_force_berge(host: Hypergraph, length: int) -> bool:
    for edges in itertools.permutations(host.edges, length):
        meets = [set(edges[i - 1]) & set(edges[i]) for i in range(length)]
        for core in itertools.product(*meets):
            if len(set(core)) == length:
                return True
    return False


def incidence_graph(host: Hypergraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from((("v", vertex) for vertex in range(host.vertex_count)), side="v")
    for edge_id, edge in enumerate(host.edges):
        graph.add_node(("e", edge_id), side="e")
        graph.add_edges_from((("e", edge_id), ("v", vertex)) for vertex in edge)
    return graph


class TestBerge:
    def test_two_cycle(self):
        assert find_berge_cycle(complete(4, 3), 2) is not None
        assert find_berge_cycle(FANO_PLANE, 2) is None

    def test_fano_triangle(self):
        witness = find_berge_cycle(FANO_PLANE, 3)
        assert witness is not None
        assert witness.kind == WitnessKind.BERGE_CYCLE
        assert validate_witness(FANO_PLANE, witness)

    def test_girth(self):
        assert girth(FANO_PLANE, 5) == 3
        assert girth(complete(4, 3), 5) == 2
        assert girth(sunflower_host(5, 1, 3), 5) == math.inf

    def test_too_short(self):
        with pytest.raises(InvalidInput):
            find_berge_cycle(FANO_PLANE, 1)

    def test_sunflower_kernel_long_enough(self):
        host = sunflower_host(4, 4, 5)
        witness = find_berge_cycle(host, 4)
        assert witness is not None
        assert find_berge_cycle(host, 4, forbid_sunflower=True) is None

    @settings(max_examples=40, deadline=None)
    @given(hypergraphs(uniformity=2, min_vertices=3, max_vertices=7), st.integers(min_value=3, max_value=5))
    def test_graph_cycles(self, host, length):
        graph = nx.Graph(list(host.edges))
        expected = any(
            len(cycle) == length for cycle in nx.simple_cycles(graph, length_bound=length)
        )
        assert (find_berge_cycle(host, length) is not None) == expected

    @settings(max_examples=40, deadline=None)
    @given(hypergraphs(max_vertices=6), st.integers(min_value=2, max_value=3))
    def test_brute_force(self, host, length):
        witness = find_berge_cycle(host, length)
        assert (witness is not None) == brute_force_berge(host, length)
        if witness is not None:
            assert validate_witness(host, witness)

    @settings(max_examples=30, deadline=None)
    @given(hypergraphs(max_vertices=6))
    def test_through_edge(self, host):
        family = ForbiddenFamily.berge_cycle(3, 3)
        through_found = False
        for edge in host.edges:
            witness = family.find(host, through=edge)
            if witness is not None:
                through_found = True
                assert edge in witness.edges
                assert validate_witness(host, witness)
        assert through_found == family.contains(host)


class TestSunflower:
    def test_is_sunflower(self):
        host = sunflower_host(4, 2, 4)
        assert is_sunflower(host).kernel == frozenset({0, 1})
        assert is_sunflower(host.subgraph([0])).kernel is None
        assert is_sunflower(FANO_PLANE) is None
        with pytest.raises(InvalidInput):
            is_sunflower(Hypergraph(3, 3))

    def test_sunflower_plus(self):
        host = Hypergraph(3, 6, [(0, 1, 2), (0, 3, 4), (0, 1, 5)])
        witness = is_sunflower_plus(host, 2)
        assert witness is not None
        assert witness.kernel == frozenset({0})
        assert witness.extra_edge in host.edges
        assert validate_witness(host, witness)
        found = find_sunflower_plus(host, 2)
        assert found is not None
        assert validate_witness(host, found)

    def test_pure_sunflower_has_no_plus(self):
        assert find_sunflower_plus(sunflower_host(5, 2, 4), 3) is None
        assert is_sunflower_plus(sunflower_host(3, 1, 3), 3) is None

    @settings(max_examples=30, deadline=None)
    @given(hypergraphs(max_vertices=6))
    def test_through_edge(self, host):
        found = find_sunflower_plus(host, 3)
        through = [find_sunflower_plus(host, 3, through=edge) for edge in host.edges]
        assert (found is not None) == any(witness is not None for witness in through)
        for edge, witness in zip(host.edges, through):
            if witness is not None:
                assert edge in witness.edges
                assert validate_witness(host, witness)


class TestEmbedding:
    def test_loose_cycle_pattern(self):
        pattern = loose_cycle(4, 3)
        assert pattern.vertex_count == 8
        assert pattern.num_edges == 4
        assert degree_profile(pattern).max_degree == 2
        with pytest.raises(InvalidInput):
            loose_cycle(2, 3)

    def test_loose_triangles_of_fano(self):
        witness = contains_loose_cycle(FANO_PLANE, 3)
        assert witness is not None
        assert validate_witness(FANO_PLANE, witness)
        assert count_loose_cycles(FANO_PLANE, 3) == 28
        assert contains_loose_cycle(complete(4, 3), 3) is None

    def test_f5_variants_differ(self):
        assert not are_isomorphic(F5_PATTERN, F5_COUNTING_PATTERN)
        assert contains_f5(F5_PATTERN) is not None
        assert contains_f5(F5_COUNTING_PATTERN, variant="counting") is not None
        with pytest.raises(InvalidInput):
            contains_f5(complete(5, 4))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=0, max_value=1000))
    def test_f5_count_bound(self, seed):
        host = random_hypergraph(8, 3, 0.3, seed)
        profile = degree_profile(host)
        for variant in ("caption", "counting"):
            assert count_f5(host, variant) <= 9 * profile.max_pair_degree * profile.max_degree * host.num_edges


class TestCanonical:
    @settings(max_examples=40, deadline=None)
    @given(hypergraphs(max_vertices=6), st.randoms(use_true_random=False))
    def test_relabelling(self, host, random):
        order = list(range(host.vertex_count))
        random.shuffle(order)
        relabelled = Hypergraph(3, host.vertex_count, [[order[v] for v in edge] for edge in host.edges])
        assert canonical_form(host) == canonical_form(relabelled)
        assert are_isomorphic(host, relabelled)

    @settings(max_examples=60, deadline=None)
    @given(hypergraphs(min_vertices=5, max_vertices=5), hypergraphs(min_vertices=5, max_vertices=5))
    def test_against_networkx(self, first, second):
        expected = nx.is_isomorphic(
            incidence_graph(first),
            incidence_graph(second),
            node_match=lambda a, b: a["side"] == b["side"],
        )
        assert are_isomorphic(first, second) == expected


class TestLocalIsomorphism:
    def test_wrap_around(self):
        chi = local_isomorphism_exists(cycle_graph(6), cycle_graph(3))
        assert chi is not None
        images = {tuple(sorted((chi[a], chi[b]))) for a, b in cycle_graph(6).edges}
        assert images == set(cycle_graph(3).edges)

    def test_no_map_to_bipartite(self):
        assert local_isomorphism_exists(cycle_graph(3), cycle_graph(6)) is None

    def test_images(self):
        images = local_isomorphic_images(cycle_graph(6), 6)
        assert any(are_isomorphic(image, cycle_graph(3)) for image in images)
        assert any(are_isomorphic(image, cycle_graph(6)) for image in images)
        for first, second in itertools.combinations(images, 2):
            assert not are_isomorphic(first, second)

    def test_four_cycle_is_rigid(self):
        images = local_isomorphic_images(C4, 4)
        assert len(images) == 1
        assert are_isomorphic(images[0], C4)


class TestProjection:
    def test_loose_cycle(self):
        assert project_family(loose_cycle(3, 3), 2) == ()
        assert project_family(loose_cycle(5, 3), 2) == ()

    @pytest.mark.parametrize("length", [3, 4])
    def test_loose_cycle_closed_form(self, length):
        enumerated = project_family(loose_cycle(length, 4), 2)
        projected = ForbiddenFamily.loose_cycle(length, 4).projected(2)
        if length % 2:
            assert enumerated == ()
            assert projected.is_empty
        else:
            assert len(enumerated) == 1
            assert are_isomorphic(enumerated[0], loose_cycle(length, 3))
            assert projected == ForbiddenFamily.loose_cycle(length, 3)

    def test_f5(self):
        assert project_family(F5_PATTERN, 2) == ()
        projected = project_family(F5_COUNTING_PATTERN, 2)
        assert len(projected) == 1
        assert are_isomorphic(projected[0], C4)

    def test_invalid_k(self):
        with pytest.raises(InvalidInput):
            project_family(F5_PATTERN, 3)


class TestForbiddenFamily:
    @pytest.mark.parametrize(
        "spec",
        ["berge:4", "berge-upto:3", "berge-ns:5", "berge-upto-ns:3", "loose:5", "sunflower-plus:4", "none"],
    )
    def test_spec_strings(self, spec):
        family = ForbiddenFamily.parse(spec, 4)
        assert str(family) == spec
        assert family.canonical() == f"r4:{spec}"

    def test_f5_spec_strings(self):
        assert str(ForbiddenFamily.parse("f5", 3)) == "f5"
        assert str(ForbiddenFamily.parse("f5:counting", 3)) == "f5:counting"

    def test_union(self):
        family = ForbiddenFamily.parse("berge:5|berge:2|berge:5", 3)
        assert family.kind == FamilyKind.UNION
        assert str(family) == "berge:2|berge:5"
        assert family.contains(complete(4, 3))

    @pytest.mark.parametrize(
        "spec, uniformity",
        [("berge:x", 3), ("blob:3", 3), ("union:3", 3), ("berge:1", 3), ("loose:2", 3), ("f5", 4), ("f5:other", 3)],
    )
    def test_malformed(self, spec, uniformity):
        with pytest.raises(InvalidInput):
            ForbiddenFamily.parse(spec, uniformity)

    def test_patterns_file(self, tmp_path):
        path = tmp_path / "f5.hg"
        F5_PATTERN.save(path)
        family = ForbiddenFamily.parse(f"patterns:{path}", 3)
        assert family.contains(F5_PATTERN)
        assert not family.contains(F5_COUNTING_PATTERN)

    def test_uniformity_mismatch(self):
        with pytest.raises(InvalidInput):
            ForbiddenFamily.berge_cycle(3, 4).find(FANO_PLANE)

    def test_empty_family(self):
        family = ForbiddenFamily.none(3)
        assert family.is_empty
        assert not family.contains(complete(5, 3))

    def test_sunflower_free_family(self):
        family = ForbiddenFamily.berge_sunflower_free(3, 3)
        assert family.contains(FANO_PLANE)
        assert not family.contains(sunflower_host(6, 2, 3))

    def test_enumerate_copies(self):
        assert len(ForbiddenFamily.berge_cycle(2, 3).enumerate_copies(complete(4, 3))) == 6
        assert len(ForbiddenFamily.loose_cycle(3, 3).enumerate_copies(FANO_PLANE)) == 28
        with pytest.raises(ResourceExceeded):
            ForbiddenFamily.loose_cycle(3, 3).enumerate_copies(FANO_PLANE, budget=5)

    def test_copy_bound(self):
        host = random_hypergraph(9, 3, 0.3, seed=3)
        family = ForbiddenFamily.loose_cycle(3, 3)
        bound = family.copy_bound(degree_profile(host), host.num_edges)
        assert len(family.enumerate_copies(host)) <= bound
        assert ForbiddenFamily.berge_cycle(3, 3).copy_bound(degree_profile(host), host.num_edges) is None

    def test_projected(self):
        family = ForbiddenFamily.berge_sunflower_free(4, 4)
        assert family.projected(2) == ForbiddenFamily.berge_sunflower_free(4, 3)
        assert ForbiddenFamily.berge_cycle(5, 4).projected(2) == ForbiddenFamily.berge_sunflower_free(5, 3)
        assert ForbiddenFamily.loose_cycle(3, 3).projected(2).is_empty
        assert ForbiddenFamily.loose_cycle(5, 4).projected(2).is_empty
        assert ForbiddenFamily.loose_cycle(6, 4).projected(2) == ForbiddenFamily.loose_cycle(6, 3)
        assert ForbiddenFamily.loose_cycle(5, 6).projected(2) == ForbiddenFamily.loose_cycle(5, 5)
        with pytest.raises(InvalidInput):
            ForbiddenFamily.berge_cycle(3, 4).projected(2)

    def test_projected_f5(self):
        projected = ForbiddenFamily.f5("counting").projected(2)
        assert projected.uniformity == 2
        assert projected.contains(C4)
        assert not projected.contains(cycle_graph(5))
        assert ForbiddenFamily.f5().projected(2).is_empty

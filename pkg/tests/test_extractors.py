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
Tests of the extractors: codegree split, homomorphism, deletion and matching.
"""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relturan.configuration import OracleConfiguration
from relturan.exceptions import (
    ExtractionPreconditionError,
    InvalidInput,
    ResourceExceeded,
    VerificationFailure,
)
from relturan.families.family import ForbiddenFamily
from relturan.generators import complete, partite_complete
from relturan.hypergraph import Hypergraph, Partition
from relturan.extractors.base import (
    ExtractionReport,
    ExtractorConfig,
    GreedyExtractor,
    IdentityExtractor,
    TrialOutcome,
    certify,
    inner_extractor_for,
    run_trials,
)
from relturan.extractors.codegree import (
    codegree_split,
    dyadic_select,
    heaviest_index_set,
    heavy_edges_any,
    k_set_degrees,
    k_sets,
    to_prefix,
)
from relturan.extractors.deletion import deletion_extract, greedy_hitting_set
from relturan.extractors.homomorphism import hom_retained, random_hom_extract
from relturan.extractors.matching import contract, matching_extract
from relturan.oracle import extremal_target
from relturan.utils import make_rng

from tests.strategies import hypergraphs


def partite(parts, edges):
    """
    3-graph on the union of the parts with the partition attached.
    """
    vertex_count = sum(len(part) for part in parts)
    return Hypergraph(3, vertex_count, edges, Partition.from_parts(parts, vertex_count))


def two_classes():
    """
    Pair (0, 2) of 2-degree 8 and pair (1, 2) of 2-degree 2.
    """
    edges = [(0, 2, c) for c in range(3, 11)] + [(1, 2, 3), (1, 2, 4)]
    return partite([[0, 1], [2], list(range(3, 11))], edges)


def is_matching(edges):
    return all(set(first).isdisjoint(second) for first, second in itertools.combinations(edges, 2))


def _sized_trial(sizes, index):
    return TrialOutcome(list(range(sizes[index])))


class TestExtractorConfig:
    def test_invalid_values(self):
        with pytest.raises(InvalidInput):
            ExtractorConfig(trials=0)
        with pytest.raises(InvalidInput):
            ExtractorConfig(inner_trials=0)
        with pytest.raises(InvalidInput):
            ExtractorConfig(t=0)

    def test_child(self):
        config = ExtractorConfig(seed=5, trials=100, inner_trials=3, t=7, thresholds={"D": 2.0}, jobs=4)
        child = config.child(1, 2)
        assert child.seed != config.seed
        assert child.seed == config.child(1, 2).seed
        assert child.seed != config.child(2, 1).seed
        assert child.trials == 3
        assert child.t is None
        assert child.thresholds == {}
        assert child.jobs == 1
        assert child.oracle is config.oracle


class TestTrials:
    def test_lowest_index_wins_ties(self):
        sizes = [1, 3, 3, 2]
        best, outcomes = run_trials(lambda index: _sized_trial(sizes, index), len(sizes))
        assert best == 1
        assert [len(outcome.retained_ids) for outcome in outcomes] == sizes

    def test_single_trial(self):
        best, outcomes = run_trials(lambda index: TrialOutcome([]), 1)
        assert best == 0
        assert len(outcomes) == 1


class TestCertify:
    def test_contains(self):
        with pytest.raises(VerificationFailure):
            certify(complete(4, 3), ForbiddenFamily.berge_cycle(2, 3), True)

    def test_free(self):
        assert certify(Hypergraph(3, 6, [(0, 1, 2), (3, 4, 5)]), ForbiddenFamily.berge_cycle(2, 3), True)

    def test_not_checked(self):
        assert not certify(complete(4, 3), ForbiddenFamily.berge_cycle(2, 3), False)

    def test_report_flags_once(self):
        report = ExtractionReport(complete(4, 3), None, 4, 1.0, False)  # type: ignore[arg-type]
        report.flag("t-guard")
        report.flag("t-guard")
        assert report.flags == ["t-guard"]
        assert report.achieved == 4


class TestInnerExtractors:
    def test_identity(self):
        host = complete(5, 2)
        assert IdentityExtractor().extract(host, ForbiddenFamily.none(2), ExtractorConfig()) is host
        with pytest.raises(InvalidInput):
            IdentityExtractor().extract(host, ForbiddenFamily.berge_cycle(3, 2), ExtractorConfig())

    def test_inner_extractor_for(self):
        assert isinstance(inner_extractor_for(ForbiddenFamily.none(2)), IdentityExtractor)
        assert isinstance(inner_extractor_for(ForbiddenFamily.berge_cycle(3, 2)), GreedyExtractor)

    def test_greedy_is_maximal(self):
        host = complete(6, 3)
        family = ForbiddenFamily.berge_cycle(2, 3)
        output = GreedyExtractor().extract(host, family, ExtractorConfig(trials=2))
        assert not family.contains(output)
        kept = set(output.edges)
        for edge in host.edges:
            if edge not in kept:
                assert family.find(output.with_edges(output.edges + (edge,)), through=edge) is not None

    @given(host=hypergraphs(uniformity=2, min_vertices=3, max_vertices=7), seed=st.integers(0, 100))
    @settings(max_examples=20, deadline=None)
    def test_greedy_triangle_free(self, host, seed):
        family = ForbiddenFamily.berge_cycle(3, 2)
        output = GreedyExtractor().extract(host, family, ExtractorConfig(seed=seed, trials=1))
        assert not family.contains(output)
        assert set(output.edges) <= set(host.edges)


class TestCodegree:
    def test_k_sets(self):
        host = partite_complete((1, 1, 4))
        assert k_sets(host, (0, 1)) == [(0, 1)] * 4
        assert k_set_degrees(host, (0, 1)) == [4] * 4
        assert k_set_degrees(host, (0, 2)) == [1] * 4

    def test_split(self):
        host = partite_complete((1, 1, 4))
        assert codegree_split(host, 2, 4) == ([0, 1, 2, 3], [])
        assert codegree_split(host, 2, 5) == ([], [0, 1, 2, 3])
        assert codegree_split(host, 2, 2, (1, 2)) == ([], [0, 1, 2, 3])

    def test_single_vertices(self):
        host = two_classes()
        heavy, light = codegree_split(host, 1, 8)
        assert heavy == list(range(8))
        assert light == [8, 9]

    def test_split_errors(self):
        with pytest.raises(InvalidInput):
            codegree_split(complete(5, 3), 2, 1)
        host = partite_complete((1, 1, 4))
        with pytest.raises(InvalidInput):
            codegree_split(host, 3, 1)
        with pytest.raises(InvalidInput):
            codegree_split(host, 0, 1)
        with pytest.raises(InvalidInput):
            codegree_split(host, 2, 1, (0,))

    def test_heavy_any(self):
        host = two_classes()
        assert heavy_edges_any(host, 2, 8) == list(range(8))
        assert heavy_edges_any(host, 2, 2) == list(range(10))
        assert heavy_edges_any(host, 2, 9) == []

    def test_heaviest_index_set(self):
        assert heaviest_index_set(partite_complete((1, 1, 4)), 2, 2) == (0, 1)
        assert heaviest_index_set(partite_complete((4, 1, 1)), 2, 2) == (1, 2)
        # nothing is heavy: the prefix is kept
        assert heaviest_index_set(partite_complete((2, 2, 2)), 2, 10) == (0, 1)

    def test_to_prefix(self):
        host = partite_complete((4, 1, 1))
        reordered = to_prefix(host, (1, 2))
        assert reordered.edges == host.edges
        assert reordered.partition.part_of[4] == 0
        assert reordered.partition.part_of[5] == 1
        assert reordered.partition.part_of[0] == 2
        assert codegree_split(reordered, 2, 4) == ([0, 1, 2, 3], [])

    def test_dyadic_select(self):
        selected, class_threshold = dyadic_select(two_classes(), 2, 2, (0, 1))
        assert selected == list(range(8))
        assert class_threshold == 8.0

    def test_dyadic_boundaries(self):
        # 2-degrees 8 and 2 at D = 4: only the first pair is heavy, in the class j = 1
        selected, class_threshold = dyadic_select(two_classes(), 2, 4, (0, 1))
        assert selected == list(range(8))
        assert class_threshold == 8.0

    def test_dyadic_light_branch(self):
        host = partite(
            [[0, 1, 2, 3], [4], [5, 6]],
            [(0, 4, 5), (0, 4, 6), (1, 4, 5), (2, 4, 5), (3, 4, 6)],
        )
        with pytest.raises(ExtractionPreconditionError):
            dyadic_select(host, 2, 2, (0, 1))
        with pytest.raises(ExtractionPreconditionError):
            dyadic_select(two_classes(), 2, 9, (0, 1))
        with pytest.raises(InvalidInput):
            dyadic_select(two_classes(), 2, 0, (0, 1))

    @given(host=hypergraphs(uniformity=3, min_vertices=3, max_vertices=7))
    @settings(max_examples=30, deadline=None)
    def test_split_partitions_edges(self, host):
        partition = Partition([vertex % 3 for vertex in range(host.vertex_count)], 3)
        kept = [edge for edge in host.edges if partition.is_transversal(edge)]
        partite_host = Hypergraph(3, host.vertex_count, kept, partition)
        heavy, light = codegree_split(partite_host, 2, 2)
        assert sorted(heavy + light) == list(range(partite_host.num_edges))
        assert set(heavy) <= set(heavy_edges_any(partite_host, 2, 2))


class TestHomomorphism:
    def test_identity_map(self):
        host = complete(4, 3)
        assert hom_retained(host, complete(4, 3), np.arange(4)) == [0, 1, 2, 3]

    def test_target_edges_only(self):
        host = complete(4, 3)
        target = Hypergraph(3, 4, [(0, 1, 2)])
        assert hom_retained(host, target, np.arange(4)) == [0]

    def test_not_injective(self):
        host = Hypergraph(3, 3, [(0, 1, 2)])
        assert hom_retained(host, complete(3, 3), np.array([0, 0, 1])) == []

    def test_meeting_edges_with_same_image(self):
        host = Hypergraph(3, 4, [(0, 1, 2), (0, 1, 3)])
        assert hom_retained(host, complete(3, 3), np.array([0, 1, 2, 2])) == []

    def test_disjoint_edges_with_same_image(self):
        host = Hypergraph(3, 6, [(0, 1, 2), (3, 4, 5)])
        assert hom_retained(host, complete(3, 3), np.array([0, 1, 2, 0, 1, 2])) == [0, 1]

    def test_empty(self):
        assert hom_retained(Hypergraph(3, 4), complete(4, 3), np.arange(4)) == []

    @given(host=hypergraphs(uniformity=3, min_vertices=3, max_vertices=7), seed=st.integers(0, 1000))
    @settings(max_examples=40, deadline=None)
    def test_retained_edges_are_locally_injective(self, host, seed):
        target = Hypergraph(3, 4, [(0, 1, 2), (0, 1, 3), (1, 2, 3)])
        chi = np.random.default_rng(seed).integers(0, 4, size=host.vertex_count)
        retained = hom_retained(host, target, chi)
        images = {edge_id: tuple(sorted(int(chi[v]) for v in host.edges[edge_id])) for edge_id in retained}
        for edge_id in retained:
            assert target.has_edge(images[edge_id])
        for first, second in itertools.combinations(retained, 2):
            if not set(host.edges[first]).isdisjoint(host.edges[second]):
                assert images[first] != images[second]

    def test_single_edge_target_gives_matching(self):
        family = ForbiddenFamily.berge_cycle(2, 3)
        report = random_hom_extract(complete(6, 3), Hypergraph(3, 3, [(0, 1, 2)]), family, ExtractorConfig(trials=4))
        assert report.verified_free
        assert is_matching(report.retained.edges)
        assert len(report.trial_log) == 4
        assert report.achieved == max(report.trial_log)
        assert report.guarantee == pytest.approx(20 / 27)
        assert report.parameters["t"] == 3
        assert report.parameters["retention_probability"] == pytest.approx(6 / 27)
        assert "t-guard" in report.flags

    @pytest.mark.slow
    def test_expected_size(self):
        # the ratio to e(J) t^-3 e(H) is 6 ((t - 3) / t)^5 on K_8^3, above 0.9 from t = 10
        t, trials, seed = 12, 2000, 11
        host = complete(8, 3)
        family = ForbiddenFamily.berge_up_to(4, 3)
        target = extremal_target(t, 3, family, config=OracleConfiguration(inexact_restarts=4, swap_limit=200))
        assert target.num_edges > 0
        assert not family.contains(target)

        report = random_hom_extract(host, target, family, ExtractorConfig(seed=seed, trials=trials, verify=False))
        assert len(report.trial_log) == trials
        assert np.mean(report.trial_log) >= 0.9 * report.guarantee

        target_edges = set(target.edges)
        hits = []
        for index in range(trials):
            chi = make_rng(seed, index).integers(0, t, size=host.vertex_count)
            images = [tuple(sorted(int(chi[v]) for v in edge)) for edge in host.edges]
            hits.append(sum(image in target_edges for image in images) / host.num_edges)
        probability = report.parameters["retention_probability"]
        assert probability == pytest.approx(6 * target.num_edges / t**3)
        sigma = np.std(hits, ddof=1) / np.sqrt(trials)
        assert abs(np.mean(hits) - probability) <= 3 * sigma

    def test_deterministic(self):
        family = ForbiddenFamily.none(3)
        target = complete(4, 3)
        first = random_hom_extract(complete(7, 3), target, family, ExtractorConfig(seed=3, trials=5))
        second = random_hom_extract(complete(7, 3), target, family, ExtractorConfig(seed=3, trials=5))
        assert first.retained == second.retained
        assert first.trial_log == second.trial_log

    def test_jobs_do_not_change_the_result(self):
        family = ForbiddenFamily.none(3)
        target = complete(4, 3)
        sequential = random_hom_extract(complete(7, 3), target, family, ExtractorConfig(seed=1, trials=4))
        parallel = random_hom_extract(complete(7, 3), target, family, ExtractorConfig(seed=1, trials=4, jobs=2))
        assert sequential.trial_log == parallel.trial_log
        assert sequential.retained == parallel.retained

    def test_errors(self):
        family = ForbiddenFamily.none(3)
        with pytest.raises(InvalidInput):
            random_hom_extract(complete(5, 3), complete(5, 4), family, ExtractorConfig())
        with pytest.raises(InvalidInput):
            random_hom_extract(complete(5, 3), Hypergraph(3, 2), family, ExtractorConfig())


class TestDeletion:
    def test_hitting_set(self):
        copies = [frozenset({0, 1}), frozenset({1, 2}), frozenset({3})]
        assert greedy_hitting_set(copies) == [1, 3]
        assert greedy_hitting_set([frozenset()]) == []
        assert greedy_hitting_set([]) == []

    def test_ties_go_to_the_smallest_id(self):
        assert greedy_hitting_set([frozenset({4, 2})]) == [2]

    def test_keep_everything(self):
        family = ForbiddenFamily.berge_cycle(2, 3)
        report = deletion_extract(complete(6, 3), family, 1.0, ExtractorConfig(trials=2))
        assert report.verified_free
        assert report.achieved >= 1
        assert report.parameters["mean_kept"] == 20
        assert report.parameters["mean_copies"] == 90

    def test_free_host(self):
        host = Hypergraph(3, 9, [(0, 1, 2), (3, 4, 5), (6, 7, 8)])
        report = deletion_extract(host, ForbiddenFamily.berge_cycle(2, 3), 1.0, ExtractorConfig(trials=1))
        assert report.retained == host

    def test_copy_budget(self):
        family = ForbiddenFamily.berge_cycle(2, 3)
        with pytest.raises(ResourceExceeded) as info:
            deletion_extract(complete(6, 3), family, 1.0, ExtractorConfig(trials=1, copy_budget=10))
        assert "copy-budget" in info.value.partial.flags

    @pytest.mark.parametrize("probability", [0.0, -0.5, 1.5])
    def test_invalid_probability(self, probability):
        with pytest.raises(InvalidInput):
            deletion_extract(complete(5, 3), ForbiddenFamily.berge_cycle(2, 3), probability, ExtractorConfig())


class TestMatching:
    def test_contract(self):
        host = partite_complete((2, 2, 2))
        matching = [(0, 2), (1, 3)]
        contracted, lifted = contract(host, 2, list(range(host.num_edges)), matching)
        assert contracted.uniformity == 2
        assert contracted.vertex_count == 4
        assert contracted.num_edges == 4
        assert contracted.partition.num_parts == 2
        for edge, edge_id in lifted.items():
            assert contracted.has_edge(edge)
            assert host.edges[edge_id][:2] in matching

    def test_full_sampling(self):
        host = partite_complete((3, 3, 3))
        family = ForbiddenFamily.loose_cycle(3, 3)
        config = ExtractorConfig(trials=2, p_override=1.0)
        report = matching_extract(host, 2, family, inner_extractor_for(family.projected(2)), config)
        assert report.achieved == 9
        assert report.verified_free
        assert is_matching({edge[:2] for edge in report.retained.edges})
        assert report.parameters["k"] == 2
        assert report.parameters["D"] == 3

    def test_sampled(self):
        host = partite_complete((3, 3, 3))
        family = ForbiddenFamily.loose_cycle(3, 3)
        report = matching_extract(host, 2, family, IdentityExtractor(), ExtractorConfig(trials=8))
        assert report.verified_free
        assert report.achieved <= 9
        assert len(report.trial_log) == 8
        assert is_matching({edge[:2] for edge in report.retained.edges})

    def test_pruning_is_rare(self):
        # every pair of parts 0 x 1 has 2-degree 8, on random vertices of part 2
        rng = np.random.default_rng(4)
        first, second, third = range(16), range(16, 32), range(32, 96)
        edges = [
            (u, v, 32 + int(w))
            for u in first
            for v in second
            for w in rng.choice(len(third), size=8, replace=False)
        ]
        host = partite([list(first), list(second), list(third)], edges)
        family = ForbiddenFamily.loose_cycle(3, 3)
        report = matching_extract(host, 2, family, IdentityExtractor(), ExtractorConfig(seed=2, trials=20))
        assert report.input_profile.max_degree >= 64
        assert report.parameters["D"] == 8
        assert "d-range" not in report.flags
        assert report.parameters["mean_pruned_fraction"] <= 0.1
        prune = [stage for stage in report.pipeline_trace if stage.name == "prune"]
        assert prune[0].parameters["pruned_fraction"] <= 0.1
        assert report.verified_free

    def test_errors(self):
        family = ForbiddenFamily.loose_cycle(3, 3)
        with pytest.raises(InvalidInput):
            matching_extract(complete(6, 3), 2, family, IdentityExtractor(), ExtractorConfig())
        host = partite_complete((3, 3, 3))
        for k in (1, 3):
            with pytest.raises(InvalidInput):
                matching_extract(host, k, family, IdentityExtractor(), ExtractorConfig())
        with pytest.raises(InvalidInput):
            matching_extract(host, 2, family, IdentityExtractor(), ExtractorConfig(), threshold=100)

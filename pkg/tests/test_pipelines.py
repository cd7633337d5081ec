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
Tests of the full extraction pipelines.
"""
import pytest

from relturan.exceptions import InvalidInput
from relturan.families.family import ForbiddenFamily
from relturan.generators import complete, generate, parse_host_spec, sunflower_host
from relturan.hypergraph import Hypergraph
from relturan.extractors.base import ExtractorConfig
from relturan.extractors.pipelines import (
    PIPELINES,
    BergePipelineExtractor,
    pipeline_b53,
    pipeline_berge,
    pipeline_f5,
    pipeline_loose,
    reference_exponent,
    run_pipeline,
)

CASES = [
    ("berge", 3, ForbiddenFamily.berge_sunflower_free(3, 3)),
    ("berge", 4, ForbiddenFamily.berge_sunflower_free(4, 3)),
    ("b53", None, ForbiddenFamily.berge_cycle(5, 3)),
    ("f5", None, ForbiddenFamily.f5("caption")),
    ("loose", 3, ForbiddenFamily.loose_cycle(3, 3)),
    ("loose", 4, ForbiddenFamily.loose_cycle(4, 3)),
]


def stage_names(report):
    return [stage.name for stage in report.pipeline_trace]


class TestReferenceExponent:
    def test_values(self):
        assert reference_exponent("berge", 4, 3) == pytest.approx(-3 / 4)
        assert reference_exponent("berge", 5, 4) == pytest.approx(-1 + 1 / 6)
        assert reference_exponent("b53") == pytest.approx(-3 / 4)
        assert reference_exponent("f5") == pytest.approx(-3 / 5)
        assert reference_exponent("loose", 3) == pytest.approx(-2 / 3)
        assert reference_exponent("loose", 3, linear_host=True) == pytest.approx(-1 / 2)

    def test_errors(self):
        with pytest.raises(InvalidInput):
            reference_exponent("tight", 3)
        with pytest.raises(InvalidInput):
            reference_exponent("berge")


class TestPipelines:
    @pytest.mark.parametrize("vertex_count", [7, 8])
    @pytest.mark.parametrize("name,length,family", CASES)
    def test_complete_hosts(self, vertex_count, name, length, family):
        host = complete(vertex_count, 3)
        report = run_pipeline(name, host, ExtractorConfig(seed=1, trials=4), length=length)
        assert report.verified_free
        assert report.family == str(family)
        assert not family.contains(report.retained)
        assert set(report.retained.edges) <= set(host.edges)
        assert report.retained.partition is None
        assert report.input_edges == host.num_edges
        assert report.parameters["pipeline"] == name
        assert stage_names(report)[0] == "partite"

    def test_deterministic(self):
        host = complete(8, 3)
        first = run_pipeline("b53", host, ExtractorConfig(seed=3, trials=3))
        second = run_pipeline("b53", host, ExtractorConfig(seed=3, trials=3))
        assert first.retained == second.retained
        assert first.to_dict() == second.to_dict()

    def test_without_verification(self):
        report = pipeline_f5(complete(7, 3), ExtractorConfig(trials=2, verify=False))
        assert not report.verified_free

    def test_b53_heavy_branch(self):
        host = sunflower_host(10, 2, 3)
        report = pipeline_b53(host, ExtractorConfig(trials=4, inner_trials=2, max_target_size=5))
        names = stage_names(report)
        assert names[:3] == ["partite", "split:2", "dyadic:2"]
        assert "sparsify" in names
        assert report.parameters["k"] == 2
        assert report.verified_free
        assert report.achieved <= host.num_edges

    def test_berge_heavy_branch(self):
        host = sunflower_host(10, 2, 3)
        report = pipeline_berge(host, 4, ExtractorConfig(trials=4, inner_trials=2, max_target_size=5))
        assert "dyadic:2" in stage_names(report)
        assert report.verified_free
        assert set(report.retained.edges) <= set(host.edges)

    @pytest.mark.parametrize("length", [4, 5])
    def test_loose_four_uniform(self, length):
        host = complete(8, 4)
        report = pipeline_loose(host, length, ExtractorConfig(seed=0, trials=1, inner_trials=2))
        assert report.verified_free
        assert report.family == f"loose:{length}"
        assert set(report.retained.edges) <= set(host.edges)
        assert stage_names(report)[:2] == ["partite", "split:2"]

    def test_light_branch_target(self):
        report = pipeline_berge(complete(8, 3), 4, ExtractorConfig(trials=2))
        assert report.parameters["t"] == 5
        assert report.parameters["target_edges"] >= 1

    def test_forced_target_size(self):
        report = pipeline_b53(complete(7, 3), ExtractorConfig(trials=2, t=3))
        assert report.parameters["t"] == 3
        assert report.parameters["target_edges"] == 1


class TestBypass:
    def test_two_edges(self):
        host = Hypergraph(3, 5, [(0, 1, 2), (0, 1, 3)])
        for name in ("b53", "f5"):
            report = run_pipeline(name, host, ExtractorConfig())
            assert report.flags == ["oracle-bypass"]
            assert report.retained == host
            assert report.verified_free

    def test_low_degree(self):
        host = generate(parse_host_spec("fano"))
        report = pipeline_loose(host, 3, ExtractorConfig())
        assert "oracle-bypass" in report.flags
        assert report.pipeline_trace[0].parameters["proved_exact"]
        assert report.verified_free
        assert report.achieved == report.guarantee


class TestInputs:
    def test_unknown_pipeline(self):
        with pytest.raises(InvalidInput):
            run_pipeline("tight", complete(6, 3), ExtractorConfig())

    @pytest.mark.parametrize("name", ["berge", "loose"])
    def test_missing_length(self, name):
        with pytest.raises(InvalidInput):
            run_pipeline(name, complete(6, 3), ExtractorConfig())

    def test_pipeline_names(self):
        assert set(PIPELINES) == {"berge", "b53", "f5", "loose"}

    def test_wrong_uniformity(self):
        with pytest.raises(InvalidInput):
            pipeline_b53(complete(6, 4), ExtractorConfig())
        with pytest.raises(InvalidInput):
            pipeline_f5(complete(6, 4), ExtractorConfig())
        with pytest.raises(InvalidInput):
            pipeline_loose(complete(6, 2), 3, ExtractorConfig())

    def test_short_cycles(self):
        with pytest.raises(InvalidInput):
            pipeline_berge(complete(6, 3), 2, ExtractorConfig())
        with pytest.raises(InvalidInput):
            pipeline_loose(complete(6, 3), 2, ExtractorConfig())

    def test_berge_inner_extractor(self):
        star = Hypergraph(2, 4, [(0, 1), (0, 2), (0, 3)])
        inner = BergePipelineExtractor(4)
        assert inner.extract(star, ForbiddenFamily.none(2), ExtractorConfig()) is star
        with pytest.raises(InvalidInput):
            inner.extract(star, ForbiddenFamily.berge_cycle(3, 2), ExtractorConfig())

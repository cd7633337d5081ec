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
Full extraction pipelines.

Each pipeline puts the host in r-partite form, splits the edges by codegree
and sends the heavy part to the matching extractor and the light part to the
homomorphism or the deletion extractor. The output is checked against the
family the pipeline certifies.
"""
import math
import logging
from typing import Any, Dict, List, Optional, Tuple

from relturan.exceptions import InvalidInput
from relturan.hypergraph import DegreeProfile, Hypergraph, degree_profile, is_linear, partite_reduce
from relturan.families.family import ForbiddenFamily
from relturan.oracle import OracleQuery, ex_relative, extremal_target
from relturan.extractors.base import (
    BaseExtractor,
    ExtractionReport,
    ExtractorConfig,
    StageRecord,
    certify,
    inner_extractor_for,
)
from relturan.extractors.codegree import (
    codegree_split,
    dyadic_select,
    heaviest_index_set,
    heavy_edges_any,
    to_prefix,
)
from relturan.extractors.deletion import deletion_extract
from relturan.extractors.homomorphism import random_hom_extract
from relturan.extractors.matching import matching_extract
from relturan.utils import child_seed, clamp_probability

logger = logging.getLogger(__name__)

PIPELINES = ("berge", "b53", "f5", "loose")

_TARGETS: Dict[Tuple[int, int, str], Hypergraph] = {}


def reference_exponent(
    pipeline: str, length: Optional[int] = None, uniformity: int = 3, linear_host: bool = False
) -> float:
    """
    Exponent a in the lower bound e(H') >= Delta^{a - o(1)} e(H) proved for a pipeline.

    Args:
        pipeline (str): one of PIPELINES.
        length (Optional[int], optional): cycle length l for berge and loose. Defaults to None.
        uniformity (int, optional): r. Defaults to 3.
        linear_host (bool, optional): for loose cycles, whether the host is linear. Defaults to False.

    Raises:
        InvalidInput: if the pipeline is unknown or l is missing.

    Returns:
        float: the exponent.
    """
    if pipeline == "b53":
        return -3 / 4
    if pipeline == "f5":
        return -3 / 5
    if pipeline not in PIPELINES:
        raise InvalidInput(f"Unknown pipeline {pipeline}, expected one of {PIPELINES}.")
    if length is None:
        raise InvalidInput(f"The {pipeline} pipeline needs a cycle length.")
    if pipeline == "berge":
        return -1 + 1 / ((uniformity - 1) * (length // 2))
    if linear_host:
        return -1 + 1 / (length - 1)
    return -1 + 1 / length


def _target(t: int, r: int, family: ForbiddenFamily, config: ExtractorConfig) -> Hypergraph:
    key = (t, r, family.canonical())
    if key not in _TARGETS:
        _TARGETS[key] = extremal_target(t, r, family, config=config.oracle)
    return _TARGETS[key]


def _target_size(delta: int, r: int, exponent: float, config: ExtractorConfig) -> Tuple[int, bool]:
    """
    t = ceil(c Delta^exponent), at least r and at most max_target_size.
    Returns t and whether it was capped.
    """
    if config.t is not None:
        return max(config.t, r), False
    t = max(math.ceil(config.c_t * max(delta, 1) ** exponent), r)
    if t > config.max_target_size:
        logger.warning("t = %i capped to max_target_size = %i.", t, config.max_target_size)
        return max(config.max_target_size, r), True
    return t, False


def _bypass(
    host: Hypergraph, family: ForbiddenFamily, config: ExtractorConfig, profile: DegreeProfile
) -> Optional[ExtractionReport]:
    """
    Oracle answer for degenerate hosts (Delta <= r or at most two edges) small
    enough for the exact search.
    """
    degenerate = profile.max_degree <= host.uniformity or host.num_edges <= 2
    if not degenerate or host.num_edges > config.oracle.exact_edge_ceiling:
        return None
    result = ex_relative(
        OracleQuery(host.with_partition(None), family, config.oracle.budget, config.seed),
        config.oracle,
    )
    report = ExtractionReport(
        retained=result.witness_subgraph,
        input_profile=profile,
        input_edges=host.num_edges,
        guarantee=float(result.optimum),
        verified_free=certify(result.witness_subgraph, family, config.verify),
        family=str(family),
        trial_log=[result.optimum],
        pipeline_trace=[
            StageRecord(
                "oracle",
                host.num_edges,
                result.optimum,
                {"proved_exact": result.proved_exact, "nodes": result.nodes_explored},
            )
        ],
        parameters=config.to_dict(),
    )
    report.flag("oracle-bypass")
    logger.info("Degenerate host, oracle answer with %i edges.", result.optimum)
    return report


def _finish(
    host: Hypergraph,
    profile: DegreeProfile,
    stage_report: ExtractionReport,
    stages: List[StageRecord],
    flags: List[str],
    parameters: Dict[str, Any],
) -> ExtractionReport:
    report = ExtractionReport(
        retained=stage_report.retained.with_partition(None),
        input_profile=profile,
        input_edges=host.num_edges,
        guarantee=stage_report.guarantee,
        verified_free=stage_report.verified_free,
        family=stage_report.family,
        trial_log=stage_report.trial_log,
        pipeline_trace=stages + stage_report.pipeline_trace,
        parameters={**stage_report.parameters, **parameters},
    )
    for name in flags + stage_report.flags:
        report.flag(name)
    return report


def _heavy_branch(
    current: Hypergraph,
    k: int,
    threshold: float,
    family: ForbiddenFamily,
    inner: BaseExtractor,
    config: ExtractorConfig,
    stages: List[StageRecord],
) -> ExtractionReport:
    """
    Restrict to the heaviest index set, select a dyadic class and run the
    matching extractor on it.
    """
    index_set = heaviest_index_set(current, k, threshold)
    reordered = to_prefix(current, index_set)
    heavy, _ = codegree_split(reordered, k, threshold)
    heavy_host = reordered.subgraph(heavy)
    selected, class_threshold = dyadic_select(heavy_host, k, threshold, range(k))
    chosen = heavy_host.subgraph(selected)
    stages.append(
        StageRecord(
            f"dyadic:{k}",
            current.num_edges,
            chosen.num_edges,
            {"index_set": list(index_set), "D": threshold, "D_class": class_threshold},
        )
    )
    return matching_extract(chosen, k, family, inner, config, threshold=class_threshold)


def _partite(host: Hypergraph, config: ExtractorConfig, stages: List[StageRecord]) -> Hypergraph:
    _, current = partite_reduce(host, child_seed(config.seed, 0))
    stages.append(StageRecord("partite", host.num_edges, current.num_edges, {}))
    return current


def _split(
    current: Hypergraph, k: int, threshold: float, stages: List[StageRecord]
) -> Tuple[List[int], List[int]]:
    heavy = heavy_edges_any(current, k, threshold)
    heavy_set = set(heavy)
    light = [edge_id for edge_id in range(current.num_edges) if edge_id not in heavy_set]
    # ties go to the light branch
    branch = "heavy" if 2 * len(heavy) > current.num_edges else "light"
    stages.append(
        StageRecord(
            f"split:{k}",
            current.num_edges,
            len(heavy) if branch == "heavy" else len(light),
            {"threshold": threshold, "heavy": len(heavy), "branch": branch},
        )
    )
    return (heavy, light) if branch == "heavy" else ([], light)


class BergePipelineExtractor(BaseExtractor):
    """
    Inner extractor running the Berge pipeline at the uniformity of its host.
    """

    def __init__(self, length: int) -> None:
        """
        Args:
            length (int): the cycle length l.
        """
        self.length = length

    def extract(
        self, host: Hypergraph, family: ForbiddenFamily, config: ExtractorConfig
    ) -> Hypergraph:
        if family.is_empty:
            return host
        expected = ForbiddenFamily.berge_sunflower_free(self.length, host.uniformity)
        if family.canonical() != expected.canonical():
            raise InvalidInput(f"The Berge pipeline certifies {expected}, not {family}.")
        return pipeline_berge(host, self.length, config).retained


def pipeline_berge(host: Hypergraph, length: int, config: ExtractorConfig) -> ExtractionReport:
    """
    Extract a subgraph free of the non-sunflower Berge cycles of length at
    most l and of the sunflower-plus family.

    For k = 2..r-1, the edges whose k-sets reach D_k = Delta^{(r-k)/(r-1)} go
    to the matching extractor if they are more than half, with this pipeline
    as inner extractor one uniformity down. Otherwise the light edges are kept
    and the next k is tried. The remaining host goes to the homomorphism
    extractor with a Berge-cycle-free target on t = c Delta^{1/(r-1)} vertices.

    Args:
        host (Hypergraph): an r-graph, r >= 2.
        length (int): l >= 3.
        config (ExtractorConfig): the configuration.

    Raises:
        InvalidInput: if l < 3 or r < 2.

    Returns:
        ExtractionReport: the report.
    """
    r = host.uniformity
    if length < 3:
        raise InvalidInput(f"The Berge pipeline needs l >= 3, got {length}.")
    if r < 2:
        raise InvalidInput(f"The Berge pipeline needs r >= 2, got {r}.")
    family = ForbiddenFamily.berge_sunflower_free(length, r)
    profile = degree_profile(host)
    bypass = _bypass(host, family, config, profile)
    if bypass is not None:
        return bypass
    delta = profile.max_degree
    parameters: Dict[str, Any] = {
        "pipeline": "berge",
        "ell": length,
        "delta": delta,
        "reference_exponent": reference_exponent("berge", length, r),
    }
    stages: List[StageRecord] = []
    flags: List[str] = []
    current = _partite(host, config, stages)
    for k in range(2, r):
        d_k = delta ** ((r - k) / (r - 1))
        threshold = math.floor(d_k) + 1
        heavy, light = _split(current, k, threshold, stages)
        if heavy:
            parameters.update({"k": k, "D_k": d_k, "beta": 1 - 1 / ((r - k) * (length // 2))})
            report = _heavy_branch(
                current, k, threshold, family, BergePipelineExtractor(length), config, stages
            )
            return _finish(host, profile, report, stages, flags, parameters)
        current = current.subgraph(light)

    t, capped = _target_size(delta, r, 1 / (r - 1), config)
    if capped:
        flags.append("t-guard")
    target = _target(t, r, ForbiddenFamily.berge_up_to(length, r), config)
    parameters.update({"t": t, "target_edges": target.num_edges})
    report = random_hom_extract(current, target, family, config)
    return _finish(host, profile, report, stages, flags, parameters)


def pipeline_b53(host: Hypergraph, config: ExtractorConfig) -> ExtractionReport:
    """
    Extract a subgraph free of Berge 5-cycles from a 3-graph.

    Pairs of 2-degree above Delta^{1/2} send the heavy edges to the matching
    extractor with the graph Berge pipeline inside. The light edges go to the
    homomorphism extractor with a target free of Berge 2-cycles and 5-cycles
    on t = c Delta^{1/2} vertices.

    Args:
        host (Hypergraph): a 3-graph.
        config (ExtractorConfig): the configuration.

    Raises:
        InvalidInput: if the host is not 3-uniform.

    Returns:
        ExtractionReport: the report.
    """
    if host.uniformity != 3:
        raise InvalidInput(f"The B5 pipeline needs a 3-graph, got r = {host.uniformity}.")
    family = ForbiddenFamily.berge_cycle(5, 3)
    profile = degree_profile(host)
    bypass = _bypass(host, family, config, profile)
    if bypass is not None:
        return bypass
    delta = profile.max_degree
    parameters: Dict[str, Any] = {
        "pipeline": "b53",
        "ell": 5,
        "delta": delta,
        "reference_exponent": reference_exponent("b53"),
    }
    stages: List[StageRecord] = []
    flags: List[str] = []
    current = _partite(host, config, stages)
    threshold = math.floor(math.sqrt(delta)) + 1
    heavy, light = _split(current, 2, threshold, stages)
    if heavy:
        parameters.update({"k": 2, "beta": 0.5})
        report = _heavy_branch(current, 2, threshold, family, BergePipelineExtractor(5), config, stages)
        return _finish(host, profile, report, stages, flags, parameters)
    current = current.subgraph(light)
    t, capped = _target_size(delta, 3, 0.5, config)
    if capped:
        flags.append("t-guard")
    target_family = ForbiddenFamily.union(
        [ForbiddenFamily.berge_cycle(2, 3), ForbiddenFamily.berge_cycle(5, 3)], 3
    )
    target = _target(t, 3, target_family, config)
    parameters.update({"t": t, "target_edges": target.num_edges})
    report = random_hom_extract(current, target, family, config)
    return _finish(host, profile, report, stages, flags, parameters)


def pipeline_f5(host: Hypergraph, config: ExtractorConfig, variant: str = "caption") -> ExtractionReport:
    """
    Extract an F5-free subgraph from a 3-graph.

    Pairs of 2-degree at least Delta^{4/5} send the heavy edges to the
    matching extractor. The light edges go to the deletion extractor with
    p = Delta^{-3/5} / 9.

    Args:
        host (Hypergraph): a 3-graph.
        config (ExtractorConfig): the configuration.
        variant (str, optional): edge list of F5, "caption" or "counting". Defaults to "caption".

    Raises:
        InvalidInput: if the host is not 3-uniform.

    Returns:
        ExtractionReport: the report.
    """
    if host.uniformity != 3:
        raise InvalidInput(f"The F5 pipeline needs a 3-graph, got r = {host.uniformity}.")
    family = ForbiddenFamily.f5(variant)
    profile = degree_profile(host)
    bypass = _bypass(host, family, config, profile)
    if bypass is not None:
        return bypass
    delta = profile.max_degree
    parameters: Dict[str, Any] = {
        "pipeline": "f5",
        "variant": variant,
        "delta": delta,
        "reference_exponent": reference_exponent("f5"),
    }
    stages: List[StageRecord] = []
    flags: List[str] = []
    current = _partite(host, config, stages)
    threshold = math.ceil(delta**0.8)
    heavy, light = _split(current, 2, threshold, stages)
    if heavy:
        inner = inner_extractor_for(family.projected(2))
        parameters["k"] = 2
        report = _heavy_branch(current, 2, threshold, family, inner, config, stages)
        return _finish(host, profile, report, stages, flags, parameters)
    current = current.subgraph(light)
    probability, clamped = clamp_probability(delta ** (-0.6) / 9, "p")
    if clamped:
        flags.append("clamped-p")
    report = deletion_extract(current, family, probability, config)
    return _finish(host, profile, report, stages, flags, parameters)


def pipeline_loose(host: Hypergraph, length: int, config: ExtractorConfig) -> ExtractionReport:
    """
    Extract a subgraph free of the loose cycle C_l^r.

    With D = Delta^{1/l} (D = 1 on linear hosts), pairs of 2-degree at least D
    send the heavy edges to the matching extractor. The light edges go to the
    deletion extractor with p = r^{-1-2/(l-1)} Delta^{-1+1/(l-1)} D^{-1/(l-1)}.

    Args:
        host (Hypergraph): an r-graph, r >= 3.
        length (int): l >= 3.
        config (ExtractorConfig): the configuration.

    Raises:
        InvalidInput: if r < 3 or l < 3.

    Returns:
        ExtractionReport: the report.
    """
    r = host.uniformity
    if r < 3:
        raise InvalidInput(f"The loose pipeline needs r >= 3, got {r}.")
    if length < 3:
        raise InvalidInput(f"Loose cycles have length at least 3, got {length}.")
    family = ForbiddenFamily.loose_cycle(length, r)
    profile = degree_profile(host)
    bypass = _bypass(host, family, config, profile)
    if bypass is not None:
        return bypass
    delta = profile.max_degree
    linear = is_linear(host)
    pair_threshold = 1.0 if linear else delta ** (1 / length)
    parameters: Dict[str, Any] = {
        "pipeline": "loose",
        "ell": length,
        "delta": delta,
        "linear_host": linear,
        "D": pair_threshold,
        "reference_exponent": reference_exponent("loose", length, r, linear),
    }
    stages: List[StageRecord] = []
    flags: List[str] = []
    current = _partite(host, config, stages)
    if not linear:
        threshold = math.ceil(pair_threshold)
        heavy, light = _split(current, 2, threshold, stages)
        if heavy:
            inner = inner_extractor_for(family.projected(2))
            parameters.update({"k": 2, "beta": 0.0})
            report = _heavy_branch(current, 2, threshold, family, inner, config, stages)
            return _finish(host, profile, report, stages, flags, parameters)
        current = current.subgraph(light)
    probability, clamped = clamp_probability(
        r ** (-1 - 2 / (length - 1))
        * max(delta, 1) ** (-1 + 1 / (length - 1))
        * pair_threshold ** (-1 / (length - 1)),
        "p",
    )
    if clamped:
        flags.append("clamped-p")
    report = deletion_extract(current, family, probability, config)
    return _finish(host, profile, report, stages, flags, parameters)


def run_pipeline(
    name: str,
    host: Hypergraph,
    config: ExtractorConfig,
    length: Optional[int] = None,
    variant: str = "caption",
) -> ExtractionReport:
    """
    Run a pipeline by name.

    Args:
        name (str): one of PIPELINES.
        host (Hypergraph): the host.
        config (ExtractorConfig): the configuration.
        length (Optional[int], optional): l for berge and loose. Defaults to None.
        variant (str, optional): F5 edge list. Defaults to "caption".

    Raises:
        InvalidInput: if the name is unknown or l is missing.

    Returns:
        ExtractionReport: the report.
    """
    if name not in PIPELINES:
        raise InvalidInput(f"Unknown pipeline {name}, expected one of {PIPELINES}.")
    if name in ("berge", "loose") and length is None:
        raise InvalidInput(f"The {name} pipeline needs --ell.")
    logger.info("Running the %s pipeline on a host with %i edges.", name, host.num_edges)
    if name == "berge":
        assert length is not None
        return pipeline_berge(host, length, config)
    if name == "b53":
        return pipeline_b53(host, config)
    if name == "f5":
        return pipeline_f5(host, config, variant)
    assert length is not None
    return pipeline_loose(host, length, config)

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
Sparsify, prune, match and contract.

On an r-partite host whose prefix k-sets all have k-degree in [D, 2D), the
prefix k-sets are sampled with probability p = D log(Delta) / Delta, the
vertices of too high degree are pruned together with the whole class of every
edge touching them, a matching M of the surviving k-sets is taken, and each
k-set of M is contracted to a single vertex. An inner extractor avoiding the
projected family runs on the contracted (r-k+1)-graph G_M, and its output is
lifted back. The prefix of the result is a matching, so the result avoids the
family.
"""
import logging
import functools
from collections import Counter
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from relturan.exceptions import InvalidInput
from relturan.hypergraph import Edge, Hypergraph, Partition, degree_profile, greedy_matching
from relturan.families.family import ForbiddenFamily
from relturan.extractors.base import (
    BaseExtractor,
    ExtractionReport,
    ExtractorConfig,
    StageRecord,
    TrialOutcome,
    build_report,
    run_trials,
)
from relturan.extractors.codegree import k_sets
from relturan.utils import clamp_probability, guarded_log, make_rng

logger = logging.getLogger(__name__)


def contract(
    host: Hypergraph, k: int, kept: List[int], matching: List[Edge]
) -> Tuple[Hypergraph, Dict[Edge, int]]:
    """
    Contract each k-set of a matching to a vertex.

    The contracted graph has the vertices 0..|M|-1 for the k-sets of M (part
    0), then the vertices of the parts k..r-1 of the host (parts 1..r-k).

    Args:
        host (Hypergraph): r-partite host with its partition.
        k (int): size of the prefix.
        kept (List[int]): ids of the candidate edges.
        matching (List[Edge]): pairwise disjoint prefix k-sets.

    Returns:
        Tuple[Hypergraph, Dict[Edge, int]]: G_M with its partition, and the host edge id of each edge of G_M.
    """
    assert host.partition is not None
    part_of = host.partition.part_of
    r = host.uniformity
    matched = {key: index for index, key in enumerate(matching)}
    suffix_vertices = sorted(
        vertex for vertex in range(host.vertex_count) if part_of[vertex] >= k
    )
    new_id = {vertex: len(matching) + index for index, vertex in enumerate(suffix_vertices)}
    prefix = k_sets(host, range(k))
    lifted: Dict[Edge, int] = {}
    for edge_id in kept:
        key = prefix[edge_id]
        if key not in matched:
            continue
        suffix = [new_id[vertex] for vertex in host.edges[edge_id] if part_of[vertex] >= k]
        lifted[tuple(sorted([matched[key]] + suffix))] = edge_id
    part_list = [0] * len(matching) + [part_of[vertex] - k + 1 for vertex in suffix_vertices]
    partition = Partition(part_list, r - k + 1)
    contracted = Hypergraph(r - k + 1, len(part_list), lifted.keys(), partition)
    return contracted, lifted


# pylint: disable=too-many-arguments,too-many-locals
def _matching_trial(
    host: Hypergraph,
    k: int,
    projected: ForbiddenFamily,
    inner: BaseExtractor,
    config: ExtractorConfig,
    probability: float,
    prune_threshold: float,
    index: int,
) -> TrialOutcome:
    rng = make_rng(config.seed, index)
    prefix = k_sets(host, range(k))
    classes = sorted(set(prefix))
    draws = rng.random(len(classes))
    sampled = {key for key, draw in zip(classes, draws.tolist()) if draw < probability}
    kept = [edge_id for edge_id, key in enumerate(prefix) if key in sampled]
    stages = [StageRecord("sparsify", host.num_edges, len(kept), {"p": probability})]

    degree: Counter = Counter()
    for edge_id in kept:
        degree.update(host.edges[edge_id])
    heavy_vertices = {vertex for vertex, value in degree.items() if value > prune_threshold}
    closure: Set[Edge] = {
        prefix[edge_id]
        for edge_id in kept
        if not heavy_vertices.isdisjoint(host.edges[edge_id])
    }
    survivors = [edge_id for edge_id in kept if prefix[edge_id] not in closure]
    pruned_fraction = 1 - len(survivors) / len(kept) if kept else 0.0
    stages.append(
        StageRecord(
            "prune",
            len(kept),
            len(survivors),
            {"threshold": prune_threshold, "pruned_fraction": pruned_fraction},
        )
    )

    projected_graph = Hypergraph(
        k, host.vertex_count, {prefix[edge_id] for edge_id in survivors}
    )
    matching = greedy_matching(projected_graph).edges(projected_graph)
    contracted, lifted = contract(host, k, survivors, matching)
    stages.append(
        StageRecord("match", len(survivors), contracted.num_edges, {"matching_size": len(matching)})
    )
    flags = []
    if not matching:
        flags.append("degenerate")
        return TrialOutcome([], stages, flags, {"pruned_fraction": pruned_fraction})

    inner_output = inner.extract(contracted, projected, config.child(index))
    retained = sorted(lifted[edge] for edge in inner_output.edges)
    stages.append(
        StageRecord(
            f"inner:{type(inner).__name__}",
            contracted.num_edges,
            len(retained),
            {"family": str(projected)},
        )
    )
    return TrialOutcome(retained, stages, flags, {"pruned_fraction": pruned_fraction})


def matching_extract(
    host: Hypergraph,
    k: int,
    family: ForbiddenFamily,
    inner: BaseExtractor,
    config: ExtractorConfig,
    threshold: Optional[float] = None,
) -> ExtractionReport:
    """
    Run the sparsify, prune, match and contract extractor.

    Args:
        host (Hypergraph): r-partite host with its partition, prefix k-degrees in [D, 2D).
        k (int): 2 <= k < r.
        family (ForbiddenFamily): the family certified on the output.
        inner (BaseExtractor): extractor for the projected family on (r-k+1)-graphs.
        config (ExtractorConfig): the configuration. ``thresholds["D"]`` gives D when ``threshold`` is None.
        threshold (Optional[float], optional): D. Defaults to the smallest prefix k-degree.

    Raises:
        InvalidInput: if the host has no partition, k is out of range or D is not in [1, Delta].
        VerificationFailure: if the output contains a member of the family.

    Returns:
        ExtractionReport: the report. The ``d-range`` flag is raised when D > Delta / log(Delta).
    """
    r = host.uniformity
    if host.partition is None:
        raise InvalidInput("The matching extractor needs an r-partite host with its partition.")
    if not 2 <= k < r:
        raise InvalidInput(f"k must satisfy 2 <= k < r = {r}, got {k}.")
    profile = degree_profile(host)
    delta = profile.max_degree
    prefix = k_sets(host, range(k))
    if threshold is None:
        threshold = config.thresholds.get("D")
    if threshold is None:
        threshold = float(min(Counter(prefix).values(), default=1))
    if host.num_edges and not 1 <= threshold <= delta:
        raise InvalidInput(f"D = {threshold} is outside [1, Delta = {delta}].")
    log_delta = guarded_log(delta)
    if config.p_override is not None:
        probability, clamped = config.p_override, False
    else:
        probability, clamped = clamp_probability(threshold * log_delta / max(delta, 1), "p")
    prune_threshold = 8 * threshold * log_delta**3
    projected = family.projected(k)
    logger.info(
        "Matching extractor: k = %i, D = %f, p = %f, inner %s for %s.",
        k,
        threshold,
        probability,
        type(inner).__name__,
        projected,
    )

    trial = functools.partial(
        _matching_trial, host, k, projected, inner, config, probability, prune_threshold
    )
    best, outcomes = run_trials(trial, config.trials, config.jobs)
    retained = host.subgraph(outcomes[best].retained_ids)
    guarantee = probability * host.num_edges / (32 * k * log_delta**3)
    report = build_report(host, family, config, retained, guarantee, outcomes, best, profile)
    report.parameters.update(
        {
            "k": k,
            "D": threshold,
            "p": probability,
            "prune_threshold": prune_threshold,
            "projected_family": str(projected),
            "mean_pruned_fraction": float(
                np.mean([outcome.values.get("pruned_fraction", 0.0) for outcome in outcomes])
            ),
        }
    )
    if clamped:
        report.flag("clamped-p")
    if delta > 1 and threshold > delta / log_delta:
        report.flag("d-range")
    mixed = [degree for degree in Counter(prefix).values() if not threshold <= degree < 2 * threshold]
    if mixed:
        report.flag("d-range")
        logger.warning("%i prefix k-sets have k-degree outside [D, 2D).", len(mixed))
    return report

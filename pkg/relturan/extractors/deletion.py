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
Random sampling followed by deletion of one edge from each remaining copy.
"""
import logging
import functools
from collections import Counter
from typing import FrozenSet, List

import numpy as np

from relturan.exceptions import InvalidInput, ResourceExceeded
from relturan.hypergraph import Hypergraph, degree_profile
from relturan.families.family import ForbiddenFamily
from relturan.extractors.base import (
    ExtractionReport,
    ExtractorConfig,
    StageRecord,
    TrialOutcome,
    build_report,
    run_trials,
)
from relturan.utils import make_rng

logger = logging.getLogger(__name__)


def greedy_hitting_set(copies: List[FrozenSet[int]]) -> List[int]:
    """
    Pick edges until every copy contains a picked edge, each time the edge in
    the most remaining copies (smallest id on ties).

    Args:
        copies (List[FrozenSet[int]]): the copies, as edge id sets.

    Returns:
        List[int]: the picked edge ids, in picking order.
    """
    remaining = [copy for copy in copies if copy]
    picked = []
    while remaining:
        counts: Counter = Counter()
        for copy in remaining:
            counts.update(copy)
        edge_id = min(counts, key=lambda key: (-counts[key], key))
        picked.append(edge_id)
        remaining = [copy for copy in remaining if edge_id not in copy]
    return picked


def _deletion_trial(
    host: Hypergraph, family: ForbiddenFamily, probability: float, copy_budget: int, seed: int, index: int
) -> TrialOutcome:
    rng = make_rng(seed, index)
    keep = rng.random(host.num_edges) < probability
    sampled_ids = np.flatnonzero(keep).tolist()
    sample = host.subgraph(sampled_ids)
    copies = family.enumerate_copies(sample, budget=copy_budget)
    deleted = set(greedy_hitting_set(copies))
    retained_local = [edge_id for edge_id in range(sample.num_edges) if edge_id not in deleted]
    retained = [sampled_ids[edge_id] for edge_id in retained_local]
    stages = [
        StageRecord("sample", host.num_edges, len(sampled_ids), {"p": probability}),
        StageRecord("delete", len(sampled_ids), len(retained), {"copies": len(copies)}),
    ]
    return TrialOutcome(retained, stages, values={"copies": float(len(copies)), "kept": float(len(sampled_ids))})


def deletion_extract(
    host: Hypergraph, family: ForbiddenFamily, probability: float, config: ExtractorConfig
) -> ExtractionReport:
    """
    Keep each edge with probability p, then delete an edge from every copy of
    the family in the sample.

    The guarantee is p e(H) - p^s N, where s is the number of edges of the
    members and N the counting bound of the family, when both are known.

    Args:
        host (Hypergraph): H.
        family (ForbiddenFamily): the family, whose copies can be enumerated.
        probability (float): p in (0, 1].
        config (ExtractorConfig): the configuration.

    Raises:
        InvalidInput: if p is not in (0, 1].
        ResourceExceeded: if a sample has more than ``copy_budget`` copies. The partial report is attached.
        VerificationFailure: if the output contains a member of the family.

    Returns:
        ExtractionReport: the report.
    """
    if config.p_override is not None:
        probability = config.p_override
    if not 0 < probability <= 1:
        raise InvalidInput(f"p must be in (0, 1], got {probability}.")
    profile = degree_profile(host)
    trial = functools.partial(
        _deletion_trial, host, family, probability, config.copy_budget, config.seed
    )
    try:
        best, outcomes = run_trials(trial, config.trials, config.jobs)
    except ResourceExceeded as exc:
        partial = build_report(host, family, config, host.subgraph([]), 0.0, profile=profile)
        partial.flag("copy-budget")
        raise ResourceExceeded(str(exc), partial=partial) from exc

    retained = host.subgraph(outcomes[best].retained_ids)
    guarantee = probability * host.num_edges
    size = family.pattern_size()
    bound = family.copy_bound(profile, host.num_edges)
    if size is not None and bound is not None:
        guarantee -= probability**size * bound
    report = build_report(host, family, config, retained, guarantee, outcomes, best, profile)
    report.parameters.update(
        {
            "p": probability,
            "copy_bound": bound,
            "mean_kept": float(np.mean([outcome.values["kept"] for outcome in outcomes])),
            "mean_copies": float(np.mean([outcome.values["copies"] for outcome in outcomes])),
        }
    )
    logger.info(
        "Deletion extractor with p = %f kept %i of %i edges.", probability, report.achieved, host.num_edges
    )
    return report

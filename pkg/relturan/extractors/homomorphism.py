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
Random homomorphism extractor.

Every vertex of H is sent uniformly at random to a vertex of a target J on t
vertices. An edge e is kept when its image is an edge of J and no other edge
meeting e has the same image. If J avoids every local isomorphic image of the
forbidden family, the kept edges avoid the family.
"""
import math
import logging
import functools
from typing import Dict, List

import numpy as np

from relturan.exceptions import InvalidInput
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


def _keys(images: np.ndarray, t: int) -> np.ndarray:
    """
    Encode sorted image tuples as integers in base t.
    """
    weights = np.power(np.int64(t), np.arange(images.shape[1], dtype=np.int64))
    return images.astype(np.int64) @ weights


def hom_retained(host: Hypergraph, target: Hypergraph, chi: np.ndarray) -> List[int]:
    """
    Edges kept for a given vertex map.

    Args:
        host (Hypergraph): H.
        target (Hypergraph): J.
        chi (np.ndarray): image of each vertex of H, in [0, t).

    Returns:
        List[int]: ids of the edges e with chi(e) in E(J) and chi(e) != chi(f) for every f != e meeting e.
    """
    if host.num_edges == 0 or target.num_edges == 0:
        return []
    t = target.vertex_count
    images = np.sort(chi[np.asarray(host.edges, dtype=np.int64)], axis=1)
    injective = np.all(np.diff(images, axis=1) != 0, axis=1)
    keys = _keys(images, t)
    target_keys = _keys(np.asarray(target.edges, dtype=np.int64), t)
    candidates = np.flatnonzero(injective & np.isin(keys, target_keys))

    by_image: Dict[int, List[int]] = {}
    for edge_id in candidates.tolist():
        by_image.setdefault(int(keys[edge_id]), []).append(edge_id)
    rejected = set()
    for group in by_image.values():
        for index, first in enumerate(group):
            first_set = set(host.edges[first])
            for second in group[index + 1 :]:
                if not first_set.isdisjoint(host.edges[second]):
                    rejected.add(first)
                    rejected.add(second)
    return [edge_id for edge_id in candidates.tolist() if edge_id not in rejected]


def _hom_trial(host: Hypergraph, target: Hypergraph, seed: int, index: int) -> TrialOutcome:
    rng = make_rng(seed, index)
    chi = rng.integers(0, target.vertex_count, size=host.vertex_count)
    retained = hom_retained(host, target, chi)
    return TrialOutcome(
        retained,
        [StageRecord("homomorphism", host.num_edges, len(retained), {"t": target.vertex_count})],
    )


def target_size_guard(host: Hypergraph) -> float:
    """
    Smallest t for which the analysis of the extractor applies:
    the maximum of r^2 4^r Delta_k^{1/(r-k)} over 1 <= k < r.

    Args:
        host (Hypergraph): H.

    Returns:
        float: the bound on t.
    """
    r = host.uniformity
    profile = degree_profile(host)
    bound = 0.0
    for k in range(1, r):
        bound = max(bound, r**2 * 4**r * profile.k(k) ** (1.0 / (r - k)))
    return bound


def random_hom_extract(
    host: Hypergraph, target: Hypergraph, family: ForbiddenFamily, config: ExtractorConfig
) -> ExtractionReport:
    """
    Run the random homomorphism extractor and keep the best trial.

    The guarantee is e(J) t^{-r} e(H). The ``t-guard`` flag is raised when t is
    below ``target_size_guard``.

    Args:
        host (Hypergraph): H.
        target (Hypergraph): J on t vertices, free of the local isomorphic images of the family (caller's obligation).
        family (ForbiddenFamily): the family certified on the output.
        config (ExtractorConfig): the configuration.

    Raises:
        InvalidInput: if the uniformities differ or if t < r.
        VerificationFailure: if the output contains a member of the family.

    Returns:
        ExtractionReport: the report.
    """
    r = host.uniformity
    t = target.vertex_count
    if target.uniformity != r or family.uniformity != r:
        raise InvalidInput(
            f"Uniformities differ: host {r}, target {target.uniformity}, family {family.uniformity}."
        )
    if t < r:
        raise InvalidInput(f"The target needs at least r = {r} vertices, got t = {t}.")
    profile = degree_profile(host)
    trial = functools.partial(_hom_trial, host, target, config.seed)
    best, outcomes = run_trials(trial, config.trials, config.jobs)
    retained = host.subgraph(outcomes[best].retained_ids)
    guarantee = target.num_edges * float(t) ** (-r) * host.num_edges
    report = build_report(host, family, config, retained, guarantee, outcomes, best, profile)
    guard = target_size_guard(host)
    report.parameters.update(
        {
            "t": t,
            "target_edges": target.num_edges,
            "retention_probability": math.factorial(r) * target.num_edges * float(t) ** (-r),
            "t_guard": guard,
            "mean_trial_size": float(np.mean(report.trial_log)),
        }
    )
    if t < guard:
        report.flag("t-guard")
    logger.info(
        "Homomorphism extractor on t = %i kept %i of %i edges (guarantee %f).",
        t,
        report.achieved,
        host.num_edges,
        guarantee,
    )
    return report

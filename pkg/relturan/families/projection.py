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
The projection families P_k(F): take an r-partition of F whose first k parts
induce a matching, and keep the (r-k+1)-graph induced by the parts k-1 to r-1
(0-based), up to isomorphism.
"""
import logging
import functools
import itertools
from typing import Dict, Iterator, List, Tuple

from relturan.exceptions import InvalidInput, ResourceExceeded
from relturan.hypergraph import Hypergraph
from relturan.families.canonical import canonical_form, canonical_hypergraph, compact

logger = logging.getLogger(__name__)

MAX_PROJECTION_VERTICES: int = 12


def iter_r_partitions(hypergraph: Hypergraph) -> Iterator[Tuple[int, ...]]:
    """
    Iterate over the ordered r-partitions of a hypergraph without isolated
    vertices, i.e. the maps from vertices to {0..r-1} injective on every edge.

    Args:
        hypergraph (Hypergraph): the hypergraph.

    Yields:
        Tuple[int, ...]: the part index of each vertex.
    """
    r = hypergraph.uniformity
    parts = [-1] * hypergraph.vertex_count

    def assign(vertex: int) -> Iterator[Tuple[int, ...]]:
        if vertex == hypergraph.vertex_count:
            yield tuple(parts)
            return
        for part in range(r):
            conflict = any(
                parts[other] == part
                for edge_id in hypergraph.incident(vertex)
                for other in hypergraph.edges[edge_id]
                if other != vertex
            )
            if conflict:
                continue
            parts[vertex] = part
            yield from assign(vertex + 1)
            parts[vertex] = -1

    yield from assign(0)


def _is_matching(edges: List[Tuple[int, ...]]) -> bool:
    sets = {frozenset(edge) for edge in edges}
    return all(not first & second for first, second in itertools.combinations(sets, 2))


@functools.lru_cache(maxsize=256)
def project_family(pattern: Hypergraph, k: int) -> Tuple[Hypergraph, ...]:
    """
    Compute P_k(F) up to isomorphism.

    Args:
        pattern (Hypergraph): the r-graph F.
        k (int): 2 <= k < r.

    Raises:
        InvalidInput: if k is out of range.
        ResourceExceeded: if F has more than MAX_PROJECTION_VERTICES non-isolated vertices.

    Returns:
        Tuple[Hypergraph, ...]: canonical representatives of the (r-k+1)-graphs of P_k(F), empty if F has no qualifying partition.
    """
    r = pattern.uniformity
    if not 2 <= k < r:
        raise InvalidInput(f"k must satisfy 2 <= k < r = {r}, got {k}.")
    source = compact(pattern)
    if source.vertex_count > MAX_PROJECTION_VERTICES:
        raise ResourceExceeded(
            f"Projection enumeration is limited to {MAX_PROJECTION_VERTICES} vertices, the pattern has {source.vertex_count}."
        )
    found: Dict[tuple, Hypergraph] = {}
    for parts in iter_r_partitions(source):
        prefix = [tuple(v for v in edge if parts[v] < k) for edge in source.edges]
        if not _is_matching(prefix):
            continue
        projected = {tuple(v for v in edge if parts[v] >= k - 1) for edge in source.edges}
        image = compact(Hypergraph(r - k + 1, source.vertex_count, projected))
        key = canonical_form(image)
        if key not in found:
            found[key] = canonical_hypergraph(image)
    logger.debug("P_%i of %r has %i members.", k, pattern, len(found))
    return tuple(found[key] for key in sorted(found))

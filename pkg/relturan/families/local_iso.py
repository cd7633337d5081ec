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
Local isomorphisms: homomorphisms that give distinct images to intersecting
edges. F' belongs to the closure H(F) iff F maps onto F' this way; the
closure is infinite in general, so we decide membership for a given F' and
enumerate images under a vertex budget.
"""
import logging
import itertools
from typing import Dict, FrozenSet, List, Optional, Set

from relturan.exceptions import InvalidInput
from relturan.hypergraph import Edge, Hypergraph
from relturan.families.canonical import canonical_form

logger = logging.getLogger(__name__)


class _Plan:
    """
    Vertex order of the source and, for each position, the edges that become
    complete once that vertex is assigned.
    """

    def __init__(self, source: Hypergraph) -> None:
        order: List[int] = []
        seen: Set[int] = set()
        for edge in source.edges:
            for vertex in edge:
                if vertex not in seen:
                    seen.add(vertex)
                    order.append(vertex)
        position = {vertex: index for index, vertex in enumerate(order)}
        self.order = order
        self.completed: List[List[int]] = [[] for _ in order]
        for edge_id, edge in enumerate(source.edges):
            last = max(position[vertex] for vertex in edge)
            self.completed[last].append(edge_id)
        self.intersecting: Dict[int, List[int]] = {
            edge_id: sorted(
                {
                    other
                    for vertex in edge
                    for other in source.incident(vertex)
                    if other != edge_id
                }
            )
            for edge_id, edge in enumerate(source.edges)
        }


def _check_completed(
    source: Hypergraph,
    plan: _Plan,
    index: int,
    chi: Dict[int, int],
    images: Dict[int, FrozenSet[int]],
    target_edges: Optional[Set[FrozenSet[int]]],
) -> Optional[List[int]]:
    """
    Compute the images of the edges completed at ``index``. Returns the ids of
    the newly imaged edges, or None if a constraint fails.
    """
    added = []
    for edge_id in plan.completed[index]:
        image = frozenset(chi[vertex] for vertex in source.edges[edge_id])
        failed = len(image) != source.uniformity or (
            target_edges is not None and image not in target_edges
        )
        failed = failed or any(
            images.get(other) == image for other in plan.intersecting[edge_id]
        )
        if failed:
            for done in added:
                del images[done]
            return None
        images[edge_id] = image
        added.append(edge_id)
    return added


def _distinct_on_edges(source: Hypergraph, vertex: int, chi: Dict[int, int]) -> bool:
    for edge_id in source.incident(vertex):
        assigned = [chi[u] for u in source.edges[edge_id] if u in chi]
        if len(set(assigned)) != len(assigned):
            return False
    return True


def local_isomorphism_exists(
    source: Hypergraph, target: Hypergraph
) -> Optional[Dict[int, int]]:
    """
    Search a local isomorphism from ``source`` to ``target``: a vertex map
    sending every edge onto an edge, with distinct images for intersecting edges.

    Args:
        source (Hypergraph): F.
        target (Hypergraph): F', of the same uniformity.

    Raises:
        InvalidInput: if the uniformities differ.

    Returns:
        Optional[Dict[int, int]]: the map on the non-isolated vertices of F, or None.
    """
    if source.uniformity != target.uniformity:
        raise InvalidInput("Local isomorphisms need equal uniformities.")
    if source.num_edges == 0:
        return {}
    target_edges = {frozenset(edge) for edge in target.edges}
    partial_sets: Set[FrozenSet[int]] = set()
    for edge in target.edges:
        for size in range(1, target.uniformity + 1):
            partial_sets.update(frozenset(subset) for subset in itertools.combinations(edge, size))
    plan = _Plan(source)
    candidates = target.non_isolated_vertices()
    chi: Dict[int, int] = {}
    images: Dict[int, FrozenSet[int]] = {}

    def partial_ok(vertex: int) -> bool:
        if not _distinct_on_edges(source, vertex, chi):
            return False
        for edge_id in source.incident(vertex):
            assigned = [chi[u] for u in source.edges[edge_id] if u in chi]
            if frozenset(assigned) not in partial_sets:
                return False
        return True

    def backtrack(index: int) -> bool:
        if index == len(plan.order):
            return True
        vertex = plan.order[index]
        for image in candidates:
            chi[vertex] = image
            if partial_ok(vertex):
                added = _check_completed(source, plan, index, chi, images, target_edges)
                if added is not None:
                    if backtrack(index + 1):
                        return True
                    for edge_id in added:
                        del images[edge_id]
            del chi[vertex]
        return False

    if backtrack(0):
        return dict(chi)
    return None


def local_isomorphic_images(
    source: Hypergraph, max_vertices: int, limit: Optional[int] = None
) -> List[Hypergraph]:
    """
    Enumerate, up to isomorphism, the images F' = chi(F) of local isomorphisms
    onto at most ``max_vertices`` vertices. Every vertex quotient of F is
    visited once through restricted growth strings.

    Args:
        source (Hypergraph): F.
        max_vertices (int): largest number of vertices of an image.
        limit (Optional[int], optional): stop after this many distinct images. Defaults to None.

    Returns:
        List[Hypergraph]: pairwise non-isomorphic images, the identity image included when it fits.
    """
    if source.num_edges == 0:
        return []
    plan = _Plan(source)
    found: Dict[tuple, Hypergraph] = {}
    chi: Dict[int, int] = {}
    images: Dict[int, FrozenSet[int]] = {}

    def backtrack(index: int, blocks: int) -> bool:
        if index == len(plan.order):
            edges: Set[Edge] = {tuple(sorted(image)) for image in images.values()}
            image_graph = Hypergraph(source.uniformity, blocks, edges)
            key = canonical_form(image_graph)
            if key not in found:
                found[key] = image_graph
            return limit is not None and len(found) >= limit
        vertex = plan.order[index]
        for block in range(min(blocks + 1, max_vertices)):
            chi[vertex] = block
            if not _distinct_on_edges(source, vertex, chi):
                del chi[vertex]
                continue
            added = _check_completed(source, plan, index, chi, images, None)
            if added is not None:
                stop = backtrack(index + 1, max(blocks, block + 1))
                for edge_id in added:
                    del images[edge_id]
                if stop:
                    del chi[vertex]
                    return True
            del chi[vertex]
        return False

    backtrack(0, 0)
    return list(found.values())

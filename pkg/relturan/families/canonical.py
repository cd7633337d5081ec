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
Canonical labelling of small hypergraphs by colour refinement and
individualisation.

The colour of a vertex is refined with the multiset of the colour tuples of
its edges until the partition is stable. Non-discrete partitions are split by
individualising each vertex of the first non-singleton cell in turn. The
canonical form is the lexicographically smallest relabelled edge list over all
leaves of that search.
"""
import logging
from typing import List, Optional, Tuple

from relturan.hypergraph import Edge, Hypergraph

logger = logging.getLogger(__name__)

CanonicalForm = Tuple[int, int, Tuple[Edge, ...]]


def refine(hypergraph: Hypergraph, colours: List[int]) -> List[int]:
    """
    Refine a vertex colouring until it is stable. Colour numbers only depend on
    isomorphism invariants, never on vertex ids.

    Args:
        hypergraph (Hypergraph): the hypergraph.
        colours (List[int]): initial colour of each vertex.

    Returns:
        List[int]: the stable colouring, colours being 0, 1, 2, ...
    """
    current = list(colours)
    num_colours = len(set(current))
    while True:
        signatures = []
        for vertex in range(hypergraph.vertex_count):
            around = sorted(
                tuple(sorted(current[u] for u in hypergraph.edges[edge_id] if u != vertex))
                for edge_id in hypergraph.incident(vertex)
            )
            signatures.append((current[vertex], tuple(around)))
        ranks = {signature: rank for rank, signature in enumerate(sorted(set(signatures)))}
        current = [ranks[signature] for signature in signatures]
        if len(ranks) == num_colours:
            return current
        num_colours = len(ranks)


def _relabel(hypergraph: Hypergraph, colours: List[int]) -> Tuple[Edge, ...]:
    return tuple(
        sorted(tuple(sorted(colours[vertex] for vertex in edge)) for edge in hypergraph.edges)
    )


def _search(
    hypergraph: Hypergraph, colours: List[int], best: List[Optional[Tuple[Edge, ...]]]
) -> None:
    cells: dict = {}
    for vertex, colour in enumerate(colours):
        cells.setdefault(colour, []).append(vertex)
    target = None
    for colour in sorted(cells):
        if len(cells[colour]) > 1:
            target = cells[colour]
            break
    if target is None:
        labelled = _relabel(hypergraph, colours)
        if best[0] is None or labelled < best[0]:
            best[0] = labelled
        return
    for vertex in target:
        individualised = [2 * colour for colour in colours]
        individualised[vertex] -= 1
        _search(hypergraph, refine(hypergraph, individualised), best)


def canonical_form(hypergraph: Hypergraph) -> CanonicalForm:
    """
    Canonical form of a hypergraph: two hypergraphs are isomorphic iff their
    canonical forms are equal.

    Args:
        hypergraph (Hypergraph): a small hypergraph.

    Returns:
        CanonicalForm: (r, n, relabelled sorted edges).
    """
    if hypergraph.vertex_count == 0:
        return (hypergraph.uniformity, 0, ())
    initial = [hypergraph.degree(vertex) for vertex in range(hypergraph.vertex_count)]
    best: List[Optional[Tuple[Edge, ...]]] = [None]
    _search(hypergraph, refine(hypergraph, initial), best)
    return (hypergraph.uniformity, hypergraph.vertex_count, best[0] or ())


def canonical_hypergraph(hypergraph: Hypergraph) -> Hypergraph:
    """
    Representative of the isomorphism class of a hypergraph.

    Args:
        hypergraph (Hypergraph): a small hypergraph.

    Returns:
        Hypergraph: the canonically relabelled hypergraph.
    """
    uniformity, vertex_count, edges = canonical_form(hypergraph)
    return Hypergraph(uniformity, vertex_count, edges)


def compact(hypergraph: Hypergraph) -> Hypergraph:
    """
    Drop the isolated vertices and relabel the others densely, keeping their order.

    Args:
        hypergraph (Hypergraph): the hypergraph.

    Returns:
        Hypergraph: the compacted hypergraph.
    """
    kept = hypergraph.non_isolated_vertices()
    relabel = {vertex: index for index, vertex in enumerate(kept)}
    return Hypergraph(
        hypergraph.uniformity,
        len(kept),
        [[relabel[vertex] for vertex in edge] for edge in hypergraph.edges],
    )


def are_isomorphic(first: Hypergraph, second: Hypergraph) -> bool:
    """
    Isomorphism test through canonical forms.

    Args:
        first (Hypergraph): first hypergraph.
        second (Hypergraph): second hypergraph.

    Returns:
        bool: True if they are isomorphic.
    """
    if (first.uniformity, first.vertex_count, first.num_edges) != (
        second.uniformity,
        second.vertex_count,
        second.num_edges,
    ):
        return False
    if sorted(map(first.degree, range(first.vertex_count))) != sorted(
        map(second.degree, range(second.vertex_count))
    ):
        return False
    return canonical_form(first) == canonical_form(second)

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
Injective embeddings of small explicit patterns, and the loose cycle and F5
detectors and counters built on them.

The search maps the pattern edges one at a time, in an order where every edge
meets an already mapped one whenever possible, so that the candidate host
edges are read from the incidence list of an already placed vertex.
"""
import logging
import itertools
from collections import deque
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set

from relturan.exceptions import InvalidInput, ResourceExceeded
from relturan.hypergraph import Edge, Hypergraph
from relturan.families.witness import Witness, WitnessKind

logger = logging.getLogger(__name__)

#: F5 as listed in the caption of its figure:
#: {u1,u2,u3}, {u1,u2,v1}, {u1,v2,u3}, {v1,v2,v3} with u1..u3 = 0..2 and v1..v3 = 3..5.
F5_PATTERN = Hypergraph(3, 6, [(0, 1, 2), (0, 1, 3), (0, 2, 4), (3, 4, 5)])

#: F5 as used in the counting argument:
#: {u1,u2,u3}, {u1,u2,v1}, {v1,v2,v3}, {u3,v2,v3}. Not isomorphic to F5_PATTERN.
F5_COUNTING_PATTERN = Hypergraph(3, 6, [(0, 1, 2), (0, 1, 3), (3, 4, 5), (2, 4, 5)])

F5_VARIANTS = {"caption": F5_PATTERN, "counting": F5_COUNTING_PATTERN}


def loose_cycle(length: int, uniformity: int) -> Hypergraph:
    """
    The loose cycle C_l^r. Vertex i < l is the vertex shared by edges i and i+1,
    the other vertices have degree one.

    Args:
        length (int): number of edges, at least 3.
        uniformity (int): r, at least 2.

    Raises:
        InvalidInput: if the length or the uniformity is too small.

    Returns:
        Hypergraph: the loose cycle on l(r-1) vertices.
    """
    if length < 3:
        raise InvalidInput(f"Loose cycles have at least 3 edges, got {length}.")
    if uniformity < 2:
        raise InvalidInput(f"Loose cycles need uniformity at least 2, got {uniformity}.")
    private = uniformity - 2
    edges = []
    for index in range(length):
        first_private = length + index * private
        edges.append(
            ((index - 1) % length, index)
            + tuple(range(first_private, first_private + private))
        )
    return Hypergraph(uniformity, length * (uniformity - 1), edges)


def _edge_order(pattern: Hypergraph, start: int) -> List[int]:
    """
    Breadth first order of the pattern edges from ``start``, restarting on the
    lowest unvisited edge for each new component.
    """
    order: List[int] = []
    visited: Set[int] = set()
    pending = [start] + [edge_id for edge_id in range(pattern.num_edges) if edge_id != start]
    for root in pending:
        if root in visited:
            continue
        queue = deque([root])
        visited.add(root)
        while queue:
            edge_id = queue.popleft()
            order.append(edge_id)
            for vertex in pattern.edges[edge_id]:
                for neighbour in pattern.incident(vertex):
                    if neighbour not in visited:
                        visited.add(neighbour)
                        queue.append(neighbour)
    return order


class _Budget:
    """
    Node counter shared by a search.
    """

    def __init__(self, limit: Optional[int]) -> None:
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise ResourceExceeded(f"Embedding search exceeded {self.limit} nodes.")


def _extend(
    pattern: Hypergraph,
    host: Hypergraph,
    order: Sequence[int],
    position: int,
    mapping: Dict[int, int],
    used: Set[int],
    budget: _Budget,
) -> Iterator[Dict[int, int]]:
    if position == len(order):
        yield dict(mapping)
        return
    budget.tick()
    pattern_edge = pattern.edges[order[position]]
    mapped = [vertex for vertex in pattern_edge if vertex in mapping]
    free = [vertex for vertex in pattern_edge if vertex not in mapping]
    if mapped:
        pivot = min((mapping[vertex] for vertex in mapped), key=host.degree)
        candidates: Sequence[int] = host.incident(pivot)
    else:
        candidates = range(host.num_edges)
    images = {mapping[vertex] for vertex in mapped}
    for edge_id in candidates:
        host_edge = host.edges[edge_id]
        if not images.issubset(host_edge):
            continue
        remaining = [vertex for vertex in host_edge if vertex not in images]
        if any(vertex in used for vertex in remaining):
            continue
        for permutation in itertools.permutations(remaining):
            for vertex, image in zip(free, permutation):
                mapping[vertex] = image
                used.add(image)
            yield from _extend(pattern, host, order, position + 1, mapping, used, budget)
            for vertex, image in zip(free, permutation):
                del mapping[vertex]
                used.discard(image)


def iter_embeddings(
    pattern: Hypergraph,
    host: Hypergraph,
    through: Optional[Sequence[int]] = None,
    budget: Optional[int] = None,
) -> Iterator[Dict[int, int]]:
    """
    Iterate over the injective, edge-preserving maps from the non-isolated
    vertices of a pattern to the host vertices.

    Args:
        pattern (Hypergraph): the pattern.
        host (Hypergraph): the host, of the same uniformity.
        through (Optional[Sequence[int]], optional): if given, only the embeddings using this host edge. Defaults to None.
        budget (Optional[int], optional): maximum number of search nodes. Defaults to None.

    Raises:
        InvalidInput: if the uniformities differ.
        ResourceExceeded: if the budget is exhausted.

    Yields:
        Dict[int, int]: the embeddings, as pattern vertex to host vertex.
    """
    if pattern.uniformity != host.uniformity:
        raise InvalidInput(
            f"Pattern uniformity {pattern.uniformity} differs from host uniformity {host.uniformity}."
        )
    if pattern.num_edges == 0 or pattern.num_edges > host.num_edges:
        return
    counter = _Budget(budget)
    if through is None:
        order = _edge_order(pattern, 0)
        yield from _extend(pattern, host, order, 0, {}, set(), counter)
        return
    anchor = tuple(sorted(through))
    if not host.has_edge(anchor):
        return
    for start in range(pattern.num_edges):
        order = _edge_order(pattern, start)
        for permutation in itertools.permutations(anchor):
            mapping = dict(zip(pattern.edges[start], permutation))
            yield from _extend(
                pattern, host, order, 1, mapping, set(permutation), counter
            )


def image_edges(pattern: Hypergraph, mapping: Dict[int, int]) -> List[Edge]:
    """
    Images of the pattern edges under an embedding.

    Args:
        pattern (Hypergraph): the pattern.
        mapping (Dict[int, int]): the embedding.

    Returns:
        List[Edge]: the host edges, in pattern edge order.
    """
    return [tuple(sorted(mapping[vertex] for vertex in edge)) for edge in pattern.edges]


def find_embedding(
    pattern: Hypergraph,
    host: Hypergraph,
    through: Optional[Sequence[int]] = None,
    label: str = "",
    budget: Optional[int] = None,
) -> Optional[Witness]:
    """
    Find one embedding of a pattern.

    Args:
        pattern (Hypergraph): the pattern.
        host (Hypergraph): the host.
        through (Optional[Sequence[int]], optional): host edge the embedding must use. Defaults to None.
        label (str, optional): label of the witness. Defaults to "".
        budget (Optional[int], optional): maximum number of search nodes. Defaults to None.

    Returns:
        Optional[Witness]: an embedding witness, or None.
    """
    for mapping in iter_embeddings(pattern, host, through, budget):
        return Witness(
            kind=WitnessKind.EMBEDDING,
            edges=tuple(image_edges(pattern, mapping)),
            pattern=pattern,
            embedding=tuple(sorted(mapping.items())),
            label=label,
        )
    return None


def iter_copies(
    pattern: Hypergraph,
    host: Hypergraph,
    budget: Optional[int] = None,
) -> Iterator[FrozenSet[int]]:
    """
    Iterate over the copies of a pattern, each given once as a set of host edge ids.

    Args:
        pattern (Hypergraph): the pattern.
        host (Hypergraph): the host.
        budget (Optional[int], optional): maximum number of search nodes. Defaults to None.

    Yields:
        FrozenSet[int]: the edge ids of each copy.
    """
    seen: Set[FrozenSet[int]] = set()
    for mapping in iter_embeddings(pattern, host, budget=budget):
        copy = frozenset(host.edge_id(edge) for edge in image_edges(pattern, mapping))  # type: ignore[misc]
        if copy not in seen:
            seen.add(copy)
            yield copy


def count_copies(pattern: Hypergraph, host: Hypergraph, budget: Optional[int] = None) -> int:
    """
    Number of copies of a pattern (subgraphs isomorphic to it).

    Args:
        pattern (Hypergraph): the pattern.
        host (Hypergraph): the host.
        budget (Optional[int], optional): maximum number of search nodes. Defaults to None.

    Returns:
        int: the number of copies.
    """
    return sum(1 for _ in iter_copies(pattern, host, budget))


def contains_loose_cycle(
    host: Hypergraph, length: int, through: Optional[Sequence[int]] = None
) -> Optional[Witness]:
    """
    Find a loose cycle C_l^r.

    Args:
        host (Hypergraph): the host.
        length (int): the number of edges l, at least 3.
        through (Optional[Sequence[int]], optional): host edge the cycle must use. Defaults to None.

    Returns:
        Optional[Witness]: an embedding witness, or None.
    """
    pattern = loose_cycle(length, host.uniformity)
    return find_embedding(pattern, host, through, label=f"loose:{length}")


def count_loose_cycles(host: Hypergraph, length: int) -> int:
    """
    Number of copies of C_l^r. At most r^l D Delta^{l-2} e(H).

    Args:
        host (Hypergraph): the host.
        length (int): the number of edges l, at least 3.

    Returns:
        int: the number of copies.
    """
    return count_copies(loose_cycle(length, host.uniformity), host)


def _f5_pattern(host: Hypergraph, variant: str) -> Hypergraph:
    if host.uniformity != 3:
        raise InvalidInput(f"F5 is 3-uniform, the host is {host.uniformity}-uniform.")
    if variant not in F5_VARIANTS:
        raise InvalidInput(f"Unknown F5 variant {variant}.")
    return F5_VARIANTS[variant]


def contains_f5(
    host: Hypergraph,
    through: Optional[Sequence[int]] = None,
    variant: str = "caption",
) -> Optional[Witness]:
    """
    Find a copy of F5.

    Args:
        host (Hypergraph): a 3-graph.
        through (Optional[Sequence[int]], optional): host edge the copy must use. Defaults to None.
        variant (str, optional): "caption" or "counting". Defaults to "caption".

    Raises:
        InvalidInput: if the host is not 3-uniform.

    Returns:
        Optional[Witness]: an embedding witness, or None.
    """
    pattern = _f5_pattern(host, variant)
    label = "f5" if variant == "caption" else f"f5:{variant}"
    return find_embedding(pattern, host, through, label=label)


def count_f5(host: Hypergraph, variant: str = "caption") -> int:
    """
    Number of copies of F5. At most 9 D Delta e(H).

    Args:
        host (Hypergraph): a 3-graph.
        variant (str, optional): "caption" or "counting". Defaults to "caption".

    Raises:
        InvalidInput: if the host is not 3-uniform.

    Returns:
        int: the number of copies.
    """
    return count_copies(_f5_pattern(host, variant), host)

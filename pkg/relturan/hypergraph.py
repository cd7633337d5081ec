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
r-uniform hypergraphs, partitions and the classical reductions used as
proof steps (partite reduction, induced k-graphs, greedy matchings and
linear subgraphs).

Vertices are dense 0-based integers. Edges are kept sorted, both inside an edge
and in the edge list, and the edge id of an edge is its position in that list.
"""
import math
import hashlib
import logging
import itertools
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np

from relturan.exceptions import InvalidInput, RelturanError
from relturan.utils import make_rng

logger = logging.getLogger(__name__)

Edge = Tuple[int, ...]

DEFAULT_PARTITE_RETRIES: int = 64


class Partition:
    """
    Ordered partition (V_0, ..., V_{q-1}) of the vertex set {0, ..., n-1}.
    """

    part_of: Tuple[int, ...]  #: Part index of each vertex.
    parts: Tuple[FrozenSet[int], ...]  #: Vertex set of each part.

    def __init__(self, part_of: Sequence[int], num_parts: int) -> None:
        """
        Args:
            part_of (Sequence[int]): part index of each vertex.
            num_parts (int): number of parts (some may be empty).

        Raises:
            InvalidInput: if a part index is out of range.
        """
        if num_parts < 1:
            raise InvalidInput("A partition needs at least one part.")
        parts: List[set] = [set() for _ in range(num_parts)]
        for vertex, part in enumerate(part_of):
            if not 0 <= int(part) < num_parts:
                raise InvalidInput(
                    f"Vertex {vertex} is in part {part}, expected a part in [0, {num_parts})."
                )
            parts[int(part)].add(vertex)
        self.part_of = tuple(int(part) for part in part_of)
        self.parts = tuple(frozenset(part) for part in parts)

    @classmethod
    def from_parts(
        cls, parts: Sequence[Iterable[int]], vertex_count: int
    ) -> "Partition":
        """
        Build a partition from the list of its parts.

        Args:
            parts (Sequence[Iterable[int]]): the parts, which must be disjoint and cover all vertices.
            vertex_count (int): number of vertices.

        Raises:
            InvalidInput: if the parts overlap or do not cover every vertex.

        Returns:
            Partition: the partition.
        """
        part_of = [-1] * vertex_count
        for index, part in enumerate(parts):
            for vertex in part:
                if not 0 <= vertex < vertex_count:
                    raise InvalidInput(f"Vertex {vertex} is out of range.")
                if part_of[vertex] != -1:
                    raise InvalidInput(f"Vertex {vertex} is in two parts.")
                part_of[vertex] = index
        if -1 in part_of:
            raise InvalidInput(
                f"Vertex {part_of.index(-1)} is not covered by the partition."
            )
        return cls(part_of, len(parts))

    @property
    def num_parts(self) -> int:
        """
        Number of parts.
        """
        return len(self.parts)

    @property
    def vertex_count(self) -> int:
        """
        Number of vertices covered by the partition.
        """
        return len(self.part_of)

    def is_transversal(self, edge: Sequence[int]) -> bool:
        """
        Whether the edge has at most one vertex in each part.

        Args:
            edge (Sequence[int]): the edge.

        Returns:
            bool: True if all the vertices of the edge are in distinct parts.
        """
        seen = set()
        for vertex in edge:
            part = self.part_of[vertex]
            if part in seen:
                return False
            seen.add(part)
        return True

    def order_edge(self, edge: Sequence[int]) -> Edge:
        """
        Order the vertices of a transversal edge by part index, which gives the
        (u_0, u_1, ...) reading with u_i in V_i.

        Args:
            edge (Sequence[int]): a transversal edge.

        Returns:
            Edge: the vertices of the edge sorted by part.
        """
        return tuple(sorted(edge, key=lambda vertex: self.part_of[vertex]))

    def permuted(self, order: Sequence[int]) -> "Partition":
        """
        Reorder the parts: part i of the result is part ``order[i]`` of this partition.

        Args:
            order (Sequence[int]): a permutation of the part indices.

        Raises:
            InvalidInput: if order is not a permutation.

        Returns:
            Partition: the reordered partition.
        """
        if sorted(order) != list(range(self.num_parts)):
            raise InvalidInput(f"{list(order)} is not a permutation of the parts.")
        new_index = {old: new for new, old in enumerate(order)}
        return Partition([new_index[part] for part in self.part_of], self.num_parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.part_of == other.part_of and self.num_parts == other.num_parts

    def __hash__(self) -> int:
        return hash((self.part_of, self.num_parts))

    def __repr__(self) -> str:
        return f"Partition({[sorted(part) for part in self.parts]})"


class Hypergraph:
    """
    Immutable r-uniform hypergraph on the vertices {0, ..., n-1}.

    A partition can be attached to the hypergraph. In that case every edge has
    exactly one vertex in each part, and subgraphs inherit the partition.
    """

    uniformity: int  #: Number of vertices of each edge (r).
    vertex_count: int  #: Number of vertices (n).
    edges: Tuple[Edge, ...]  #: Sorted list of sorted edges. The edge id is the position.
    partition: Optional[Partition]  #: Optional attached r-partition.

    def __init__(
        self,
        uniformity: int,
        vertex_count: int,
        edges: Iterable[Iterable[int]] = (),
        partition: Optional[Partition] = None,
    ) -> None:
        """
        Args:
            uniformity (int): the uniformity r, at least 1.
            vertex_count (int): the number of vertices n.
            edges (Iterable[Iterable[int]], optional): the edges. Defaults to ().
            partition (Optional[Partition], optional): r-partition to attach. Defaults to None.

        Raises:
            InvalidInput: if an edge has the wrong size, repeats a vertex, uses an unknown vertex or appears twice, or if the partition is not an r-partition of the edges.
        """
        if uniformity < 1:
            raise InvalidInput(f"Uniformity must be at least 1, got {uniformity}.")
        if vertex_count < 0:
            raise InvalidInput(f"Vertex count must be non-negative, got {vertex_count}.")
        self.uniformity = int(uniformity)
        self.vertex_count = int(vertex_count)

        normalized = []
        for edge in edges:
            sorted_edge = tuple(sorted(int(vertex) for vertex in edge))
            if len(sorted_edge) != self.uniformity:
                raise InvalidInput(
                    f"Edge {sorted_edge} does not have {self.uniformity} vertices."
                )
            if len(set(sorted_edge)) != self.uniformity:
                raise InvalidInput(f"Edge {sorted_edge} repeats a vertex.")
            if sorted_edge[0] < 0 or sorted_edge[-1] >= self.vertex_count:
                raise InvalidInput(
                    f"Edge {sorted_edge} uses a vertex outside [0, {self.vertex_count})."
                )
            normalized.append(sorted_edge)
        normalized.sort()
        for previous, current in zip(normalized, normalized[1:]):
            if previous == current:
                raise InvalidInput(f"Duplicate edge {current}.")
        self.edges = tuple(normalized)

        self._index: Dict[Edge, int] = {
            edge: edge_id for edge_id, edge in enumerate(self.edges)
        }
        incidence: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for edge_id, edge in enumerate(self.edges):
            for vertex in edge:
                incidence[vertex].append(edge_id)
        self._incidence = tuple(tuple(ids) for ids in incidence)

        self.partition = None
        if partition is not None:
            self._check_partition(partition)
            self.partition = partition

    def _check_partition(self, partition: Partition) -> None:
        if partition.vertex_count != self.vertex_count:
            raise InvalidInput(
                f"The partition covers {partition.vertex_count} vertices, the hypergraph has {self.vertex_count}."
            )
        if partition.num_parts != self.uniformity:
            raise InvalidInput(
                f"The partition has {partition.num_parts} parts, expected {self.uniformity}."
            )
        for edge in self.edges:
            if not partition.is_transversal(edge):
                raise InvalidInput(f"Edge {edge} is not transversal to the partition.")

    @property
    def num_edges(self) -> int:
        """
        Number of edges, e(H).
        """
        return len(self.edges)

    def degree(self, vertex: int) -> int:
        """
        Degree of a vertex.

        Args:
            vertex (int): the vertex.

        Returns:
            int: the number of edges containing the vertex.
        """
        return len(self._incidence[vertex])

    def incident(self, vertex: int) -> Tuple[int, ...]:
        """
        Ids of the edges containing a vertex.

        Args:
            vertex (int): the vertex.

        Returns:
            Tuple[int, ...]: the edge ids, in ascending order.
        """
        return self._incidence[vertex]

    def edge_id(self, edge: Iterable[int]) -> Optional[int]:
        """
        Id of an edge, or None if it is not an edge.

        Args:
            edge (Iterable[int]): the vertices of the edge.

        Returns:
            Optional[int]: the edge id.
        """
        return self._index.get(tuple(sorted(edge)))

    def has_edge(self, edge: Iterable[int]) -> bool:
        """
        Whether the given vertex set is an edge.

        Args:
            edge (Iterable[int]): the vertices.

        Returns:
            bool: True if it is an edge.
        """
        return self.edge_id(edge) is not None

    def edges_containing(self, vertices: Iterable[int]) -> List[int]:
        """
        Ids of the edges containing every given vertex.

        Args:
            vertices (Iterable[int]): a nonempty vertex set.

        Returns:
            List[int]: the edge ids, in ascending order.
        """
        vertex_set = set(vertices)
        if not vertex_set:
            return list(range(self.num_edges))
        pivot = min(vertex_set, key=self.degree)
        return [
            edge_id
            for edge_id in self._incidence[pivot]
            if vertex_set.issubset(self.edges[edge_id])
        ]

    def non_isolated_vertices(self) -> List[int]:
        """
        Vertices of degree at least one.

        Returns:
            List[int]: the vertices, in ascending order.
        """
        return [vertex for vertex in range(self.vertex_count) if self._incidence[vertex]]

    def subgraph(self, edge_ids: Iterable[int]) -> "Hypergraph":
        """
        Subgraph spanned by some edges. Vertex ids, vertex count and attached
        partition are kept.

        Args:
            edge_ids (Iterable[int]): the ids of the kept edges.

        Returns:
            Hypergraph: the subgraph.
        """
        kept = sorted(set(edge_ids))
        return Hypergraph(
            self.uniformity,
            self.vertex_count,
            [self.edges[edge_id] for edge_id in kept],
            self.partition,
        )

    def without_edges(self, edge_ids: Iterable[int]) -> "Hypergraph":
        """
        Subgraph obtained by deleting some edges.

        Args:
            edge_ids (Iterable[int]): the ids of the deleted edges.

        Returns:
            Hypergraph: the subgraph.
        """
        removed = set(edge_ids)
        return self.subgraph(
            edge_id for edge_id in range(self.num_edges) if edge_id not in removed
        )

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """
        Hypergraph on the same vertices with the given edges.

        Args:
            edges (Iterable[Iterable[int]]): the edges.

        Returns:
            Hypergraph: the hypergraph, with the same attached partition (which must still fit).
        """
        return Hypergraph(self.uniformity, self.vertex_count, edges, self.partition)

    def with_partition(self, partition: Optional[Partition]) -> "Hypergraph":
        """
        Same hypergraph with another attached partition.

        Args:
            partition (Optional[Partition]): the r-partition, or None to detach.

        Raises:
            InvalidInput: if the partition is not an r-partition of the edges.

        Returns:
            Hypergraph: the hypergraph with the partition attached.
        """
        return Hypergraph(self.uniformity, self.vertex_count, self.edges, partition)

    def to_text(self) -> str:
        """
        Serialize to the ``.hg`` text format: a header line ``r n m`` then one
        line per edge.

        Returns:
            str: the text, LF terminated.
        """
        lines = [f"{self.uniformity} {self.vertex_count} {self.num_edges}"]
        lines.extend(" ".join(str(vertex) for vertex in edge) for edge in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        """
        Parse the ``.hg`` text format.

        Args:
            text (str): the content of the file.

        Raises:
            InvalidInput: if the text is malformed, if the edge count does not match or if an edge appears twice.

        Returns:
            Hypergraph: the hypergraph.
        """
        lines = [line for line in text.split("\n") if line.strip()]
        if not lines:
            raise InvalidInput("Empty hypergraph file.")
        try:
            header = [int(token) for token in lines[0].split()]
            edges = [[int(token) for token in line.split()] for line in lines[1:]]
        except ValueError as exc:
            raise InvalidInput(f"Malformed hypergraph file: {exc}") from exc
        if len(header) != 3:
            raise InvalidInput("The header line should be 'r n m'.")
        uniformity, vertex_count, num_edges = header
        if len(edges) != num_edges:
            raise InvalidInput(
                f"The header announces {num_edges} edges, the file has {len(edges)}."
            )
        for edge in edges:
            if any(a >= b for a, b in zip(edge, edge[1:])):
                raise InvalidInput(f"Edge {edge} is not strictly increasing.")
        return cls(uniformity, vertex_count, edges)

    def save(self, path: Union[str, Path]) -> None:
        """
        Write the hypergraph to a ``.hg`` file.

        Args:
            path (Union[str, Path]): the location of the file.
        """
        with open(path, "w", encoding="utf-8", newline="\n") as file:
            file.write(self.to_text())

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Hypergraph":
        """
        Read a hypergraph from a ``.hg`` file.

        Args:
            path (Union[str, Path]): the location of the file.

        Raises:
            InvalidInput: if the file cannot be read or is malformed.

        Returns:
            Hypergraph: the hypergraph.
        """
        try:
            with open(path, "r", encoding="utf-8") as file:
                text = file.read()
        except OSError as exc:
            raise InvalidInput(f"Cannot read {path}: {exc}") from exc
        return cls.from_text(text)

    def digest(self) -> str:
        """
        SHA-256 of the ``.hg`` text, used as a host key.

        Returns:
            str: the hexadecimal digest.
        """
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.uniformity == other.uniformity
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.uniformity, self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(r={self.uniformity}, n={self.vertex_count}, m={self.num_edges})"


@dataclass(frozen=True)
class DegreeProfile:
    """
    Maximum degree and maximum k-degrees of a hypergraph.
    """

    max_degree: int  #: Maximum degree, Delta.
    max_k_degree: Dict[int, int] = field(default_factory=dict)  #: Delta_k for 1 <= k < r.
    max_pair_degree: int = 0  #: Maximum number of edges containing a pair of vertices.

    def k(self, k: int) -> int:
        """
        Delta_k, the maximum k-degree.

        Args:
            k (int): 1 <= k < r.

        Returns:
            int: the maximum k-degree.
        """
        return self.max_k_degree[k]

    def to_dict(self) -> Dict:
        """
        Serializable representation.

        Returns:
            Dict: the profile as a dict.
        """
        return {
            "max_degree": self.max_degree,
            "max_k_degree": {str(k): value for k, value in sorted(self.max_k_degree.items())},
            "max_pair_degree": self.max_pair_degree,
        }


def _check_vertex_set(host: Hypergraph, vertices: Iterable[int]) -> FrozenSet[int]:
    vertex_set = frozenset(int(vertex) for vertex in vertices)
    if not vertex_set:
        raise InvalidInput("The vertex set must be nonempty.")
    if len(vertex_set) >= host.uniformity:
        raise InvalidInput(
            f"k-degrees are defined for sets of size below {host.uniformity}, got {len(vertex_set)}."
        )
    for vertex in vertex_set:
        if not 0 <= vertex < host.vertex_count:
            raise InvalidInput(f"Vertex {vertex} is out of range.")
    return vertex_set


def k_degree(host: Hypergraph, vertices: Iterable[int]) -> int:
    """
    k-degree of a vertex set: the number of edges containing it.

    Args:
        host (Hypergraph): the hypergraph.
        vertices (Iterable[int]): a nonempty set of less than r vertices.

    Raises:
        InvalidInput: if the set is empty, too large or uses an unknown vertex.

    Returns:
        int: the number of edges containing the set.
    """
    vertex_set = _check_vertex_set(host, vertices)
    return len(host.edges_containing(vertex_set))


def k_degree_counter(host: Hypergraph, k: int) -> Counter:
    """
    Degrees of all realized k-sets.

    Args:
        host (Hypergraph): the hypergraph.
        k (int): the size of the sets.

    Returns:
        Counter: map from sorted k-tuples to their degree.
    """
    counter: Counter = Counter()
    for edge in host.edges:
        counter.update(itertools.combinations(edge, k))
    return counter


def degree_profile(host: Hypergraph) -> DegreeProfile:
    """
    Compute Delta and every Delta_k.

    Args:
        host (Hypergraph): the hypergraph.

    Returns:
        DegreeProfile: the profile, with zeros for an empty hypergraph.
    """
    max_k_degree = {}
    for k in range(1, host.uniformity):
        counter = k_degree_counter(host, k)
        max_k_degree[k] = max(counter.values(), default=0)
    if host.uniformity >= 3:
        max_pair_degree = max_k_degree[2]
    elif host.uniformity == 2:
        max_pair_degree = 1 if host.num_edges else 0
    else:
        max_pair_degree = 0
    max_degree = max((host.degree(v) for v in range(host.vertex_count)), default=0)
    return DegreeProfile(
        max_degree=max_degree,
        max_k_degree=max_k_degree,
        max_pair_degree=max_pair_degree,
    )


def is_linear(host: Hypergraph) -> bool:
    """
    Whether any two edges share at most one vertex.

    Args:
        host (Hypergraph): the hypergraph.

    Returns:
        bool: True if the hypergraph is linear.
    """
    if host.uniformity < 2:
        return True
    seen = set()
    for edge in host.edges:
        for pair in itertools.combinations(edge, 2):
            if pair in seen:
                return False
            seen.add(pair)
    return True


def transversal_edges(host: Hypergraph, partition: Partition) -> List[int]:
    """
    Ids of the edges with one vertex in each part.

    Args:
        host (Hypergraph): the hypergraph.
        partition (Partition): a partition of its vertices.

    Returns:
        List[int]: the ids of the transversal edges.
    """
    if host.num_edges == 0:
        return []
    labels = np.asarray(partition.part_of, dtype=np.int64)[np.asarray(host.edges)]
    if host.uniformity == 1:
        return list(range(host.num_edges))
    ordered = np.sort(labels, axis=1)
    mask = np.all(np.diff(ordered, axis=1) != 0, axis=1)
    return [int(edge_id) for edge_id in np.flatnonzero(mask)]


def _improve_partition(host: Hypergraph, part_of: List[int], target: float) -> List[int]:
    """
    Single-vertex reassignment hill climbing on the number of transversal edges.
    Stops when the target is reached or when no move improves the count.
    """
    r = host.uniformity

    def transversal_count_at(vertex: int) -> int:
        return sum(
            1
            for edge_id in host.incident(vertex)
            if len({part_of[u] for u in host.edges[edge_id]}) == r
        )

    count = len(transversal_edges(host, Partition(part_of, r)))
    while count < target:
        best_move = None
        best_gain = 0
        for vertex in host.non_isolated_vertices():
            original = part_of[vertex]
            before = transversal_count_at(vertex)
            for part in range(r):
                if part == original:
                    continue
                part_of[vertex] = part
                gain = transversal_count_at(vertex) - before
                if gain > best_gain:
                    best_gain = gain
                    best_move = (vertex, part)
            part_of[vertex] = original
        if best_move is None:
            logger.info(
                "Hill climbing stopped at %i transversal edges, below the target %f.",
                count,
                target,
            )
            break
        part_of[best_move[0]] = best_move[1]
        count += best_gain
    return part_of


def _transversal_probability(parts: List[Optional[int]], r: int) -> float:
    """
    Probability that an edge becomes transversal when its unassigned vertices
    (``None``) are put in uniform random parts.
    """
    assigned = [part for part in parts if part is not None]
    if len(set(assigned)) < len(assigned):
        return 0.0
    free = len(parts) - len(assigned)
    return math.factorial(r - len(assigned)) / math.factorial(r - len(assigned) - free) / r**free


def _derandomized_partition(host: Hypergraph) -> List[int]:
    """
    Method of conditional expectations on the uniform random r-partition.

    Vertices are assigned one at a time to the part maximising the expected
    number of transversal edges. The expectation never decreases, so the result
    keeps at least r! r^{-r} e(H) edges.
    """
    r = host.uniformity
    part_of: List[Optional[int]] = [None] * host.vertex_count

    def expectation_at(vertex: int) -> float:
        return sum(
            _transversal_probability([part_of[u] for u in host.edges[edge_id]], r)
            for edge_id in host.incident(vertex)
        )

    for vertex in range(host.vertex_count):
        best_part, best_value = 0, -1.0
        for part in range(r):
            part_of[vertex] = part
            value = expectation_at(vertex)
            if value > best_value:
                best_part, best_value = part, value
        part_of[vertex] = best_part
    return [int(part) for part in part_of if part is not None]


def partite_reduce(
    host: Hypergraph,
    seed: int,
    hint: Optional[Partition] = None,
    retries: int = DEFAULT_PARTITE_RETRIES,
) -> Tuple[Partition, Hypergraph]:
    """
    Find an r-partition and the r-partite subgraph of its transversal edges,
    with at least r^{-r} e(H) edges.

    Random partitions are tried ``retries`` times and the best one is kept.
    If it is still below the bound, single-vertex reassignments are applied
    greedily. When they stall below the bound, the partition is rebuilt by the
    method of conditional expectations, which always meets it.

    Args:
        host (Hypergraph): the hypergraph.
        seed (int): seed of the random partitions.
        hint (Optional[Partition], optional): candidate partition, used as is if it meets the bound. Defaults to None.
        retries (int, optional): number of random partitions. Defaults to DEFAULT_PARTITE_RETRIES.

    Raises:
        InvalidInput: if the hint is not an r-partition of the host.
        RelturanError: if no construction meets the bound.

    Returns:
        Tuple[Partition, Hypergraph]: the partition and the subgraph, with the partition attached.
    """
    r = host.uniformity
    target = host.num_edges / r**r

    if hint is None and host.partition is not None:
        hint = host.partition
    if hint is not None:
        if hint.vertex_count != host.vertex_count or hint.num_parts != r:
            raise InvalidInput("The hint is not an r-partition of the host vertices.")
        kept = transversal_edges(host, hint)
        if len(kept) >= target:
            logger.debug("Using the hint partition (%i/%i edges).", len(kept), host.num_edges)
            return hint, host.subgraph(kept).with_partition(hint)
        logger.info("The hint partition is below the bound, ignoring it.")

    if host.num_edges == 0:
        partition = Partition([vertex % r for vertex in range(host.vertex_count)], r)
        return partition, host.with_partition(partition)

    best_part_of: List[int] = []
    best_count = -1
    for attempt in range(retries):
        rng = make_rng(seed, attempt)
        part_of = [int(part) for part in rng.integers(0, r, size=host.vertex_count)]
        count = len(transversal_edges(host, Partition(part_of, r)))
        if count > best_count:
            best_count = count
            best_part_of = part_of
    logger.debug(
        "Best random partition keeps %i/%i edges (target %f).",
        best_count,
        host.num_edges,
        target,
    )
    kept: List[int] = []
    if best_part_of:
        if best_count < target:
            best_part_of = _improve_partition(host, best_part_of, target)
        partition = Partition(best_part_of, r)
        kept = transversal_edges(host, partition)
    if len(kept) < target:
        partition = Partition(_derandomized_partition(host), r)
        kept = transversal_edges(host, partition)
        logger.debug("Derandomized partition keeps %i/%i edges.", len(kept), host.num_edges)
        if len(kept) < target:
            raise RelturanError(
                f"Partite reduction kept {len(kept)} edges, below the bound {target}."
            )
    return partition, host.subgraph(kept).with_partition(partition)


def induced_k_graph(
    host: Hypergraph, partition: Partition, index_set: Iterable[int]
) -> Hypergraph:
    """
    The |I|-graph induced by the union of the parts in I: every edge is cut down
    to its vertices in these parts, duplicates are collapsed.

    Args:
        host (Hypergraph): an r-partite hypergraph.
        partition (Partition): an r-partition of the host.
        index_set (Iterable[int]): nonempty set of 0-based part indices.

    Raises:
        InvalidInput: if the partition is not an r-partition of the host or if the index set is invalid.

    Returns:
        Hypergraph: the induced |I|-graph, on the same vertex ids.
    """
    indices = frozenset(int(index) for index in index_set)
    if not indices:
        raise InvalidInput("The index set must be nonempty.")
    if not indices.issubset(range(host.uniformity)):
        raise InvalidInput(
            f"Index set {sorted(indices)} is not included in [0, {host.uniformity})."
        )
    if partition.num_parts != host.uniformity or partition.vertex_count != host.vertex_count:
        raise InvalidInput("The partition is not an r-partition of the host.")
    for edge in host.edges:
        if not partition.is_transversal(edge):
            raise InvalidInput(f"Edge {edge} is not transversal to the partition.")
    projected = {
        tuple(vertex for vertex in edge if partition.part_of[vertex] in indices)
        for edge in host.edges
    }
    return Hypergraph(len(indices), host.vertex_count, projected)


@dataclass(frozen=True)
class Matching:
    """
    Set of pairwise disjoint edges of a hypergraph.
    """

    edge_ids: Tuple[int, ...]  #: Ids of the edges of the matching, ascending.

    @property
    def size(self) -> int:
        """
        Number of edges of the matching.
        """
        return len(self.edge_ids)

    def edges(self, host: Hypergraph) -> List[Edge]:
        """
        The edges of the matching.

        Args:
            host (Hypergraph): the hypergraph the ids refer to.

        Returns:
            List[Edge]: the edges.
        """
        return [host.edges[edge_id] for edge_id in self.edge_ids]


def greedy_matching(host: Hypergraph) -> Matching:
    """
    Greedy matching in ascending edge id order. It has at least e(H)/(r Delta) edges.

    Args:
        host (Hypergraph): the hypergraph.

    Returns:
        Matching: the matching, empty for an empty hypergraph.
    """
    used = set()
    chosen = []
    for edge_id, edge in enumerate(host.edges):
        if used.isdisjoint(edge):
            chosen.append(edge_id)
            used.update(edge)
    return Matching(tuple(chosen))


def linear_subgraph(host: Hypergraph) -> Hypergraph:
    """
    Greedy linear subgraph: edges are inserted in ascending id order unless they
    share a pair with an already inserted edge. It has at least e(H)/(r^2 D)
    edges where D is the maximum 2-degree.

    Args:
        host (Hypergraph): the hypergraph.

    Returns:
        Hypergraph: a linear subgraph.
    """
    covered = set()
    kept = []
    for edge_id, edge in enumerate(host.edges):
        pairs = list(itertools.combinations(edge, 2))
        if covered.isdisjoint(pairs):
            kept.append(edge_id)
            covered.update(pairs)
    return host.subgraph(kept)

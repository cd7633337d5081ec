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
Codegree split and dyadic selection on r-partite hosts.

The k-set of an edge for an index set I is the set of its vertices in the
parts of I. In an r-partite host, the k-degree of that set is the number of
edges with the same k-set.
"""
import math
import logging
import itertools
from collections import Counter
from typing import Dict, Iterable, List, Optional, Tuple

from relturan.exceptions import ExtractionPreconditionError, InvalidInput
from relturan.hypergraph import Edge, Hypergraph, Partition

logger = logging.getLogger(__name__)


def _partition_of(host: Hypergraph, k: int) -> Partition:
    if host.partition is None:
        raise InvalidInput("The host needs an attached r-partition.")
    if not 1 <= k < host.uniformity:
        raise InvalidInput(f"k must satisfy 1 <= k < r = {host.uniformity}, got {k}.")
    return host.partition


def k_sets(host: Hypergraph, index_set: Iterable[int]) -> List[Edge]:
    """
    The k-set of every edge for an index set.

    Args:
        host (Hypergraph): an r-partite host with its partition.
        index_set (Iterable[int]): the part indices.

    Returns:
        List[Edge]: the k-set of each edge, in edge id order, sorted by vertex.
    """
    assert host.partition is not None
    indices = frozenset(index_set)
    part_of = host.partition.part_of
    return [
        tuple(vertex for vertex in edge if part_of[vertex] in indices) for edge in host.edges
    ]


def k_set_degrees(host: Hypergraph, index_set: Iterable[int]) -> List[int]:
    """
    The k-degree of the k-set of every edge.

    Args:
        host (Hypergraph): an r-partite host with its partition.
        index_set (Iterable[int]): the part indices.

    Returns:
        List[int]: the degrees, in edge id order.
    """
    sets = k_sets(host, index_set)
    counter = Counter(sets)
    return [counter[key] for key in sets]


def codegree_split(
    host: Hypergraph, k: int, threshold: float, index_set: Optional[Iterable[int]] = None
) -> Tuple[List[int], List[int]]:
    """
    Split the edges by the k-degree of their k-set in the designated parts.

    Args:
        host (Hypergraph): an r-partite host with its partition.
        k (int): 1 <= k < r.
        threshold (float): D, an edge is heavy when its k-set has k-degree at least D.
        index_set (Optional[Iterable[int]], optional): the parts, of size k. Defaults to the prefix {0..k-1}.

    Raises:
        InvalidInput: if the host has no partition or k is out of range.

    Returns:
        Tuple[List[int], List[int]]: the heavy and the light edge ids.
    """
    _partition_of(host, k)
    indices = tuple(range(k)) if index_set is None else tuple(index_set)
    if len(set(indices)) != k:
        raise InvalidInput(f"The index set {indices} does not have {k} parts.")
    heavy, light = [], []
    for edge_id, degree in enumerate(k_set_degrees(host, indices)):
        (heavy if degree >= threshold else light).append(edge_id)
    return heavy, light


def heavy_edges_any(host: Hypergraph, k: int, threshold: float) -> List[int]:
    """
    Edges with at least one k-subset (in any k parts) of k-degree at least D.

    Args:
        host (Hypergraph): an r-partite host with its partition.
        k (int): 1 <= k < r.
        threshold (float): D.

    Returns:
        List[int]: the heavy edge ids.
    """
    _partition_of(host, k)
    heavy = set()
    for index_set in itertools.combinations(range(host.uniformity), k):
        heavy.update(codegree_split(host, k, threshold, index_set)[0])
    return sorted(heavy)


def heaviest_index_set(host: Hypergraph, k: int, threshold: float) -> Tuple[int, ...]:
    """
    The index set I of size k with the most heavy edges, the prefix first and
    then lexicographic order on ties.

    Args:
        host (Hypergraph): an r-partite host with its partition.
        k (int): 1 <= k < r.
        threshold (float): D.

    Returns:
        Tuple[int, ...]: the index set.
    """
    _partition_of(host, k)
    best: Tuple[int, ...] = tuple(range(k))
    best_count = -1
    for index_set in itertools.combinations(range(host.uniformity), k):
        count = len(codegree_split(host, k, threshold, index_set)[0])
        if count > best_count:
            best, best_count = index_set, count
    return best


def to_prefix(host: Hypergraph, index_set: Iterable[int]) -> Hypergraph:
    """
    Reorder the parts of the host so that the index set becomes the prefix.

    Args:
        host (Hypergraph): an r-partite host with its partition.
        index_set (Iterable[int]): the parts moved to the front, in order.

    Returns:
        Hypergraph: the same edges with the reordered partition.
    """
    assert host.partition is not None
    front = list(index_set)
    order = front + [part for part in range(host.uniformity) if part not in front]
    return host.with_partition(host.partition.permuted(order))


def dyadic_select(
    host: Hypergraph, k: int, threshold: float, index_set: Optional[Iterable[int]] = None
) -> Tuple[List[int], float]:
    """
    Largest dyadic class of heavy edges: the edges whose k-set has k-degree in
    [2^j D, 2^{j+1} D), for the j with the most edges (smallest j on ties).

    Args:
        host (Hypergraph): an r-partite host with its partition.
        k (int): 1 <= k < r.
        threshold (float): D.
        index_set (Optional[Iterable[int]], optional): the parts. Defaults to the heaviest index set.

    Raises:
        ExtractionPreconditionError: if less than half of the edges are heavy, the light branch applies.

    Returns:
        Tuple[List[int], float]: the edge ids of the class and D' = 2^j D.
    """
    if threshold <= 0:
        raise InvalidInput(f"D must be positive, got {threshold}.")
    indices = (
        heaviest_index_set(host, k, threshold) if index_set is None else tuple(index_set)
    )
    heavy, _ = codegree_split(host, k, threshold, indices)
    if 2 * len(heavy) < host.num_edges or not heavy:
        raise ExtractionPreconditionError(
            f"Only {len(heavy)} of {host.num_edges} edges are heavy at D = {threshold}, use the light branch."
        )
    degrees = k_set_degrees(host, indices)
    classes: Dict[int, List[int]] = {}
    for edge_id in heavy:
        level = int(math.floor(math.log2(degrees[edge_id] / threshold)))
        # floor(log2) can be off by one near powers of two
        while 2 ** (level + 1) * threshold <= degrees[edge_id]:
            level += 1
        while level > 0 and 2**level * threshold > degrees[edge_id]:
            level -= 1
        classes.setdefault(level, []).append(edge_id)
    level = max(sorted(classes), key=lambda key: len(classes[key]))
    logger.debug(
        "Dyadic classes %s, selected j = %i.",
        {key: len(value) for key, value in sorted(classes.items())},
        level,
    )
    return classes[level], float(2**level * threshold)

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
Berge cycles through their core sets.

A hypergraph contains a Berge l-cycle iff there are distinct vertices
v_1, ..., v_l and distinct edges e_1, ..., e_l with v_i, v_{i+1} in e_i
(indices modulo l). The search alternates vertices and edges and prunes with
the distance back to v_1 in the 2-section.
"""
import math
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Union

from relturan.exceptions import InvalidInput, ResourceExceeded
from relturan.hypergraph import Hypergraph
from relturan.families.witness import Witness, WitnessKind, sunflower_kernel

logger = logging.getLogger(__name__)


def _distances(host: Hypergraph, source: int, minimum: int) -> Dict[int, int]:
    """
    Distances from ``source`` in the 2-section restricted to vertices >= minimum.
    """
    distances = {source: 0}
    queue = deque([source])
    while queue:
        vertex = queue.popleft()
        for edge_id in host.incident(vertex):
            for neighbour in host.edges[edge_id]:
                if neighbour >= minimum and neighbour not in distances:
                    distances[neighbour] = distances[vertex] + 1
                    queue.append(neighbour)
    return distances


# pylint: disable=too-many-arguments
def _walk(
    host: Hypergraph,
    length: int,
    core: List[int],
    edge_ids: List[int],
    distances: Dict[int, int],
    minimum: int,
) -> Iterator[List[int]]:
    """
    Extend a partial core sequence. ``core`` has one more vertex than
    ``edge_ids`` has edges. Yields the edge id sequences of closed cycles.
    """
    current = core[-1]
    if len(core) == length:
        for edge_id in host.incident(current):
            if edge_id not in edge_ids and core[0] in host.edges[edge_id]:
                yield edge_ids + [edge_id]
        return
    remaining = length - len(core)
    for edge_id in host.incident(current):
        if edge_id in edge_ids:
            continue
        for vertex in host.edges[edge_id]:
            if vertex < minimum or vertex in core:
                continue
            if distances.get(vertex, length + 1) > remaining:
                continue
            core.append(vertex)
            edge_ids.append(edge_id)
            yield from _walk(host, length, core, edge_ids, distances, minimum)
            core.pop()
            edge_ids.pop()


def iter_berge_cycles(
    host: Hypergraph,
    length: int,
    forbid_sunflower: bool = False,
    through: Optional[Sequence[int]] = None,
) -> Iterator[Witness]:
    """
    Iterate over the Berge l-cycles of a host, as core-set witnesses. The same
    edge set can be reported several times (rotations are not, reflections and
    other core sets are).

    Args:
        host (Hypergraph): the host.
        length (int): l, at least 2.
        forbid_sunflower (bool, optional): skip cycles whose edges form a sunflower. Defaults to False.
        through (Optional[Sequence[int]], optional): host edge the cycle must use. Defaults to None.

    Raises:
        InvalidInput: if l < 2.

    Yields:
        Witness: core-set witnesses.
    """
    if length < 2:
        raise InvalidInput(f"Berge cycles have at least 2 edges, got {length}.")
    if length > host.num_edges:
        return
    if forbid_sunflower and length == 2:
        # two edges always have a constant pairwise intersection
        return
    label = f"berge-ns:{length}" if forbid_sunflower else f"berge:{length}"

    def accept(core: List[int], cycle: List[int]) -> Optional[Witness]:
        edges = tuple(host.edges[edge_id] for edge_id in cycle)
        if forbid_sunflower and sunflower_kernel(edges) is not None:
            return None
        return Witness(
            kind=WitnessKind.BERGE_CYCLE,
            edges=edges,
            core=tuple(core),
            forbid_sunflower=forbid_sunflower,
            label=label,
        )

    if through is not None:
        anchor_id = host.edge_id(through)
        if anchor_id is None:
            return
        anchor = host.edges[anchor_id]
        for first in anchor:
            distances = _distances(host, first, 0)
            for second in anchor:
                if second == first:
                    continue
                core = [first, second]
                for cycle in _walk(host, length, core, [anchor_id], distances, 0):
                    witness = accept(core, cycle)
                    if witness is not None:
                        yield witness
        return

    for start in host.non_isolated_vertices():
        distances = _distances(host, start, start)
        core = [start]
        for cycle in _walk(host, length, core, [], distances, start):
            witness = accept(core, cycle)
            if witness is not None:
                yield witness


def find_berge_cycle(
    host: Hypergraph,
    length: int,
    forbid_sunflower: bool = False,
    through: Optional[Sequence[int]] = None,
) -> Optional[Witness]:
    """
    Find a Berge l-cycle.

    Args:
        host (Hypergraph): the host.
        length (int): l, at least 2.
        forbid_sunflower (bool, optional): only accept cycles that are not sunflowers. Defaults to False.
        through (Optional[Sequence[int]], optional): host edge the cycle must use. Defaults to None.

    Raises:
        InvalidInput: if l < 2.

    Returns:
        Optional[Witness]: a core-set witness, or None.
    """
    for witness in iter_berge_cycles(host, length, forbid_sunflower, through):
        return witness
    return None


def girth(host: Hypergraph, max_length: int) -> Union[int, float]:
    """
    Length of the shortest Berge cycle, looking at lengths up to ``max_length``.

    Args:
        host (Hypergraph): the host.
        max_length (int): largest length searched, at least 2.

    Raises:
        InvalidInput: if max_length < 2.

    Returns:
        Union[int, float]: the girth, or math.inf if there is no Berge cycle of length at most max_length.
    """
    if max_length < 2:
        raise InvalidInput(f"max_length must be at least 2, got {max_length}.")
    for length in range(2, max_length + 1):
        if find_berge_cycle(host, length) is not None:
            return length
    return math.inf


def iter_berge_copies(
    host: Hypergraph,
    length: int,
    forbid_sunflower: bool = False,
    budget: Optional[int] = None,
) -> Iterator[FrozenSet[int]]:
    """
    Iterate over the edge sets of Berge l-cycles, each once.

    Args:
        host (Hypergraph): the host.
        length (int): l.
        forbid_sunflower (bool, optional): skip sunflowers. Defaults to False.
        budget (Optional[int], optional): maximum number of witnesses examined. Defaults to None.

    Raises:
        ResourceExceeded: if the budget is exhausted.

    Yields:
        FrozenSet[int]: edge ids of each copy.
    """
    seen: Set[FrozenSet[int]] = set()
    for examined, witness in enumerate(iter_berge_cycles(host, length, forbid_sunflower)):
        if budget is not None and examined >= budget:
            raise ResourceExceeded(f"Berge cycle enumeration exceeded {budget} witnesses.")
        copy = frozenset(host.edge_id(edge) for edge in witness.edges)  # type: ignore[misc]
        if copy not in seen:
            seen.add(copy)
            yield copy

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
Sunflowers and the sunflower-plus family.

A sunflower-plus is a sunflower S with kernel K plus one more edge e with
e and K intersecting, such that S with e is not a sunflower. A host contains
a member with at most l + 1 edges (l >= 2) iff it contains one built on a
two-edge sunflower: drop all petals but the one meeting e outside K and one
other petal.
"""
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterator, Optional, Sequence

from relturan.exceptions import InvalidInput
from relturan.hypergraph import Hypergraph
from relturan.families.witness import Witness, WitnessKind, sunflower_kernel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Sunflower:
    """
    Result of a positive sunflower test.
    """

    kernel: Optional[FrozenSet[int]]  #: The kernel, None for a single edge (any subset works).


def is_sunflower(hypergraph: Hypergraph) -> Optional[Sunflower]:
    """
    Test whether the edges have a constant pairwise intersection.

    Args:
        hypergraph (Hypergraph): at least one edge.

    Raises:
        InvalidInput: if there is no edge.

    Returns:
        Optional[Sunflower]: the sunflower with its kernel (unconstrained for a single edge), or None.
    """
    if hypergraph.num_edges == 0:
        raise InvalidInput("A sunflower has at least one edge.")
    if hypergraph.num_edges == 1:
        return Sunflower(kernel=None)
    kernel = sunflower_kernel(hypergraph.edges)
    if kernel is None:
        return None
    return Sunflower(kernel=kernel)


def is_sunflower_plus(
    hypergraph: Hypergraph, length: int, allow_single_petal: bool = False
) -> Optional[Witness]:
    """
    Membership test for the sunflower-plus family with sunflowers of 2 to l edges.

    Args:
        hypergraph (Hypergraph): the candidate F.
        length (int): l, at least 2.
        allow_single_petal (bool, optional): also accept a one-edge sunflower. Two edges always form a sunflower, so this never adds a member. Defaults to False.

    Raises:
        InvalidInput: if l < 2.

    Returns:
        Optional[Witness]: a witness naming the extra edge and the kernel, or None.
    """
    if length < 2:
        raise InvalidInput(f"l must be at least 2, got {length}.")
    edges = hypergraph.edges
    if len(edges) < 2 or sunflower_kernel(edges) is not None:
        return None
    smallest = 1 if allow_single_petal else 2
    for extra in edges:
        rest = [edge for edge in edges if edge != extra]
        if not smallest <= len(rest) <= length:
            continue
        if len(rest) == 1:
            kernel = frozenset(rest[0]) & frozenset(extra)
        else:
            found = sunflower_kernel(rest)
            if found is None:
                continue
            kernel = found
        if kernel & frozenset(extra):
            return Witness(
                kind=WitnessKind.SUNFLOWER_PLUS,
                edges=tuple(edges),
                kernel=kernel,
                extra_edge=extra,
                label=f"sunflower-plus:{length}",
            )
    return None


def _triple(
    host: Hypergraph, first: int, second: int, extra: int, length: int
) -> Optional[Witness]:
    edges = host.edges
    kernel = frozenset(edges[first]) & frozenset(edges[second])
    if not kernel & frozenset(edges[extra]):
        return None
    if sunflower_kernel([edges[first], edges[second], edges[extra]]) is not None:
        return None
    return Witness(
        kind=WitnessKind.SUNFLOWER_PLUS,
        edges=(edges[first], edges[second], edges[extra]),
        kernel=kernel,
        extra_edge=edges[extra],
        label=f"sunflower-plus:{length}",
    )


def iter_sunflower_plus(
    host: Hypergraph, length: int = 2, through: Optional[Sequence[int]] = None
) -> Iterator[Witness]:
    """
    Iterate over the three-edge sunflower-plus configurations of a host. Every
    member of the family with at most l + 1 edges contains one of them.

    Args:
        host (Hypergraph): the host.
        length (int, optional): l, only used in the witness label. Defaults to 2.
        through (Optional[Sequence[int]], optional): host edge that must be used. Defaults to None.

    Yields:
        Witness: sunflower-plus witnesses with three edges.
    """
    if through is not None:
        anchor = host.edge_id(through)
        if anchor is None:
            return
        # the anchor as a petal
        petals = sorted(
            {
                edge_id
                for vertex in host.edges[anchor]
                for edge_id in host.incident(vertex)
                if edge_id != anchor
            }
        )
        for second in petals:
            kernel = set(host.edges[anchor]) & set(host.edges[second])
            extras = sorted(
                {
                    edge_id
                    for vertex in kernel
                    for edge_id in host.incident(vertex)
                    if edge_id not in (anchor, second)
                }
            )
            for extra in extras:
                witness = _triple(host, anchor, second, extra, length)
                if witness is not None:
                    yield witness
        # the anchor as the extra edge
        for vertex in host.edges[anchor]:
            around = [edge_id for edge_id in host.incident(vertex) if edge_id != anchor]
            for index, first in enumerate(around):
                for second in around[index + 1 :]:
                    witness = _triple(host, first, second, anchor, length)
                    if witness is not None:
                        yield witness
        return

    for first in range(host.num_edges):
        neighbours = sorted(
            {
                edge_id
                for vertex in host.edges[first]
                for edge_id in host.incident(vertex)
                if edge_id > first
            }
        )
        for second in neighbours:
            kernel = set(host.edges[first]) & set(host.edges[second])
            extras = sorted(
                {
                    edge_id
                    for vertex in kernel
                    for edge_id in host.incident(vertex)
                    if edge_id not in (first, second)
                }
            )
            for extra in extras:
                witness = _triple(host, first, second, extra, length)
                if witness is not None:
                    yield witness


def find_sunflower_plus(
    host: Hypergraph, length: int, through: Optional[Sequence[int]] = None
) -> Optional[Witness]:
    """
    Find a member of the sunflower-plus family with sunflowers of 2 to l edges.

    Args:
        host (Hypergraph): the host.
        length (int): l, at least 2.
        through (Optional[Sequence[int]], optional): host edge that must be used. Defaults to None.

    Raises:
        InvalidInput: if l < 2.

    Returns:
        Optional[Witness]: a three-edge witness, or None.
    """
    if length < 2:
        raise InvalidInput(f"l must be at least 2, got {length}.")
    for witness in iter_sunflower_plus(host, length, through):
        return witness
    return None

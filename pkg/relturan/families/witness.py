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
Certificates attached to positive detections, and their independent validator.
"""
import enum
import logging
import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from relturan.hypergraph import Edge, Hypergraph

logger = logging.getLogger(__name__)


class WitnessKind(enum.Enum):
    """
    Type of certificate.
    """

    BERGE_CYCLE = "berge-cycle"  #: Core set v_1..v_l and distinct edges e_1..e_l.
    EMBEDDING = "embedding"  #: Injective embedding of an explicit pattern.
    SUNFLOWER = "sunflower"  #: Edges with constant pairwise intersection.
    SUNFLOWER_PLUS = "sunflower-plus"  #: A sunflower plus an extra edge meeting the kernel.


# pylint: disable=too-many-instance-attributes
@dataclass(frozen=True)
class Witness:
    """
    Certificate that a family member occurs in a host. Edges are given by their
    vertices so that the certificate survives edge renumbering.
    """

    kind: WitnessKind  #: Type of certificate.
    edges: Tuple[Edge, ...]  #: Host edges of the occurrence, in certificate order.
    core: Tuple[int, ...] = ()  #: Core set of a Berge cycle.
    forbid_sunflower: bool = False  #: For Berge cycles, whether the edges must not form a sunflower.
    pattern: Optional[Hypergraph] = None  #: Embedded pattern.
    embedding: Tuple[Tuple[int, int], ...] = ()  #: Pairs (pattern vertex, host vertex).
    kernel: Optional[FrozenSet[int]] = None  #: Kernel of a sunflower.
    extra_edge: Optional[Edge] = None  #: Extra edge of a sunflower-plus.
    label: str = ""  #: Canonical name of the family member that was found.

    @property
    def mapping(self) -> Dict[int, int]:
        """
        Embedding as a dict from pattern vertices to host vertices.
        """
        return dict(self.embedding)

    def to_dict(self) -> Dict:
        """
        Serializable representation.

        Returns:
            Dict: the witness as a dict.
        """
        res: Dict = {
            "kind": self.kind.value,
            "label": self.label,
            "edges": [list(edge) for edge in self.edges],
        }
        if self.kind == WitnessKind.BERGE_CYCLE:
            res["core"] = list(self.core)
            res["forbid_sunflower"] = self.forbid_sunflower
        if self.kind == WitnessKind.EMBEDDING:
            res["embedding"] = {str(key): value for key, value in self.embedding}
        if self.kernel is not None:
            res["kernel"] = sorted(self.kernel)
        if self.extra_edge is not None:
            res["extra_edge"] = list(self.extra_edge)
        return res


def sunflower_kernel(edges: Sequence[Sequence[int]]) -> Optional[FrozenSet[int]]:
    """
    Common pairwise intersection of at least two edges, if it is constant.

    Args:
        edges (Sequence[Sequence[int]]): at least two distinct edges.

    Returns:
        Optional[FrozenSet[int]]: the kernel, or None if the edges are not a sunflower.
    """
    sets = [frozenset(edge) for edge in edges]
    kernel = sets[0] & sets[1]
    for first, second in itertools.combinations(sets, 2):
        if first & second != kernel:
            return None
    return kernel


def _validate_berge(witness: Witness) -> bool:
    length = len(witness.edges)
    if len(witness.core) != length or length < 2:
        return False
    if len(set(witness.core)) != length:
        return False
    for index, edge in enumerate(witness.edges):
        following = witness.core[(index + 1) % length]
        if witness.core[index] not in edge or following not in edge:
            return False
    if witness.forbid_sunflower and sunflower_kernel(witness.edges) is not None:
        return False
    return True


def _validate_embedding(witness: Witness) -> bool:
    if witness.pattern is None:
        return False
    mapping = witness.mapping
    if len(set(mapping.values())) != len(mapping):
        return False
    images = []
    for edge in witness.pattern.edges:
        if any(vertex not in mapping for vertex in edge):
            return False
        images.append(tuple(sorted(mapping[vertex] for vertex in edge)))
    return sorted(images) == sorted(witness.edges)


def _validate_sunflower_plus(witness: Witness) -> bool:
    if witness.extra_edge is None or witness.kernel is None:
        return False
    if witness.extra_edge not in witness.edges:
        return False
    rest = [edge for edge in witness.edges if edge != witness.extra_edge]
    if len(rest) >= 2 and sunflower_kernel(rest) != witness.kernel:
        return False
    if len(rest) == 1 and not witness.kernel.issubset(rest[0]):
        return False
    if not witness.kernel & frozenset(witness.extra_edge):
        return False
    return sunflower_kernel(witness.edges) is None


def validate_witness(host: Hypergraph, witness: Witness) -> bool:
    """
    Re-check a certificate against a host, without using the detectors.

    Args:
        host (Hypergraph): the host the witness claims to be in.
        witness (Witness): the certificate.

    Returns:
        bool: True if the certificate is valid.
    """
    if len(set(witness.edges)) != len(witness.edges):
        return False
    if not all(host.has_edge(edge) for edge in witness.edges):
        return False
    if witness.kind == WitnessKind.BERGE_CYCLE:
        return _validate_berge(witness)
    if witness.kind == WitnessKind.EMBEDDING:
        return _validate_embedding(witness)
    if witness.kind == WitnessKind.SUNFLOWER:
        if len(witness.edges) < 2:
            return len(witness.edges) == 1
        return sunflower_kernel(witness.edges) == witness.kernel
    if witness.kind == WitnessKind.SUNFLOWER_PLUS:
        return _validate_sunflower_plus(witness)
    logger.error("Unknown witness kind %s", witness.kind)
    return False

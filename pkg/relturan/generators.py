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
Reproducible host hypergraphs.

Spec strings (``parse_host_spec``):

* ``complete:n,r``: the complete r-graph K_n^r;
* ``random:n,r,p,seed=S``: the random r-graph H_{n,p}^r;
* ``sunflower:D,k,r``: D edges pairwise meeting in the kernel {0..k-1};
* ``partite:s1,...,sr``: the complete r-partite r-graph, with its partition;
* ``linear-random:n,r,p,seed=S``: a greedy linear subgraph of H_{n,p}^r;
* ``fano``: the Fano plane.

Random hosts draw one uniform number per r-subset, the r-subsets being taken
in colex order, from a PCG64 generator seeded with ``SeedSequence(S)``. An
r-subset {c_1 < ... < c_r} has colex rank C(c_1, 1) + ... + C(c_r, r).
"""
import enum
import math
import logging
import itertools
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.special import comb

from relturan.configuration import DEFAULT_MAX_VERTICES
from relturan.exceptions import InvalidInput, ResourceExceeded
from relturan.hypergraph import Edge, Hypergraph, Partition, linear_subgraph
from relturan.utils import make_rng

logger = logging.getLogger(__name__)

#: Number of uniform draws per numpy call when sampling random hosts.
DRAW_CHUNK = 1 << 20

#: The Fano plane, the linear 3-graph on 7 vertices with 7 edges.
FANO_PLANE = Hypergraph(
    3,
    7,
    [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)],
)


class HostKind(enum.Enum):
    """
    Kinds of generated hosts. The value is the spec string prefix.
    """

    COMPLETE = "complete"
    RANDOM = "random"
    SUNFLOWER = "sunflower"
    PARTITE_COMPLETE = "partite"
    LINEAR_RANDOM = "linear-random"
    FANO = "fano"


class Theorem(enum.Enum):
    """
    Statements whose tightness hosts can be generated.
    """

    BERGE = "berge"  #: Non-sunflower Berge cycles, tight on cliques K_n^r with n^{r-1} about Delta.
    LOOSE = "loose"  #: Loose cycles, tight on H_{n,p}^r with p = n^{2-r}.
    LINEAR_LOOSE = "linear-loose"  #: Loose cycles in linear hosts, tight on linear subgraphs of H_{n,p}^r.


# pylint: disable=too-many-instance-attributes
@dataclass(frozen=True)
class HostSpec:
    """
    Description of a host. Only the fields of the kind are meaningful.
    """

    kind: HostKind  #: Kind of host.
    vertex_count: int = 0  #: n for complete and random hosts.
    uniformity: int = 3  #: r.
    probability: float = 0.0  #: Edge probability of random hosts.
    seed: Optional[int] = None  #: Seed of random hosts.
    petals: int = 0  #: Number of edges of a sunflower host.
    kernel_size: int = 0  #: Kernel size of a sunflower host.
    sizes: Tuple[int, ...] = ()  #: Part sizes of a complete partite host.

    def __post_init__(self) -> None:
        if self.kind == HostKind.FANO:
            return
        if self.kind == HostKind.PARTITE_COMPLETE:
            if len(self.sizes) < 2 or any(size <= 0 for size in self.sizes):
                raise InvalidInput(f"Partite hosts need at least two positive part sizes, got {self.sizes}.")
            return
        if self.uniformity < 2:
            raise InvalidInput(f"Hosts need uniformity at least 2, got {self.uniformity}.")
        if self.kind == HostKind.SUNFLOWER:
            if self.petals <= 0:
                raise InvalidInput(f"A sunflower host needs a positive number of edges, got {self.petals}.")
            if not 0 <= self.kernel_size < self.uniformity:
                raise InvalidInput(
                    f"The kernel size must be in [0, r), got {self.kernel_size} for r = {self.uniformity}."
                )
            return
        if self.vertex_count <= 0:
            raise InvalidInput(f"The number of vertices must be positive, got {self.vertex_count}.")
        if self.kind in (HostKind.RANDOM, HostKind.LINEAR_RANDOM):
            if not 0 <= self.probability <= 1:
                raise InvalidInput(f"p must be in [0, 1], got {self.probability}.")
            if self.seed is None:
                raise InvalidInput("Random hosts need a seed.")

    @property
    def r(self) -> int:
        """
        Uniformity of the generated host.
        """
        if self.kind == HostKind.FANO:
            return 3
        if self.kind == HostKind.PARTITE_COMPLETE:
            return len(self.sizes)
        return self.uniformity

    def total_vertices(self) -> int:
        """
        Number of vertices of the generated host.

        Returns:
            int: n.
        """
        if self.kind == HostKind.FANO:
            return 7
        if self.kind == HostKind.PARTITE_COMPLETE:
            return sum(self.sizes)
        if self.kind == HostKind.SUNFLOWER:
            return self.kernel_size + self.petals * (self.uniformity - self.kernel_size)
        return self.vertex_count

    def to_string(self) -> str:
        """
        Spec string of the host, accepted by ``parse_host_spec``.

        Returns:
            str: the spec string.
        """
        if self.kind == HostKind.FANO:
            return "fano"
        if self.kind == HostKind.COMPLETE:
            return f"complete:{self.vertex_count},{self.uniformity}"
        if self.kind == HostKind.SUNFLOWER:
            return f"sunflower:{self.petals},{self.kernel_size},{self.uniformity}"
        if self.kind == HostKind.PARTITE_COMPLETE:
            return "partite:" + ",".join(str(size) for size in self.sizes)
        return (
            f"{self.kind.value}:{self.vertex_count},{self.uniformity},"
            f"{self.probability!r},seed={self.seed}"
        )

    def __str__(self) -> str:
        return self.to_string()


def _integers(values: List[str], spec: str) -> List[int]:
    try:
        return [int(value) for value in values]
    except ValueError as exc:
        raise InvalidInput(f"Expected integers in host spec {spec!r}.") from exc


def parse_host_spec(spec: str) -> HostSpec:
    """
    Parse a host spec string.

    Args:
        spec (str): the spec, see the module documentation.

    Raises:
        InvalidInput: if the spec is malformed.

    Returns:
        HostSpec: the parsed spec.
    """
    spec = spec.strip()
    name, _, argument = spec.partition(":")
    try:
        kind = HostKind(name)
    except ValueError as exc:
        raise InvalidInput(f"Unknown host kind {name!r} in {spec!r}.") from exc
    values = [value.strip() for value in argument.split(",")] if argument else []
    if kind == HostKind.FANO:
        if values:
            raise InvalidInput("The fano host takes no argument.")
        return HostSpec(kind)
    if kind == HostKind.PARTITE_COMPLETE:
        return HostSpec(kind, sizes=tuple(_integers(values, spec)))
    if kind in (HostKind.COMPLETE, HostKind.SUNFLOWER):
        if len(values) != (2 if kind == HostKind.COMPLETE else 3):
            raise InvalidInput(f"Wrong number of arguments in host spec {spec!r}.")
        numbers = _integers(values, spec)
        if kind == HostKind.COMPLETE:
            return HostSpec(kind, vertex_count=numbers[0], uniformity=numbers[1])
        return HostSpec(kind, petals=numbers[0], kernel_size=numbers[1], uniformity=numbers[2])
    if len(values) != 4 or not values[3].startswith("seed="):
        raise InvalidInput(f"Random hosts are written {name}:n,r,p,seed=S, got {spec!r}.")
    vertex_count, uniformity = _integers(values[:2], spec)
    seed = _integers([values[3][len("seed="):]], spec)[0]
    try:
        probability = float(values[2])
    except ValueError as exc:
        raise InvalidInput(f"Malformed probability in host spec {spec!r}.") from exc
    return HostSpec(
        kind,
        vertex_count=vertex_count,
        uniformity=uniformity,
        probability=probability,
        seed=seed,
    )


def complete(vertex_count: int, uniformity: int) -> Hypergraph:
    """
    The complete r-graph K_n^r.

    Args:
        vertex_count (int): n.
        uniformity (int): r.

    Returns:
        Hypergraph: K_n^r, empty when n < r.
    """
    return Hypergraph(
        uniformity, vertex_count, itertools.combinations(range(vertex_count), uniformity)
    )


def colex_unrank(rank: int, uniformity: int) -> Edge:
    """
    The r-subset of the non-negative integers with the given colex rank.

    Args:
        rank (int): the rank, non-negative.
        uniformity (int): r.

    Returns:
        Edge: the sorted r-subset.
    """
    edge = []
    for size in range(uniformity, 0, -1):
        # largest c with C(c, size) <= rank
        low, high = size - 1, size
        while comb(high, size, exact=True) <= rank:
            high *= 2
        while high - low > 1:
            middle = (low + high) // 2
            if comb(middle, size, exact=True) <= rank:
                low = middle
            else:
                high = middle
        edge.append(low)
        rank -= comb(low, size, exact=True)
    return tuple(reversed(edge))


def random_hypergraph(vertex_count: int, uniformity: int, probability: float, seed: int) -> Hypergraph:
    """
    The random r-graph H_{n,p}^r: each r-subset is an edge independently with probability p.

    Args:
        vertex_count (int): n.
        uniformity (int): r.
        probability (float): p.
        seed (int): the seed.

    Returns:
        Hypergraph: the sample.
    """
    total = comb(vertex_count, uniformity, exact=True)
    rng = make_rng(seed)
    edges = []
    for start in range(0, total, DRAW_CHUNK):
        draws = rng.random(min(DRAW_CHUNK, total - start))
        for offset in np.flatnonzero(draws < probability).tolist():
            edges.append(colex_unrank(start + offset, uniformity))
    logger.debug(
        "H(%i, %i, %f) drew %i edges out of %i r-sets.",
        vertex_count,
        uniformity,
        probability,
        len(edges),
        total,
    )
    return Hypergraph(uniformity, vertex_count, edges)


def sunflower_host(petals: int, kernel_size: int, uniformity: int) -> Hypergraph:
    """
    Sunflower with the kernel {0..k-1} and disjoint petals.

    Args:
        petals (int): number of edges.
        kernel_size (int): k < r.
        uniformity (int): r.

    Returns:
        Hypergraph: the sunflower.
    """
    petal_size = uniformity - kernel_size
    kernel = tuple(range(kernel_size))
    edges = [
        kernel + tuple(range(kernel_size + index * petal_size, kernel_size + (index + 1) * petal_size))
        for index in range(petals)
    ]
    return Hypergraph(uniformity, kernel_size + petals * petal_size, edges)


def partite_complete(sizes: Tuple[int, ...]) -> Hypergraph:
    """
    Complete r-partite r-graph with the given part sizes and its partition.

    Args:
        sizes (Tuple[int, ...]): the part sizes.

    Returns:
        Hypergraph: the host, with the partition attached.
    """
    parts = []
    first = 0
    for size in sizes:
        parts.append(list(range(first, first + size)))
        first += size
    partition = Partition.from_parts(parts, first)
    return Hypergraph(len(sizes), first, itertools.product(*parts), partition)


def generate(spec: HostSpec, max_vertices: int = DEFAULT_MAX_VERTICES) -> Hypergraph:
    """
    Generate a host. Random hosts are deterministic given their seed.

    Args:
        spec (HostSpec): the host description.
        max_vertices (int, optional): vertex budget. Defaults to DEFAULT_MAX_VERTICES.

    Raises:
        ResourceExceeded: if the host would have more than ``max_vertices`` vertices.

    Returns:
        Hypergraph: the host.
    """
    if spec.total_vertices() > max_vertices:
        raise ResourceExceeded(
            f"Host {spec} has {spec.total_vertices()} vertices, the limit is {max_vertices}."
        )
    logger.info("Generating host %s.", spec)
    if spec.kind == HostKind.FANO:
        return FANO_PLANE
    if spec.kind == HostKind.COMPLETE:
        return complete(spec.vertex_count, spec.uniformity)
    if spec.kind == HostKind.SUNFLOWER:
        return sunflower_host(spec.petals, spec.kernel_size, spec.uniformity)
    if spec.kind == HostKind.PARTITE_COMPLETE:
        return partite_complete(spec.sizes)
    assert spec.seed is not None
    host = random_hypergraph(spec.vertex_count, spec.uniformity, spec.probability, spec.seed)
    if spec.kind == HostKind.LINEAR_RANDOM:
        host = linear_subgraph(host)
    return host


def _ceil_root(value: int, degree: int) -> int:
    """
    Smallest n with n^degree >= value.
    """
    root = max(int(round(value ** (1.0 / degree))), 1)
    while root**degree < value:
        root += 1
    while root > 1 and (root - 1) ** degree >= value:
        root -= 1
    return root


def tightness_host(theorem: Theorem, delta: int, uniformity: int = 3, seed: int = 0) -> HostSpec:
    """
    Host on which a lower bound is known to be tight, sized for maximum degree
    about Delta: the clique K_n^r with n = ceil(Delta^{1/(r-1)}) for Berge
    cycles, H_{n,p}^r with n = Delta and p = n^{2-r} for loose cycles, and its
    linear subgraph for loose cycles in linear hosts.

    Args:
        theorem (Theorem): the statement.
        delta (int): target maximum degree.
        uniformity (int, optional): r. Defaults to 3.
        seed (int, optional): seed of random hosts. Defaults to 0.

    Raises:
        InvalidInput: if Delta is too small for an r-graph host.

    Returns:
        HostSpec: the host description.
    """
    if delta < 1:
        raise InvalidInput(f"Delta must be positive, got {delta}.")
    if theorem == Theorem.BERGE:
        vertex_count = _ceil_root(delta, uniformity - 1)
        if vertex_count < uniformity:
            raise InvalidInput(
                f"Delta = {delta} gives a clique on {vertex_count} < r = {uniformity} vertices."
            )
        return HostSpec(HostKind.COMPLETE, vertex_count=vertex_count, uniformity=uniformity)
    if delta < uniformity:
        raise InvalidInput(f"Delta = {delta} is smaller than r = {uniformity}.")
    probability = math.pow(delta, 2 - uniformity)
    kind = HostKind.RANDOM if theorem == Theorem.LOOSE else HostKind.LINEAR_RANDOM
    return HostSpec(
        kind,
        vertex_count=delta,
        uniformity=uniformity,
        probability=probability,
        seed=seed,
    )

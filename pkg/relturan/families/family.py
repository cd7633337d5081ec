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
Symbolic forbidden families and their containment predicate.

Spec strings (``ForbiddenFamily.parse``):

* ``berge:L``, ``berge-upto:L``, ``berge-ns:L``, ``berge-upto-ns:L``: Berge
  cycles of length L, of length 2 to L, and the same without sunflowers;
* ``loose:L``: the loose cycle C_L^r;
* ``sunflower-plus:L``: sunflowers with 2 to L edges plus an edge meeting the kernel;
* ``f5`` or ``f5:counting``: the two edge lists of F5;
* ``patterns:a.hg;b.hg``: explicit patterns read from files;
* ``none``: the empty family;
* members joined with ``|`` form a union.
"""
import enum
import hashlib
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Set, Tuple, FrozenSet

from relturan.exceptions import InvalidInput, ResourceExceeded
from relturan.hypergraph import DegreeProfile, Hypergraph
from relturan.families.berge import iter_berge_copies, find_berge_cycle
from relturan.families.canonical import canonical_form
from relturan.families.embedding import (
    F5_VARIANTS,
    find_embedding,
    iter_copies,
    loose_cycle,
)
from relturan.families.projection import project_family
from relturan.families.sunflower import find_sunflower_plus, iter_sunflower_plus
from relturan.families.witness import Witness

logger = logging.getLogger(__name__)


class FamilyKind(enum.Enum):
    """
    Kinds of forbidden families. The value is the spec string prefix.
    """

    BERGE_CYCLE = "berge"
    BERGE_UP_TO = "berge-upto"
    BERGE_NO_SUNFLOWER = "berge-ns"
    BERGE_UP_TO_NO_SUNFLOWER = "berge-upto-ns"
    LOOSE_CYCLE = "loose"
    SUNFLOWER_PLUS = "sunflower-plus"
    F5 = "f5"
    UNION = "union"
    EXPLICIT = "patterns"


BERGE_KINDS = (
    FamilyKind.BERGE_CYCLE,
    FamilyKind.BERGE_UP_TO,
    FamilyKind.BERGE_NO_SUNFLOWER,
    FamilyKind.BERGE_UP_TO_NO_SUNFLOWER,
)


@dataclass(frozen=True)
class ForbiddenFamily:
    """
    A finite symbolic description of a family of r-graphs, with a decidable
    containment predicate. Use the class methods to build one.
    """

    kind: FamilyKind  #: Kind of family.
    uniformity: int  #: Uniformity r of the members.
    length: int = 0  #: Cycle length l, for the cycle kinds.
    members: Tuple["ForbiddenFamily", ...] = ()  #: Members of a union.
    patterns: Tuple[Hypergraph, ...] = ()  #: Explicit patterns.
    variant: str = "caption"  #: Edge list used for F5.

    def __post_init__(self) -> None:
        if self.uniformity < 2:
            raise InvalidInput(f"Families need uniformity at least 2, got {self.uniformity}.")
        if self.kind in BERGE_KINDS and self.length < 2:
            raise InvalidInput(f"Berge cycles have length at least 2, got {self.length}.")
        if self.kind == FamilyKind.SUNFLOWER_PLUS and self.length < 2:
            raise InvalidInput(f"Sunflower-plus needs l >= 2, got {self.length}.")
        if self.kind == FamilyKind.LOOSE_CYCLE and self.length < 3:
            raise InvalidInput(f"Loose cycles have length at least 3, got {self.length}.")
        if self.kind == FamilyKind.F5:
            if self.uniformity != 3:
                raise InvalidInput("F5 is 3-uniform.")
            if self.variant not in F5_VARIANTS:
                raise InvalidInput(f"Unknown F5 variant {self.variant}.")
        for member in self.members:
            if member.uniformity != self.uniformity:
                raise InvalidInput("All members of a union must have the same uniformity.")
        for pattern in self.patterns:
            if pattern.uniformity != self.uniformity:
                raise InvalidInput("All patterns must have the family uniformity.")
            if pattern.num_edges == 0:
                raise InvalidInput("Explicit patterns need at least one edge.")

    @classmethod
    def berge_cycle(cls, length: int, uniformity: int) -> "ForbiddenFamily":
        """
        B_l^r, the Berge l-cycles.
        """
        return cls(FamilyKind.BERGE_CYCLE, uniformity, length)

    @classmethod
    def berge_up_to(cls, length: int, uniformity: int) -> "ForbiddenFamily":
        """
        B_[l]^r, the Berge cycles of length 2 to l.
        """
        return cls(FamilyKind.BERGE_UP_TO, uniformity, length)

    @classmethod
    def berge_no_sunflower(cls, length: int, uniformity: int) -> "ForbiddenFamily":
        """
        The Berge l-cycles which are not sunflowers.
        """
        return cls(FamilyKind.BERGE_NO_SUNFLOWER, uniformity, length)

    @classmethod
    def berge_up_to_no_sunflower(cls, length: int, uniformity: int) -> "ForbiddenFamily":
        """
        The Berge cycles of length 2 to l which are not sunflowers.
        """
        return cls(FamilyKind.BERGE_UP_TO_NO_SUNFLOWER, uniformity, length)

    @classmethod
    def loose_cycle(cls, length: int, uniformity: int) -> "ForbiddenFamily":
        """
        The loose cycle C_l^r.
        """
        return cls(FamilyKind.LOOSE_CYCLE, uniformity, length)

    @classmethod
    def sunflower_plus(cls, length: int, uniformity: int) -> "ForbiddenFamily":
        """
        Sunflowers with 2 to l edges plus an edge meeting the kernel, not sunflowers themselves.
        """
        return cls(FamilyKind.SUNFLOWER_PLUS, uniformity, length)

    @classmethod
    def f5(cls, variant: str = "caption") -> "ForbiddenFamily":
        """
        The 3-graph F5.
        """
        return cls(FamilyKind.F5, 3, variant=variant)

    @classmethod
    def union(cls, members: Sequence["ForbiddenFamily"], uniformity: int) -> "ForbiddenFamily":
        """
        Union of families. Nested unions are flattened and repeated members dropped.
        """
        flat: List[ForbiddenFamily] = []
        seen: Set[str] = set()
        for member in members:
            for leaf in member.leaves():
                body = leaf._body()
                if body not in seen:
                    seen.add(body)
                    flat.append(leaf)
        return cls(FamilyKind.UNION, uniformity, members=tuple(flat))

    @classmethod
    def none(cls, uniformity: int) -> "ForbiddenFamily":
        """
        The empty family: every hypergraph is free of it.
        """
        return cls(FamilyKind.UNION, uniformity)

    @classmethod
    def explicit(cls, patterns: Sequence[Hypergraph]) -> "ForbiddenFamily":
        """
        A finite list of explicit patterns.
        """
        if not patterns:
            raise InvalidInput("An explicit family needs at least one pattern.")
        return cls(FamilyKind.EXPLICIT, patterns[0].uniformity, patterns=tuple(patterns))

    @classmethod
    def berge_sunflower_free(cls, length: int, uniformity: int) -> "ForbiddenFamily":
        """
        The union of the non-sunflower Berge cycles of length at most l and the
        sunflower-plus family: the family certified by the Berge pipeline.
        """
        return cls.union(
            [
                cls.berge_up_to_no_sunflower(length, uniformity),
                cls.sunflower_plus(length, uniformity),
            ],
            uniformity,
        )

    @classmethod
    def parse(cls, spec: str, uniformity: int) -> "ForbiddenFamily":
        """
        Parse a family spec string.

        Args:
            spec (str): the spec, see the module documentation.
            uniformity (int): the uniformity r.

        Raises:
            InvalidInput: if the spec is malformed.

        Returns:
            ForbiddenFamily: the family.
        """
        spec = spec.strip()
        if "|" in spec:
            return cls.union(
                [cls.parse(part, uniformity) for part in spec.split("|")], uniformity
            )
        if spec == "none":
            return cls.none(uniformity)
        name, _, argument = spec.partition(":")
        if name in ("f5", "patterns"):
            if name == "f5":
                family = cls.f5(argument or "caption")
            else:
                paths = [path for path in argument.split(";") if path]
                family = cls.explicit([Hypergraph.load(path) for path in paths])
            if family.uniformity != uniformity:
                raise InvalidInput(f"{spec} is {family.uniformity}-uniform, expected {uniformity}.")
            return family
        try:
            kind = FamilyKind(name)
        except ValueError as exc:
            raise InvalidInput(f"Unknown family {name!r} in {spec!r}.") from exc
        if kind in (FamilyKind.UNION, FamilyKind.EXPLICIT, FamilyKind.F5):
            raise InvalidInput(f"Malformed family spec {spec!r}.")
        try:
            length = int(argument)
        except ValueError as exc:
            raise InvalidInput(f"Family {name} needs an integer length, got {argument!r}.") from exc
        return cls(kind, uniformity, length)

    def canonical(self) -> str:
        """
        Canonical string of the family, used as a cache key.

        Returns:
            str: the canonical string, prefixed by the uniformity.
        """
        return f"r{self.uniformity}:{self._body()}"

    def _body(self) -> str:
        if self.kind == FamilyKind.UNION:
            if not self.members:
                return "none"
            return "|".join(sorted(member._body() for member in self.members))
        if self.kind == FamilyKind.F5:
            return "f5" if self.variant == "caption" else f"f5:{self.variant}"
        if self.kind == FamilyKind.EXPLICIT:
            digests = sorted(
                hashlib.sha256(repr(canonical_form(pattern)).encode("utf-8")).hexdigest()[:16]
                for pattern in self.patterns
            )
            return "patterns:" + ";".join(digests)
        return f"{self.kind.value}:{self.length}"

    def __str__(self) -> str:
        return self._body()

    @property
    def is_empty(self) -> bool:
        """
        Whether the family has no member at all.
        """
        return self.kind == FamilyKind.UNION and all(
            member.is_empty for member in self.members
        )

    def leaves(self) -> List["ForbiddenFamily"]:
        """
        The non-union families this family is the union of.

        Returns:
            List[ForbiddenFamily]: the leaves.
        """
        if self.kind == FamilyKind.UNION:
            return [leaf for member in self.members for leaf in member.leaves()]
        return [self]

    def _check_host(self, host: Hypergraph) -> None:
        if host.uniformity != self.uniformity:
            raise InvalidInput(
                f"Family {self} is {self.uniformity}-uniform, the host is {host.uniformity}-uniform."
            )

    def _berge_lengths(self) -> range:
        if self.kind in (FamilyKind.BERGE_CYCLE, FamilyKind.BERGE_NO_SUNFLOWER):
            return range(self.length, self.length + 1)
        return range(2, self.length + 1)

    def _forbid_sunflower(self) -> bool:
        return self.kind in (
            FamilyKind.BERGE_NO_SUNFLOWER,
            FamilyKind.BERGE_UP_TO_NO_SUNFLOWER,
        )

    def find(self, host: Hypergraph, through: Optional[Sequence[int]] = None) -> Optional[Witness]:
        """
        Find a member of the family in the host.

        Args:
            host (Hypergraph): the host.
            through (Optional[Sequence[int]], optional): host edge the occurrence must use. Defaults to None.

        Raises:
            InvalidInput: if the uniformities differ.

        Returns:
            Optional[Witness]: a witness, or None if the host is free of the family.
        """
        self._check_host(host)
        if self.kind == FamilyKind.UNION:
            for member in self.members:
                witness = member.find(host, through)
                if witness is not None:
                    return witness
            return None
        if self.kind in BERGE_KINDS:
            for length in self._berge_lengths():
                witness = find_berge_cycle(host, length, self._forbid_sunflower(), through)
                if witness is not None:
                    return witness
            return None
        if self.kind == FamilyKind.SUNFLOWER_PLUS:
            return find_sunflower_plus(host, self.length, through)
        for pattern in self.explicit_patterns():
            witness = find_embedding(pattern, host, through, label=str(self))
            if witness is not None:
                return witness
        return None

    def contains(self, host: Hypergraph) -> bool:
        """
        Whether the host contains a member of the family.

        Args:
            host (Hypergraph): the host.

        Returns:
            bool: True if the host is not free of the family.
        """
        return self.find(host) is not None

    def explicit_patterns(self) -> List[Hypergraph]:
        """
        The patterns of the family when it is given by finitely many explicit
        members (loose cycle, F5, explicit list).

        Raises:
            InvalidInput: for the other kinds.

        Returns:
            List[Hypergraph]: the patterns.
        """
        if self.kind == FamilyKind.LOOSE_CYCLE:
            return [loose_cycle(self.length, self.uniformity)]
        if self.kind == FamilyKind.F5:
            return [F5_VARIANTS[self.variant]]
        if self.kind == FamilyKind.EXPLICIT:
            return list(self.patterns)
        if self.kind == FamilyKind.UNION:
            return [pattern for member in self.members for pattern in member.explicit_patterns()]
        raise InvalidInput(f"Family {self} has no explicit pattern list.")

    def iter_copies(self, host: Hypergraph, budget: Optional[int] = None) -> Iterator[FrozenSet[int]]:
        """
        Iterate over the occurrences of the family as sets of host edge ids.
        Hitting every yielded set makes the host free of the family.

        Args:
            host (Hypergraph): the host.
            budget (Optional[int], optional): maximum number of search nodes per member. Defaults to None.

        Raises:
            ResourceExceeded: if the budget is exhausted.

        Yields:
            FrozenSet[int]: edge ids of each occurrence.
        """
        self._check_host(host)
        if self.kind == FamilyKind.UNION:
            for member in self.members:
                yield from member.iter_copies(host, budget)
            return
        if self.kind in BERGE_KINDS:
            for length in self._berge_lengths():
                yield from iter_berge_copies(host, length, self._forbid_sunflower(), budget)
            return
        if self.kind == FamilyKind.SUNFLOWER_PLUS:
            for witness in iter_sunflower_plus(host, self.length):
                yield frozenset(host.edge_id(edge) for edge in witness.edges)  # type: ignore[misc]
            return
        for pattern in self.explicit_patterns():
            yield from iter_copies(pattern, host, budget)

    def enumerate_copies(self, host: Hypergraph, budget: Optional[int] = None) -> List[FrozenSet[int]]:
        """
        All occurrences of the family, each edge set once.

        Args:
            host (Hypergraph): the host.
            budget (Optional[int], optional): maximum number of copies. Defaults to None.

        Raises:
            ResourceExceeded: if there are more than ``budget`` copies. The copies found so far are attached.

        Returns:
            List[FrozenSet[int]]: the copies.
        """
        seen: Set[FrozenSet[int]] = set()
        copies: List[FrozenSet[int]] = []
        for copy in self.iter_copies(host, budget):
            if copy in seen:
                continue
            seen.add(copy)
            copies.append(copy)
            if budget is not None and len(copies) > budget:
                raise ResourceExceeded(
                    f"More than {budget} copies of {self} in the host.", partial=copies
                )
        return copies

    def pattern_size(self) -> Optional[int]:
        """
        Number of edges of the members when they all have the same size.

        Returns:
            Optional[int]: the size, or None if it is not fixed.
        """
        if self.kind in (FamilyKind.LOOSE_CYCLE, FamilyKind.BERGE_CYCLE, FamilyKind.BERGE_NO_SUNFLOWER):
            return self.length
        if self.kind == FamilyKind.F5:
            return 4
        if self.kind == FamilyKind.EXPLICIT:
            sizes = {pattern.num_edges for pattern in self.patterns}
            return sizes.pop() if len(sizes) == 1 else None
        return None

    def copy_bound(self, profile: DegreeProfile, num_edges: int) -> Optional[float]:
        """
        Upper bound on the number of copies in a host with the given profile:
        9 D Delta e(H) for F5, r^l D Delta^{l-2} e(H) for loose cycles.

        Args:
            profile (DegreeProfile): profile of the host.
            num_edges (int): e(H).

        Returns:
            Optional[float]: the bound, or None when no counting bound is known.
        """
        pair_degree = profile.max_pair_degree
        if self.kind == FamilyKind.F5:
            return 9.0 * pair_degree * profile.max_degree * num_edges
        if self.kind == FamilyKind.LOOSE_CYCLE:
            return float(
                self.uniformity**self.length
                * pair_degree
                * profile.max_degree ** (self.length - 2)
                * num_edges
            )
        return None

    def projected(self, k: int) -> "ForbiddenFamily":
        """
        A family at uniformity r-k+1 such that every member of P_k(F), for F in
        this family, contains one of its members. An inner extractor avoiding it
        makes the lifted graph free of this family.

        Explicit kinds are projected by enumeration. Non-sunflower Berge cycles
        and sunflower-plus project to the same union one level down, as do plain
        Berge l-cycles when l >= r (they cannot be sunflowers then). A loose
        l-cycle projects to the loose l-cycle of uniformity r-k+1. Its shared
        vertices cannot lie in the first k parts and consecutive ones need
        distinct parts, so the projection is empty unless r-k >= 3, or r-k = 2
        with l even.

        Args:
            k (int): 2 <= k < r.

        Raises:
            InvalidInput: if k is out of range or no projection is known for the family.

        Returns:
            ForbiddenFamily: the projected family, possibly empty.
        """
        r = self.uniformity
        if not 2 <= k < r:
            raise InvalidInput(f"k must satisfy 2 <= k < r = {r}, got {k}.")
        lower = r - k + 1
        if self.kind == FamilyKind.UNION:
            return ForbiddenFamily.union([member.projected(k) for member in self.members], lower)
        if self.kind in (
            FamilyKind.BERGE_NO_SUNFLOWER,
            FamilyKind.BERGE_UP_TO_NO_SUNFLOWER,
            FamilyKind.SUNFLOWER_PLUS,
        ) or (self.kind == FamilyKind.BERGE_CYCLE and self.length >= r):
            return ForbiddenFamily.berge_sunflower_free(self.length, lower)
        if self.kind == FamilyKind.LOOSE_CYCLE:
            if r - k < 2 or (r - k == 2 and self.length % 2):
                return ForbiddenFamily.none(lower)
            return ForbiddenFamily.loose_cycle(self.length, lower)
        if self.kind in BERGE_KINDS:
            raise InvalidInput(
                f"No projection rule for {self}: Berge cycles shorter than r can be sunflowers."
            )
        projections: List[Hypergraph] = []
        for pattern in self.explicit_patterns():
            projections.extend(project_family(pattern, k))
        if not projections:
            return ForbiddenFamily.none(lower)
        return ForbiddenFamily.explicit(projections)

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
Exact ground truth at desk scale.

``ex_relative`` computes the largest F-free subgraph of a host and
``ex_classical`` the largest F-free r-graph on t vertices, by branch and bound
over the edges. Above the configured ceilings, or when the node budget runs
out, a randomized greedy insertion with local search takes over and the result
is flagged as not proved exact.
"""
import json
import logging
import threading
from pathlib import Path
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Union

from scipy.special import comb

from relturan.configuration import DEFAULT_ORACLE_BUDGET, OracleConfiguration
from relturan.exceptions import InvalidInput, VerificationFailure
from relturan.hypergraph import Hypergraph
from relturan.families.family import ForbiddenFamily
from relturan.generators import complete
from relturan.utils import make_rng

logger = logging.getLogger(__name__)

#: Name of the cache file inside the cache directory.
CACHE_FILE_NAME = "oracle-cache.jsonl"


@dataclass(frozen=True)
class CompleteHost:
    """
    The complete r-graph on t vertices, described symbolically.
    """

    vertex_count: int  #: t.
    uniformity: int  #: r.

    def hypergraph(self) -> Hypergraph:
        """
        Materialize the complete r-graph.

        Returns:
            Hypergraph: K_t^r.
        """
        return complete(self.vertex_count, self.uniformity)

    def __str__(self) -> str:
        return f"complete:{self.vertex_count},{self.uniformity}"


@dataclass
class OracleQuery:
    """
    A relative Turán query: host, forbidden family and node budget.
    """

    host: Union[Hypergraph, CompleteHost]  #: The host, explicit or complete.
    family: ForbiddenFamily  #: The forbidden family.
    budget: int = field(default=DEFAULT_ORACLE_BUDGET)  #: Maximum number of search nodes.
    seed: int = 0  #: Seed of the inexact search.

    def __post_init__(self) -> None:
        if self.budget <= 0:
            raise InvalidInput(f"The oracle budget must be positive, got {self.budget}.")
        if self.host.uniformity != self.family.uniformity:
            raise InvalidInput(
                f"Host is {self.host.uniformity}-uniform but family {self.family} is "
                f"{self.family.uniformity}-uniform."
            )

    def hypergraph(self) -> Hypergraph:
        """
        The host as a Hypergraph.

        Returns:
            Hypergraph: the host.
        """
        if isinstance(self.host, CompleteHost):
            return self.host.hypergraph()
        return self.host

    def cache_key(self) -> str:
        """
        Key of the query in the result cache: canonical family and host hash.

        Returns:
            str: the key.
        """
        if isinstance(self.host, CompleteHost):
            host_key = str(self.host)
        else:
            host_key = f"sha256:{self.host.digest()}"
        return f"{self.family.canonical()}|{host_key}"


@dataclass
class OracleResult:
    """
    Answer of the oracle.
    """

    optimum: int  #: Number of edges of the best subgraph found.
    witness_subgraph: Hypergraph  #: The best subgraph found, family-free.
    proved_exact: bool  #: True if the optimum is proved.
    nodes_explored: int  #: Number of branch and bound nodes.

    def to_dict(self) -> Dict:
        """
        Serializable representation.

        Returns:
            Dict: the result as a dict.
        """
        return {
            "optimum": self.optimum,
            "proved_exact": self.proved_exact,
            "nodes_explored": self.nodes_explored,
            "uniformity": self.witness_subgraph.uniformity,
            "vertex_count": self.witness_subgraph.vertex_count,
            "edges": [list(edge) for edge in self.witness_subgraph.edges],
        }

    @classmethod
    def from_dict(cls, content: Dict) -> "OracleResult":
        """
        Rebuild a result from ``to_dict`` output.

        Args:
            content (Dict): the dict.

        Raises:
            InvalidInput: if a key is missing.

        Returns:
            OracleResult: the result.
        """
        try:
            witness = Hypergraph(
                content["uniformity"], content["vertex_count"], content["edges"]
            )
            return cls(
                optimum=int(content["optimum"]),
                witness_subgraph=witness,
                proved_exact=bool(content["proved_exact"]),
                nodes_explored=int(content["nodes_explored"]),
            )
        except KeyError as exc:
            raise InvalidInput(f"Oracle result without {exc}.") from exc


class ResultCache:
    """
    Append-only JSON lines cache of proved results, keyed by
    ``OracleQuery.cache_key``. Writes are serialized by a lock.
    """

    path: Path  #: Location of the cache file.
    _entries: Dict[str, OracleResult]
    _lock: threading.Lock

    def __init__(self, directory: Union[str, Path]) -> None:
        """
        Args:
            directory (Union[str, Path]): directory of the cache. It is created if needed.
        """
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        self.path = directory / CACHE_FILE_NAME
        self._lock = threading.Lock()
        self._entries = {}
        if self.path.is_file():
            self._read()

    def _read(self) -> None:
        with open(self.path, "r", encoding="utf-8") as file:
            for number, line in enumerate(file, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                    self._entries[record["key"]] = OracleResult.from_dict(record["result"])
                except (ValueError, KeyError, InvalidInput):
                    logger.warning("Skipping malformed line %i of %s.", number, self.path)
        logger.debug("Loaded %i cached oracle results from %s.", len(self._entries), self.path)

    def get(self, key: str) -> Optional[OracleResult]:
        """
        Cached result of a query.

        Args:
            key (str): cache key of the query.

        Returns:
            Optional[OracleResult]: the result, or None.
        """
        return self._entries.get(key)

    def put(self, key: str, result: OracleResult) -> None:
        """
        Store a result. Results that are not proved exact are ignored.

        Args:
            key (str): cache key of the query.
            result (OracleResult): the result.
        """
        if not result.proved_exact:
            return
        with self._lock:
            if key in self._entries:
                return
            self._entries[key] = result
            with open(self.path, "a", encoding="utf-8") as file:
                file.write(json.dumps({"key": key, "result": result.to_dict()}, sort_keys=True))
                file.write("\n")

    def __len__(self) -> int:
        return len(self._entries)


class _BudgetExhausted(Exception):
    pass


def _addable(host: Hypergraph, family: ForbiddenFamily, chosen: Sequence[int], edge_id: int) -> bool:
    """
    Whether the edge can be added to the chosen ones without creating a member
    of the family. Only occurrences through the new edge are searched.
    """
    candidate = host.subgraph(list(chosen) + [edge_id])
    return family.find(candidate, through=host.edges[edge_id]) is None


class _BranchAndBound:
    """
    Include-first branch and bound over the edges, ordered by decreasing
    degree sum. On each inclusion, the later edges that can no longer be added
    are marked dead for the whole subtree.
    """

    # pylint: disable=too-many-instance-attributes
    def __init__(
        self,
        host: Hypergraph,
        family: ForbiddenFamily,
        budget: int,
        forced: Optional[int] = None,
    ) -> None:
        self.host = host
        self.family = family
        self.budget = budget
        self.nodes = 0
        degree_sum = [sum(host.degree(vertex) for vertex in edge) for edge in host.edges]
        self.order = sorted(range(host.num_edges), key=lambda edge_id: (-degree_sum[edge_id], edge_id))
        if forced is not None:
            self.order.remove(forced)
            self.order.insert(0, forced)
        self.forced = forced
        self.dead = [0] * host.num_edges
        self.chosen: List[int] = []
        self.best: List[int] = []

    def _live_from(self, position: int) -> int:
        return sum(1 for edge_id in self.order[position:] if not self.dead[edge_id])

    def _kill_after(self, position: int) -> List[int]:
        killed = []
        for edge_id in self.order[position:]:
            if not self.dead[edge_id] and not _addable(self.host, self.family, self.chosen, edge_id):
                self.dead[edge_id] += 1
                killed.append(edge_id)
        return killed

    def _search(self, position: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted()
        if len(self.chosen) + self._live_from(position) <= len(self.best):
            return
        if position == len(self.order):
            self.best = list(self.chosen)
            logger.debug("New incumbent with %i edges after %i nodes.", len(self.best), self.nodes)
            return
        edge_id = self.order[position]
        if self.dead[edge_id]:
            self._search(position + 1)
            return
        self.chosen.append(edge_id)
        killed = self._kill_after(position + 1)
        self._search(position + 1)
        for dead_id in killed:
            self.dead[dead_id] -= 1
        self.chosen.pop()
        if position == 0 and self.forced is not None:
            return
        if len(self.best) == len(self.order):
            return
        self.dead[edge_id] += 1
        self._search(position + 1)
        self.dead[edge_id] -= 1

    def run(self) -> bool:
        """
        Run the search.

        Returns:
            bool: True if the search completed within the budget.
        """
        for edge_id in self.order:
            if not _addable(self.host, self.family, [], edge_id):
                self.dead[edge_id] += 1
        try:
            self._search(0)
        except _BudgetExhausted:
            logger.warning(
                "Oracle budget of %i nodes exhausted, best found has %i edges.",
                self.budget,
                len(self.best),
            )
            return False
        return True


def _greedy_fill(
    host: Hypergraph,
    family: ForbiddenFamily,
    chosen: Set[int],
    candidates: Sequence[int],
    excluded: Optional[int] = None,
) -> None:
    for edge_id in candidates:
        if edge_id in chosen or edge_id == excluded:
            continue
        if _addable(host, family, sorted(chosen), edge_id):
            chosen.add(edge_id)


def _local_search(
    host: Hypergraph,
    family: ForbiddenFamily,
    restarts: int,
    swap_limit: int,
    seed: int,
) -> List[int]:
    """
    Randomized greedy insertion followed by swaps removing one edge and
    greedily refilling, kept when the size grows.
    """
    best: Set[int] = set()
    for restart in range(restarts):
        rng = make_rng(seed, restart)
        chosen: Set[int] = set()
        _greedy_fill(host, family, chosen, rng.permutation(host.num_edges).tolist())
        swaps = 0
        improved = True
        while improved and swaps < swap_limit:
            improved = False
            for removed in rng.permutation(sorted(chosen)).tolist():
                swaps += 1
                trial = set(chosen)
                trial.discard(removed)
                _greedy_fill(host, family, trial, rng.permutation(host.num_edges).tolist(), removed)
                if len(trial) > len(chosen):
                    chosen = trial
                    improved = True
                    break
                if swaps >= swap_limit:
                    break
        logger.debug("Restart %i reached %i edges.", restart, len(chosen))
        if len(chosen) > len(best):
            best = chosen
        if len(best) == host.num_edges:
            break
    return sorted(best)


def _solve(
    host: Hypergraph,
    family: ForbiddenFamily,
    budget: int,
    exact: bool,
    config: OracleConfiguration,
    seed: int,
    forced: Optional[int] = None,
) -> OracleResult:
    nodes = 0
    proved = False
    best: List[int] = []
    if family.is_empty:
        best, proved = list(range(host.num_edges)), True
    elif exact:
        search = _BranchAndBound(host, family, budget, forced)
        proved = search.run()
        best, nodes = search.best, search.nodes
    if not proved:
        heuristic = _local_search(
            host, family, config.inexact_restarts, config.swap_limit, seed
        )
        if len(heuristic) > len(best):
            best = heuristic
    witness = host.subgraph(best).with_partition(None)
    found = family.find(witness)
    if found is not None:
        raise VerificationFailure(
            f"The oracle witness contains {found.label or found.kind.value}."
        )
    return OracleResult(
        optimum=witness.num_edges,
        witness_subgraph=witness,
        proved_exact=proved,
        nodes_explored=nodes,
    )


def _cache_from(config: OracleConfiguration) -> Optional[ResultCache]:
    if config.cache_dir:
        return ResultCache(config.cache_dir)
    return None


def ex_relative(
    query: OracleQuery,
    config: Optional[OracleConfiguration] = None,
    cache: Optional[ResultCache] = None,
) -> OracleResult:
    """
    Largest family-free subgraph of the host.

    Hosts with more edges than ``exact_edge_ceiling`` go straight to the
    inexact search.

    Args:
        query (OracleQuery): the query.
        config (Optional[OracleConfiguration], optional): oracle settings. Defaults to None.
        cache (Optional[ResultCache], optional): result cache. Defaults to the configured one.

    Raises:
        VerificationFailure: if the witness fails the detectors.

    Returns:
        OracleResult: the result.
    """
    if config is None:
        config = OracleConfiguration()
    if cache is None:
        cache = _cache_from(config)
    key = query.cache_key()
    if cache is not None:
        cached = cache.get(key)
        if cached is not None:
            logger.debug("Oracle cache hit for %s.", key)
            return cached
    host = query.hypergraph()
    forced = None
    if isinstance(query.host, CompleteHost):
        exact = query.host.vertex_count <= config.classical_vertex_ceiling
        # K_t^r is edge transitive, so some optimum contains the first edge
        forced = 0 if host.num_edges else None
    else:
        exact = host.num_edges <= config.exact_edge_ceiling
    if not exact:
        logger.info(
            "Host with %i edges is above the exact ceiling, using the inexact search.",
            host.num_edges,
        )
    result = _solve(host, query.family, query.budget, exact, config, query.seed, forced)
    logger.info(
        "ex(%s, %s) %s %i (%i nodes).",
        query.host if isinstance(query.host, CompleteHost) else f"H[{host.num_edges} edges]",
        query.family,
        "=" if result.proved_exact else ">=",
        result.optimum,
        result.nodes_explored,
    )
    if cache is not None:
        cache.put(key, result)
    return result


def ex_classical(
    t: int,
    r: int,
    family: ForbiddenFamily,
    budget: Optional[int] = None,
    config: Optional[OracleConfiguration] = None,
    cache: Optional[ResultCache] = None,
) -> OracleResult:
    """
    Largest family-free r-graph on t vertices.

    Args:
        t (int): number of vertices.
        r (int): uniformity.
        family (ForbiddenFamily): the forbidden family.
        budget (Optional[int], optional): node budget. Defaults to the configured budget.
        config (Optional[OracleConfiguration], optional): oracle settings. Defaults to None.
        cache (Optional[ResultCache], optional): result cache. Defaults to the configured one.

    Raises:
        InvalidInput: if t is negative or the uniformities differ.

    Returns:
        OracleResult: the result, the witness being an r-graph on t vertices.
    """
    if config is None:
        config = OracleConfiguration()
    if t < 0:
        raise InvalidInput(f"t must be non-negative, got {t}.")
    if t < r:
        if family.uniformity != r:
            raise InvalidInput("The family uniformity must be r.")
        return OracleResult(0, Hypergraph(r, t), True, 0)
    logger.debug("ex(%i, %i, %s) with C(t, r) = %i.", t, r, family, int(comb(t, r, exact=True)))
    query = OracleQuery(
        CompleteHost(t, r), family, budget if budget is not None else config.budget
    )
    return ex_relative(query, config, cache)


def extremal_target(
    t: int,
    r: int,
    family: ForbiddenFamily,
    budget: Optional[int] = None,
    config: Optional[OracleConfiguration] = None,
    cache: Optional[ResultCache] = None,
) -> Hypergraph:
    """
    A family-free r-graph J on t vertices with the most edges the oracle
    finds. It is the target of the random homomorphism extractor.

    Args:
        t (int): number of vertices.
        r (int): uniformity.
        family (ForbiddenFamily): the family J must avoid.
        budget (Optional[int], optional): node budget. Defaults to the configured budget.
        config (Optional[OracleConfiguration], optional): oracle settings. Defaults to None.
        cache (Optional[ResultCache], optional): result cache. Defaults to the configured one.

    Returns:
        Hypergraph: J, possibly empty when t < r.
    """
    result = ex_classical(t, r, family, budget, config, cache)
    if not result.proved_exact:
        logger.warning("Target on %i vertices is not proved extremal (%i edges).", t, result.optimum)
    return result.witness_subgraph

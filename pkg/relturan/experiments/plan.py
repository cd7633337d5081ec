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
Experiment plans.

A plan is a JSON object::

    {
        "hosts": ["complete:6,3", "complete:7,3"],
        "pipeline": "berge",
        "ell": 4,
        "seeds": [0, 1],
        "trials": 100,
        "output": "results/berge4.jsonl",
        "oracle_compare": true,
        "append": false
    }
"""
import json
import logging
from pathlib import Path
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from relturan.configuration import DEFAULT_TRIALS
from relturan.exceptions import InvalidInput
from relturan.generators import HostSpec, parse_host_spec
from relturan.extractors.pipelines import PIPELINES

logger = logging.getLogger(__name__)


def record_key(host: HostSpec, seed: int) -> str:
    """
    Key of the record of a sweep point.

    Args:
        host (HostSpec): the host.
        seed (int): the seed.

    Returns:
        str: the key.
    """
    return f"{host.to_string()}#{seed}"


# pylint: disable=too-many-instance-attributes
@dataclass
class ExperimentPlan:
    """
    A sweep of hosts and seeds for one pipeline.
    """

    hosts: List[HostSpec]  #: The host sweep.
    pipeline: str  #: Name of the pipeline.
    output: Path  #: Path of the JSON lines result file.
    ell: Optional[int] = None  #: Cycle length for berge and loose.
    seeds: List[int] = field(default_factory=lambda: [0])  #: Seeds, one record per host and seed.
    trials: int = DEFAULT_TRIALS  #: Trials per point.
    oracle_compare: bool = False  #: Also run the oracle where it is feasible.
    append: bool = False  #: Keep the records of an existing output file.
    variant: str = "caption"  #: F5 edge list.

    def __post_init__(self) -> None:
        self.output = Path(self.output)
        if self.pipeline not in PIPELINES:
            raise InvalidInput(f"Unknown pipeline {self.pipeline}, expected one of {PIPELINES}.")
        if self.pipeline in ("berge", "loose") and self.ell is None:
            raise InvalidInput(f"The {self.pipeline} pipeline needs ell.")
        if not self.seeds:
            raise InvalidInput("A plan needs at least one seed.")
        if self.trials < 1:
            raise InvalidInput(f"trials must be positive, got {self.trials}.")
        if not self.hosts:
            logger.warning("The plan has an empty host sweep.")

    @classmethod
    def from_dict(cls, content: Dict[str, Any], base: Optional[Path] = None) -> "ExperimentPlan":
        """
        Build a plan from its JSON content.

        Args:
            content (Dict[str, Any]): the JSON object.
            base (Optional[Path], optional): directory relative output paths are resolved against. Defaults to None.

        Raises:
            InvalidInput: if a key is missing, unknown or malformed.

        Returns:
            ExperimentPlan: the plan.
        """
        known = {
            "hosts",
            "pipeline",
            "ell",
            "seeds",
            "trials",
            "output",
            "oracle_compare",
            "append",
            "variant",
        }
        unknown = set(content) - known
        if unknown:
            raise InvalidInput(f"Unknown plan keys: {sorted(unknown)}.")
        for key in ("hosts", "pipeline", "output"):
            if key not in content:
                raise InvalidInput(f"The plan has no {key}.")
        output = Path(content["output"])
        if base is not None and not output.is_absolute():
            output = base / output
        return cls(
            hosts=[parse_host_spec(spec) for spec in content["hosts"]],
            pipeline=content["pipeline"],
            output=output,
            ell=content.get("ell"),
            seeds=[int(seed) for seed in content.get("seeds", [0])],
            trials=int(content.get("trials", DEFAULT_TRIALS)),
            oracle_compare=bool(content.get("oracle_compare", False)),
            append=bool(content.get("append", False)),
            variant=content.get("variant", "caption"),
        )

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ExperimentPlan":
        """
        Read a plan file. Relative output paths are taken from the current directory.

        Args:
            path (Union[str, Path]): the JSON file.

        Raises:
            InvalidInput: if the file is not a valid plan.

        Returns:
            ExperimentPlan: the plan.
        """
        try:
            with open(path, "r", encoding="utf-8") as file:
                content = json.load(file)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"Plan {path} is not valid JSON: {exc}") from exc
        if not isinstance(content, dict):
            raise InvalidInput(f"Plan {path} should contain a JSON object.")
        return cls.from_dict(content)

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON content of the plan.

        Returns:
            Dict[str, Any]: the plan.
        """
        return {
            "hosts": [host.to_string() for host in self.hosts],
            "pipeline": self.pipeline,
            "ell": self.ell,
            "seeds": list(self.seeds),
            "trials": self.trials,
            "output": str(self.output),
            "oracle_compare": self.oracle_compare,
            "append": self.append,
            "variant": self.variant,
        }

    def points(self) -> Iterator[Tuple[str, HostSpec, int]]:
        """
        Sweep points in plan order.

        Yields:
            Tuple[str, HostSpec, int]: the record key, the host and the seed.
        """
        for host in self.hosts:
            for seed in self.seeds:
                yield record_key(host, seed), host, seed

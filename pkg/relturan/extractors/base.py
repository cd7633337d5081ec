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
Common types of the extractors: configuration, reports, the abstract
extractor used as inner step of the matching extractor, and the seeded trial
runner.
"""
import abc
import logging
import functools
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed

from relturan.configuration import (
    Configuration,
    OracleConfiguration,
    DEFAULT_C_T,
    DEFAULT_COPY_BUDGET,
    DEFAULT_INNER_TRIALS,
    DEFAULT_JOBS,
    DEFAULT_MAX_TARGET_SIZE,
    DEFAULT_TRIALS,
    DEFAULT_VERIFY,
)
from relturan.exceptions import InvalidInput, VerificationFailure
from relturan.hypergraph import DegreeProfile, Hypergraph, degree_profile
from relturan.families.family import ForbiddenFamily
from relturan.utils import child_seed, clamp_probability, make_rng

logger = logging.getLogger(__name__)


# pylint: disable=too-many-instance-attributes
@dataclass
class ExtractorConfig:
    """
    Parameters of an extraction. The defaults are those of the configuration file.
    """

    seed: int = 0  #: Seed of the run; trial i uses the stream (seed, i).
    trials: int = DEFAULT_TRIALS  #: Number of independent trials, the best is kept.
    t: Optional[int] = None  #: Target size of the homomorphism extractor. None means the pipeline default.
    p_override: Optional[float] = None  #: Sampling probability replacing the computed one.
    thresholds: Dict[str, float] = field(default_factory=dict)  #: Named thresholds such as D.
    verify: bool = DEFAULT_VERIFY  #: Check the output with the detectors.
    inner_trials: int = DEFAULT_INNER_TRIALS  #: Trials of nested extractors.
    c_t: float = DEFAULT_C_T  #: Constant c in t = c Delta^{1/(r-1)}.
    max_target_size: int = DEFAULT_MAX_TARGET_SIZE  #: Largest t for which a target is computed.
    copy_budget: int = DEFAULT_COPY_BUDGET  #: Largest number of copies enumerated by the deletion method.
    jobs: int = DEFAULT_JOBS  #: Number of worker processes for the trials.
    oracle: OracleConfiguration = field(default_factory=OracleConfiguration)  #: Settings of the target oracle.

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise InvalidInput(f"At least one trial is needed, got {self.trials}.")
        if self.inner_trials < 1:
            raise InvalidInput(f"At least one inner trial is needed, got {self.inner_trials}.")
        if self.t is not None and self.t < 1:
            raise InvalidInput(f"t must be positive, got {self.t}.")
        if self.p_override is not None:
            self.p_override, _ = clamp_probability(self.p_override, "p_override")

    @classmethod
    def from_configuration(cls, config: Configuration, **kwargs: Any) -> "ExtractorConfig":
        """
        Build the extractor configuration from the configuration file.

        Args:
            config (Configuration): the loaded configuration.
            **kwargs: values overriding the configuration (seed, trials, t, p_override...).

        Returns:
            ExtractorConfig: the extractor configuration.
        """
        values: Dict[str, Any] = {
            "trials": config.extractors.trials,
            "inner_trials": config.extractors.inner_trials,
            "c_t": config.extractors.c_t,
            "max_target_size": config.extractors.max_target_size,
            "verify": config.extractors.verify,
            "copy_budget": config.extractors.copy_budget,
            "jobs": config.experiments.jobs,
            "oracle": config.oracle,
        }
        values.update({key: value for key, value in kwargs.items() if value is not None})
        return cls(**values)

    def child(self, *stream: int) -> "ExtractorConfig":
        """
        Configuration of a nested extractor: derived seed, inner trial count,
        sequential trials and no override of t, p or the thresholds.

        Args:
            *stream (int): position of the nested call.

        Returns:
            ExtractorConfig: the nested configuration.
        """
        return replace(
            self,
            seed=child_seed(self.seed, *stream),
            trials=self.inner_trials,
            t=None,
            p_override=None,
            thresholds={},
            jobs=1,
        )

    def to_dict(self) -> Dict:
        """
        Values recorded in the reports.

        Returns:
            Dict: the parameters.
        """
        return {
            "seed": self.seed,
            "trials": self.trials,
            "t": self.t,
            "p_override": self.p_override,
            "thresholds": dict(self.thresholds),
            "verify": self.verify,
            "inner_trials": self.inner_trials,
            "c_t": self.c_t,
            "max_target_size": self.max_target_size,
            "copy_budget": self.copy_budget,
        }


@dataclass
class StageRecord:
    """
    One step of a pipeline.
    """

    name: str  #: Name of the stage.
    input_edges: int  #: Edges entering the stage.
    output_edges: int  #: Edges leaving the stage.
    parameters: Dict[str, Any] = field(default_factory=dict)  #: Thresholds, probabilities and guard flags.

    def to_dict(self) -> Dict:
        """
        Serializable representation.

        Returns:
            Dict: the record.
        """
        return {
            "name": self.name,
            "input_edges": self.input_edges,
            "output_edges": self.output_edges,
            "parameters": self.parameters,
        }


@dataclass
class ExtractionReport:
    """
    Result of an extraction.
    """

    retained: Hypergraph  #: The retained subgraph.
    input_profile: DegreeProfile  #: Degree profile of the input host.
    input_edges: int  #: e(H).
    guarantee: float  #: Expected size promised by the analysis, evaluated numerically.
    verified_free: bool  #: True if the detectors found no member of the family in the output.
    family: str = ""  #: Canonical name of the certified family.
    trial_log: List[int] = field(default_factory=list)  #: Size of each trial, in trial order.
    pipeline_trace: List[StageRecord] = field(default_factory=list)  #: Stages of the kept trial.
    flags: List[str] = field(default_factory=list)  #: Guard violations and special cases.
    parameters: Dict[str, Any] = field(default_factory=dict)  #: Every value used, defaults included.

    @property
    def achieved(self) -> int:
        """
        e(retained).
        """
        return self.retained.num_edges

    def flag(self, name: str) -> None:
        """
        Add a flag once.

        Args:
            name (str): the flag.
        """
        if name not in self.flags:
            self.flags.append(name)

    def to_dict(self) -> Dict:
        """
        Serializable representation. The retained edges are listed too.

        Returns:
            Dict: the report.
        """
        return {
            "family": self.family,
            "input_edges": self.input_edges,
            "input_profile": self.input_profile.to_dict(),
            "guarantee": self.guarantee,
            "achieved": self.achieved,
            "verified_free": self.verified_free,
            "trial_log": list(self.trial_log),
            "pipeline_trace": [stage.to_dict() for stage in self.pipeline_trace],
            "flags": list(self.flags),
            "parameters": self.parameters,
            "retained_edges": [list(edge) for edge in self.retained.edges],
        }


def certify(retained: Hypergraph, family: ForbiddenFamily, verify: bool) -> bool:
    """
    Check an output with the detectors.

    Args:
        retained (Hypergraph): the output.
        family (ForbiddenFamily): the family it must avoid.
        verify (bool): if False, nothing is checked.

    Raises:
        VerificationFailure: if the output contains a member of the family.

    Returns:
        bool: True if checked and free, False if not checked.
    """
    if not verify:
        return False
    witness = family.find(retained)
    if witness is not None:
        raise VerificationFailure(
            f"Output with {retained.num_edges} edges contains {witness.label or witness.kind.value}: {witness.to_dict()}"
        )
    return True


@dataclass
class TrialOutcome:
    """
    Output of one trial, as edge ids of the trial input.
    """

    retained_ids: List[int]  #: Ids of the kept edges.
    stages: List[StageRecord] = field(default_factory=list)  #: Stages of the trial.
    flags: List[str] = field(default_factory=list)  #: Flags raised by the trial.
    values: Dict[str, float] = field(default_factory=dict)  #: Per trial measurements.


def _call(trial: Callable[[int], TrialOutcome], index: int) -> TrialOutcome:
    return trial(index)


def run_trials(
    trial: Callable[[int], TrialOutcome], trials: int, jobs: int = 1
) -> Tuple[int, List[TrialOutcome]]:
    """
    Run independent trials and select the best one. Each trial derives its
    randomness from its own index, so the result does not depend on ``jobs``.

    Args:
        trial (Callable[[int], TrialOutcome]): the trial, a picklable callable of the trial index.
        trials (int): number of trials.
        jobs (int, optional): number of worker processes. Defaults to 1.

    Returns:
        Tuple[int, List[TrialOutcome]]: the index of the largest outcome (lowest index on ties) and all the outcomes in trial order.
    """
    if jobs > 1 and trials > 1:
        logger.debug("Running %i trials on %i processes.", trials, jobs)
        outcomes = Parallel(n_jobs=jobs)(delayed(_call)(trial, index) for index in range(trials))
    else:
        outcomes = [trial(index) for index in range(trials)]
    best = 0
    for index, outcome in enumerate(outcomes):
        if len(outcome.retained_ids) > len(outcomes[best].retained_ids):
            best = index
    return best, list(outcomes)


class BaseExtractor(abc.ABC):
    """
    Base abstract extractor: returns a subgraph of the host free of the family.
    """

    @abc.abstractmethod
    def extract(
        self, host: Hypergraph, family: ForbiddenFamily, config: ExtractorConfig
    ) -> Hypergraph:
        """
        Extract a family-free subgraph.

        Args:
            host (Hypergraph): the host.
            family (ForbiddenFamily): the family to avoid.
            config (ExtractorConfig): the configuration.

        Returns:
            Hypergraph: the subgraph.
        """


class IdentityExtractor(BaseExtractor):
    """
    Keeps the whole host. Only valid for the empty family.
    """

    def extract(
        self, host: Hypergraph, family: ForbiddenFamily, config: ExtractorConfig
    ) -> Hypergraph:
        if not family.is_empty:
            raise InvalidInput(f"The identity extractor cannot avoid {family}.")
        return host


def _greedy_trial(host: Hypergraph, family: ForbiddenFamily, seed: int, index: int) -> TrialOutcome:
    rng = make_rng(seed, index)
    kept: List[int] = []
    for edge_id in rng.permutation(host.num_edges).tolist():
        candidate = host.subgraph(kept + [edge_id])
        if family.find(candidate, through=host.edges[edge_id]) is None:
            kept.append(edge_id)
    return TrialOutcome(sorted(kept))


class GreedyExtractor(BaseExtractor):
    """
    Inserts the edges in a random order, skipping those that would create a
    member of the family. The best of ``inner_trials`` orders is kept.
    """

    def extract(
        self, host: Hypergraph, family: ForbiddenFamily, config: ExtractorConfig
    ) -> Hypergraph:
        if family.is_empty:
            return host
        trial = functools.partial(_greedy_trial, host, family, config.seed)
        best, outcomes = run_trials(trial, config.trials, config.jobs)
        return host.subgraph(outcomes[best].retained_ids)


def inner_extractor_for(family: ForbiddenFamily) -> BaseExtractor:
    """
    Default inner extractor for a projected family: identity when it is empty,
    greedy insertion otherwise.

    Args:
        family (ForbiddenFamily): the projected family.

    Returns:
        BaseExtractor: the extractor.
    """
    if family.is_empty:
        return IdentityExtractor()
    return GreedyExtractor()


def build_report(
    host: Hypergraph,
    family: ForbiddenFamily,
    config: ExtractorConfig,
    retained: Hypergraph,
    guarantee: float,
    outcomes: Sequence[TrialOutcome] = (),
    best: int = 0,
    profile: Optional[DegreeProfile] = None,
) -> ExtractionReport:
    """
    Assemble and certify the report of an extraction.

    Args:
        host (Hypergraph): the input host.
        family (ForbiddenFamily): the certified family.
        config (ExtractorConfig): the configuration.
        retained (Hypergraph): the output.
        guarantee (float): the evaluated guarantee.
        outcomes (Sequence[TrialOutcome], optional): the trials. Defaults to ().
        best (int, optional): index of the kept trial. Defaults to 0.
        profile (Optional[DegreeProfile], optional): profile of the host if already computed. Defaults to None.

    Raises:
        VerificationFailure: if the output is not free of the family.

    Returns:
        ExtractionReport: the report.
    """
    report = ExtractionReport(
        retained=retained,
        input_profile=profile if profile is not None else degree_profile(host),
        input_edges=host.num_edges,
        guarantee=float(guarantee),
        verified_free=certify(retained, family, config.verify),
        family=str(family),
        trial_log=[len(outcome.retained_ids) for outcome in outcomes],
        parameters=config.to_dict(),
    )
    if outcomes:
        report.pipeline_trace = list(outcomes[best].stages)
        for name in outcomes[best].flags:
            report.flag(name)
    return report

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
Resumable experiment runner.

Finished records are appended to ``<output>.partial`` as they arrive. Once the
sweep is complete, the records are written in plan order to the output file,
which replaces any previous one atomically, together with a CSV projection,
and the partial file is removed. A run that finds a partial file skips the
records it already holds.
"""
import os
import csv
import json
import logging
from pathlib import Path
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from joblib import Parallel, delayed

from relturan.configuration import Configuration
from relturan.exceptions import InvalidInput, ResourceExceeded, VerificationFailure
from relturan.families.family import ForbiddenFamily
from relturan.generators import HostSpec, generate
from relturan.oracle import OracleQuery, ResultCache, ex_relative
from relturan.extractors.base import ExtractorConfig
from relturan.extractors.pipelines import run_pipeline
from relturan.experiments.plan import ExperimentPlan

logger = logging.getLogger(__name__)

#: Columns of the CSV projection.
CSV_COLUMNS = ("host", "seed", "delta", "host_edges", "achieved", "ratio")


def partial_path(output: Path) -> Path:
    """
    Location of the partial-file marker of an output.

    Args:
        output (Path): the output file.

    Returns:
        Path: ``<output>.partial``.
    """
    return output.with_name(output.name + ".partial")


def csv_path(output: Path) -> Path:
    """
    Location of the CSV projection of an output.

    Args:
        output (Path): the output file.

    Returns:
        Path: ``<output stem>.csv`` next to the output.
    """
    return output.with_suffix(".csv")


def dumps(record: Dict[str, Any]) -> str:
    """
    Canonical JSON line of a record.

    Args:
        record (Dict[str, Any]): the record.

    Returns:
        str: the JSON text, keys sorted.
    """
    return json.dumps(record, sort_keys=True)


def read_records(path: Path) -> List[Dict[str, Any]]:
    """
    Read a JSON lines file.

    Args:
        path (Path): the file.

    Raises:
        InvalidInput: if a line is not valid JSON.

    Returns:
        List[Dict[str, Any]]: the records, in file order.
    """
    records = []
    with open(path, "r", encoding="utf-8") as file:
        for number, line in enumerate(file, start=1):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise InvalidInput(f"Line {number} of {path} is not valid JSON.") from exc
    return records


# pylint: disable=too-many-arguments
def run_point(
    key: str,
    host_spec: HostSpec,
    seed: int,
    plan: ExperimentPlan,
    config: Configuration,
) -> Dict[str, Any]:
    """
    Run one sweep point.

    Args:
        key (str): the record key.
        host_spec (HostSpec): the host.
        seed (int): the seed.
        plan (ExperimentPlan): the plan.
        config (Configuration): the configuration.

    Returns:
        Dict[str, Any]: the record. Failures are recorded with ``verified_free`` false and an ``error``.
    """
    host = generate(host_spec, config.generators.max_vertices)
    extractor_config = ExtractorConfig.from_configuration(
        config, seed=seed, trials=plan.trials, jobs=1
    )
    record: Dict[str, Any] = {
        "key": key,
        "host": host_spec.to_string(),
        "seed": seed,
        "pipeline": plan.pipeline,
        "ell": plan.ell,
        "host_edges": host.num_edges,
    }
    try:
        report = run_pipeline(plan.pipeline, host, extractor_config, plan.ell, plan.variant)
    except (VerificationFailure, ResourceExceeded) as exc:
        logger.error("Point %s failed: %s", key, exc)
        record.update({"verified_free": False, "error": str(exc), "achieved": None, "ratio": None})
        return record
    delta = report.input_profile.max_degree
    record.update(
        {
            "delta": delta,
            "achieved": report.achieved,
            "ratio": report.achieved / host.num_edges if host.num_edges else None,
            "verified_free": report.verified_free,
            "report": report.to_dict(),
            "oracle": None,
        }
    )
    if plan.oracle_compare:
        if host.num_edges <= config.oracle.exact_edge_ceiling:
            family = ForbiddenFamily.parse(report.family, host.uniformity)
            cache_dir = config.cache_dir()
            cache = ResultCache(cache_dir) if cache_dir is not None else None
            query = OracleQuery(host, family, config.oracle.budget, seed)
            result = ex_relative(query, config.oracle, cache)
            record["oracle"] = {
                "optimum": result.optimum,
                "proved_exact": result.proved_exact,
                "nodes_explored": result.nodes_explored,
            }
            if report.achieved > result.optimum and result.proved_exact:
                logger.error("Point %s beats the proved optimum %i.", key, result.optimum)
        else:
            logger.info("Oracle comparison disabled for %s (%i edges).", key, host.num_edges)
    return record


def _write_csv(path: Path, records: List[Dict[str, Any]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow([record.get(column) for column in CSV_COLUMNS])


def _atomic_write(path: Path, records: List[Dict[str, Any]]) -> None:
    temporary = path.with_name(path.name + ".tmp")
    with open(temporary, "w", encoding="utf-8") as file:
        for record in records:
            file.write(dumps(record) + "\n")
    os.replace(temporary, path)


@dataclass
class RunSummary:
    """
    Outcome of a plan run.
    """

    output: Path  #: The result file.
    records: int  #: Number of records in the result file.
    computed: int  #: Number of records computed by this run.
    failures: int  #: Number of records that are not verified free.

    @property
    def ok(self) -> bool:
        """
        Whether every record is verified free.
        """
        return self.failures == 0


def run_plan(plan: ExperimentPlan, config: Optional[Configuration] = None) -> RunSummary:
    """
    Run every point of a plan, resuming from the partial file if any.

    Args:
        plan (ExperimentPlan): the plan.
        config (Optional[Configuration], optional): the configuration. Defaults to the defaults.

    Raises:
        InvalidInput: if the output exists, the plan is not in append mode and there is nothing to resume.

    Returns:
        RunSummary: the summary.
    """
    if config is None:
        config = Configuration(None)
    output = plan.output
    marker = partial_path(output)
    if output.exists() and not plan.append and not marker.exists():
        raise InvalidInput(f"{output} exists, use another output or append mode.")
    output.parent.mkdir(parents=True, exist_ok=True)

    previous: List[Dict[str, Any]] = []
    if plan.append and output.exists():
        previous = read_records(output)
    done: Dict[str, Dict[str, Any]] = {record["key"]: record for record in previous}
    if marker.exists():
        for record in read_records(marker):
            done.setdefault(record["key"], record)
        logger.info("Resuming %s with %i finished records.", output, len(done))

    pending = [point for point in plan.points() if point[0] not in done]
    logger.info("%i points to run, %i already done.", len(pending), len(plan.hosts) * len(plan.seeds) - len(pending))
    with open(marker, "a", encoding="utf-8") as partial_file:
        results = Parallel(n_jobs=config.experiments.jobs, return_as="generator")(
            delayed(run_point)(key, host, seed, plan, config) for key, host, seed in pending
        )
        for record in results:
            done[record["key"]] = record
            partial_file.write(dumps(record) + "\n")
            partial_file.flush()
            logger.info("Finished %s: %s edges kept.", record["key"], record.get("achieved"))

    previous_keys = {record["key"] for record in previous}
    ordered = list(previous) + [
        done[key] for key, _, _ in plan.points() if key not in previous_keys
    ]
    _atomic_write(output, ordered)
    _write_csv(csv_path(output), ordered)
    marker.unlink()
    failures = sum(1 for record in ordered if not record.get("verified_free"))
    if failures:
        logger.error("%i records are not verified free.", failures)
    return RunSummary(output, len(ordered), len(pending), failures)

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
Entrypoint of the relturan command.

Exit codes: 0 on success, 2 on a verification failure (including failed
records of an experiment), 3 when a budget is exhausted and 4 on invalid
input or configuration.
"""
import os
import sys
import json
import logging
import argparse
from pathlib import Path
from typing import Any, Dict, Optional

from relturan import __version__
from relturan.logging import create_loggers
from relturan.configuration import Configuration, create_default_configuration
from relturan.exceptions import (
    InvalidConfiguration,
    InvalidInput,
    ResourceExceeded,
    VerificationFailure,
)
from relturan.hypergraph import Hypergraph
from relturan.families.family import ForbiddenFamily
from relturan.generators import generate, parse_host_spec
from relturan.oracle import CompleteHost, OracleQuery, ResultCache, ex_relative
from relturan.extractors.base import ExtractorConfig
from relturan.extractors.pipelines import PIPELINES, run_pipeline
from relturan.experiments.plan import ExperimentPlan
from relturan.experiments.runner import run_plan
from relturan.experiments.fit import fit_results

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 2
EXIT_RESOURCE = 3
EXIT_INPUT = 4


def _print_json(content: Dict[str, Any]) -> None:
    print(json.dumps(content, sort_keys=True, indent=2))


def _cache(config: Configuration) -> Optional[ResultCache]:
    cache_dir = config.cache_dir()
    if cache_dir is None:
        return None
    return ResultCache(cache_dir)


def gen(args: argparse.Namespace, config: Configuration) -> int:
    """
    Generate a host and save it.

    Args:
        args (argparse.Namespace): the arguments.
        config (Configuration): the configuration.

    Returns:
        int: exit code.
    """
    spec = parse_host_spec(args.spec)
    host = generate(spec, config.generators.max_vertices)
    host.save(args.out)
    logger.info("Host %s with %i edges saved to %s.", spec, host.num_edges, args.out)
    print(f"{spec}: {host.vertex_count} vertices, {host.num_edges} edges -> {args.out}")
    return EXIT_OK


def detect(args: argparse.Namespace, _config: Configuration) -> int:
    """
    Look for a member of a family in a host.

    Args:
        args (argparse.Namespace): the arguments.
        _config (Configuration): the configuration.

    Returns:
        int: exit code. Finding a member is not an error.
    """
    host = Hypergraph.load(args.input)
    family = ForbiddenFamily.parse(args.family, host.uniformity)
    through = None
    if args.through:
        through = [int(vertex) for vertex in args.through.split(",")]
    witness = family.find(host, through)
    _print_json(
        {
            "family": family.canonical(),
            "contains": witness is not None,
            "witness": witness.to_dict() if witness is not None else None,
        }
    )
    return EXIT_OK


def oracle(args: argparse.Namespace, config: Configuration) -> int:
    """
    Compute the relative Turán number of a host.

    Args:
        args (argparse.Namespace): the arguments.
        config (Configuration): the configuration.

    Returns:
        int: exit code.
    """
    host: Any
    if args.host.startswith("complete:"):
        spec = parse_host_spec(args.host)
        host = CompleteHost(spec.vertex_count, spec.uniformity)
    else:
        host = Hypergraph.load(args.host)
    family = ForbiddenFamily.parse(args.family, host.uniformity)
    budget = args.budget if args.budget is not None else config.oracle.budget
    result = ex_relative(OracleQuery(host, family, budget, args.seed), config.oracle, _cache(config))
    _print_json(result.to_dict())
    return EXIT_OK


def extract(args: argparse.Namespace, config: Configuration) -> int:
    """
    Run a pipeline on a host.

    Args:
        args (argparse.Namespace): the arguments.
        config (Configuration): the configuration.

    Returns:
        int: exit code, 2 if the output is not verified free.
    """
    host = Hypergraph.load(args.host)
    thresholds = {"D": args.threshold} if args.threshold is not None else {}
    extractor_config = ExtractorConfig.from_configuration(
        config,
        seed=args.seed,
        trials=args.trials,
        t=args.t,
        p_override=args.p,
        thresholds=thresholds,
        jobs=args.jobs,
    )
    report = run_pipeline(args.pipeline, host, extractor_config, args.ell, args.variant)
    if args.out is not None:
        report.retained.save(args.out)
        logger.info("Retained subgraph saved to %s.", args.out)
    _print_json(report.to_dict())
    if extractor_config.verify and not report.verified_free:
        return EXIT_VERIFICATION
    return EXIT_OK


def experiment_run(args: argparse.Namespace, config: Configuration) -> int:
    """
    Run an experiment plan.

    Args:
        args (argparse.Namespace): the arguments.
        config (Configuration): the configuration.

    Returns:
        int: exit code, 2 if a record is not verified free.
    """
    plan = ExperimentPlan.load(args.plan)
    if args.out is not None:
        plan.output = Path(args.out)
    if args.trials is not None:
        plan.trials = args.trials
    if args.jobs is not None:
        config.experiments.jobs = args.jobs
    summary = run_plan(plan, config)
    print(
        f"{summary.records} records in {summary.output} "
        f"({summary.computed} computed, {summary.failures} failures)."
    )
    return EXIT_OK if summary.ok else EXIT_VERIFICATION


def experiment_fit(args: argparse.Namespace, _config: Configuration) -> int:
    """
    Fit the exponent of a result file.

    Args:
        args (argparse.Namespace): the arguments.
        _config (Configuration): the configuration.

    Returns:
        int: exit code.
    """
    fit = fit_results(args.results, args.reference)
    _print_json(fit.to_dict())
    return EXIT_OK


def config_create(args: argparse.Namespace, _config: Configuration) -> int:
    """
    Write the default configuration file.

    Args:
        args (argparse.Namespace): the arguments.
        _config (Configuration): the configuration.

    Returns:
        int: exit code.
    """
    path = Path(args.file)
    if path.exists() and not args.force:
        raise InvalidInput(f"{path} already exists, use --force to overwrite it.")
    create_default_configuration(path)
    print(f"Default configuration written to {path}.")
    return EXIT_OK


def config_show(_args: argparse.Namespace, config: Configuration) -> int:
    """
    Print the effective configuration.

    Args:
        _args (argparse.Namespace): the arguments.
        config (Configuration): the configuration.

    Returns:
        int: exit code.
    """
    print(config)
    return EXIT_OK


# pylint: disable=too-many-statements
def _create_parser() -> argparse.ArgumentParser:
    """
    Create the parser of the relturan command.

    Subcommands:
        * gen
        * detect
        * oracle
        * extract
        * experiment run
        * experiment fit
        * config create
        * config show

    Returns:
        argparse.ArgumentParser: the main parser.
    """
    default_config_location = Path(os.getcwd()) / "config.toml"

    parser = argparse.ArgumentParser(prog="relturan")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "-f",
        "--file",
        default=default_config_location,
        help=f"Path of the configuration file. Default : {default_config_location}.",
    )
    parser.add_argument(
        "--cache-dir",
        default=None,
        help="Directory of the oracle result cache. Overrides the configuration file and the RELTURAN_CACHE_DIR variable.",
    )
    parser.add_argument("--log-file", default=None, help="Also write debug logs to this file.")
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Level of verbosity. If none, nothing is printed to the console. -v will print warnings and errors, -vv will add info and -vvv will print all debug logs.",
    )

    subparsers = parser.add_subparsers()

    gen_parser = subparsers.add_parser("gen", help="Generate a host and save it as .hg.")
    gen_parser.add_argument(
        "--spec",
        required=True,
        help="Host spec, e.g. complete:7,3, sunflower:7,2,3, random:20,3,0.05,seed=42, partite:2,2,2, linear-random:30,3,0.01,seed=1, fano.",
    )
    gen_parser.add_argument("--out", required=True, help="Output .hg file.")
    gen_parser.set_defaults(func=gen)

    detect_parser = subparsers.add_parser("detect", help="Look for a member of a family in a host.")
    detect_parser.add_argument("--family", required=True, help="Family spec, e.g. berge:4 or berge:2|berge:5.")
    detect_parser.add_argument("--input", required=True, help="Host .hg file.")
    detect_parser.add_argument(
        "--through", default=None, help="Comma separated vertices of an edge the member must use."
    )
    detect_parser.set_defaults(func=detect)

    oracle_parser = subparsers.add_parser("oracle", help="Largest family-free subgraph of a host.")
    oracle_parser.add_argument("--host", required=True, help="Host .hg file or complete:t,r.")
    oracle_parser.add_argument("--family", required=True, help="Family spec.")
    oracle_parser.add_argument("--budget", type=int, default=None, help="Node budget. Default: from configuration.")
    oracle_parser.add_argument("--seed", type=int, default=0, help="Seed of the inexact search.")
    oracle_parser.set_defaults(func=oracle)

    extract_parser = subparsers.add_parser("extract", help="Run an extraction pipeline on a host.")
    extract_parser.add_argument("--pipeline", required=True, choices=PIPELINES, help="Pipeline name.")
    extract_parser.add_argument("--ell", type=int, default=None, help="Cycle length for berge and loose.")
    extract_parser.add_argument("--host", required=True, help="Host .hg file.")
    extract_parser.add_argument("--seed", type=int, default=0, help="Seed of the run.")
    extract_parser.add_argument("--trials", type=int, default=None, help="Number of trials. Default: from configuration.")
    extract_parser.add_argument("--t", type=int, default=None, help="Target size of the homomorphism step.")
    extract_parser.add_argument("--p", type=float, default=None, help="Sampling probability override.")
    extract_parser.add_argument("--D", dest="threshold", type=float, default=None, help="Codegree threshold D.")
    extract_parser.add_argument(
        "--variant", default="caption", choices=("caption", "counting"), help="F5 edge list. Default: caption."
    )
    extract_parser.add_argument("--jobs", type=int, default=None, help="Number of worker processes.")
    extract_parser.add_argument("--out", default=None, help="Write the retained subgraph to this .hg file.")
    extract_parser.set_defaults(func=extract)

    experiment_parser = subparsers.add_parser("experiment", help="Run and fit experiment sweeps.")
    experiment_subparsers = experiment_parser.add_subparsers()
    run_parser = experiment_subparsers.add_parser("run", help="Run a JSON plan.")
    run_parser.add_argument("plan", help="Plan file.")
    run_parser.add_argument("--out", default=None, help="Override the output of the plan.")
    run_parser.add_argument("--trials", type=int, default=None, help="Override the trials of the plan.")
    run_parser.add_argument("--jobs", type=int, default=None, help="Number of worker processes.")
    run_parser.set_defaults(func=experiment_run)
    fit_parser = experiment_subparsers.add_parser("fit", help="Fit the exponent of a result file.")
    fit_parser.add_argument("results", help="JSON lines result file.")
    fit_parser.add_argument(
        "--reference", type=float, default=None, help="Reference exponent. Default: the one of the pipeline."
    )
    fit_parser.set_defaults(func=experiment_fit)

    config_parser = subparsers.add_parser("config", help="Create or show the configuration.")
    config_subparsers = config_parser.add_subparsers()
    create_parser = config_subparsers.add_parser("create", help="Write the default configuration to -f.")
    create_parser.add_argument("--force", action="store_true", help="Overwrite an existing file.")
    create_parser.set_defaults(func=config_create)
    show_parser = config_subparsers.add_parser("show", help="Print the effective configuration.")
    show_parser.set_defaults(func=config_show)
    return parser


def run(argv: Optional[list] = None) -> int:
    """
    Parse the arguments, run the command and map the exceptions to exit codes.

    Args:
        argv (Optional[list], optional): arguments. Defaults to sys.argv[1:].

    Returns:
        int: the exit code.
    """
    parser = _create_parser()
    args = parser.parse_args(argv)

    create_loggers(args.verbose, args.log_file)

    if not hasattr(args, "func"):
        print("No command specified. Run with -h|--help to see the possible commands.")
        return EXIT_OK

    try:
        config = Configuration(args.file)
        if args.cache_dir is not None:
            config.oracle.cache_dir = str(args.cache_dir)
        elif config.cache_dir() is not None:
            config.oracle.cache_dir = str(config.cache_dir())
        return args.func(args, config)
    except VerificationFailure as exc:
        logger.error("Verification failure: %s", exc)
        print(f"Verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except ResourceExceeded as exc:
        logger.error("Resource exceeded: %s", exc)
        print(f"Resource exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InvalidInput, InvalidConfiguration) as exc:
        logger.error("Invalid input: %s", exc)
        print(f"Invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    """
    Main entrypoint of the command.
    """
    sys.exit(run())


if __name__ == "__main__":
    main()

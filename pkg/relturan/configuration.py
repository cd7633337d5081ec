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
Configuration of relturan.

The configuration is read from a TOML file (``config.toml`` by default).
Every key is optional and a missing file simply means the defaults below.
"""
import os
import logging
from pathlib import Path
from dataclasses import dataclass, field, fields, asdict
from typing import Any, Dict, Optional, Union

import toml

from relturan.exceptions import InvalidConfiguration

logger = logging.getLogger(__name__)

CACHE_DIR_ENVIRONMENT_VARIABLE = "RELTURAN_CACHE_DIR"

DEFAULT_EXACT_EDGE_CEILING: int = 30
DEFAULT_ORACLE_BUDGET: int = 2_000_000
DEFAULT_INEXACT_RESTARTS: int = 32
DEFAULT_SWAP_LIMIT: int = 2_000
DEFAULT_CLASSICAL_VERTEX_CEILING: int = 9

DEFAULT_TRIALS: int = 1000
DEFAULT_INNER_TRIALS: int = 8
DEFAULT_C_T: float = 1.0
DEFAULT_MAX_TARGET_SIZE: int = 8
DEFAULT_VERIFY: bool = True
DEFAULT_COPY_BUDGET: int = 200_000

DEFAULT_MAX_VERTICES: int = 400

DEFAULT_JOBS: int = 1


class _Section:
    """
    Common behaviour of the configuration sections.
    """

    def __str__(self) -> str:
        res = ""
        for class_field in fields(self.__class__):  # type: ignore[arg-type]
            res += f"{class_field.name}: {getattr(self, class_field.name)}\n"
        return res

    @classmethod
    def from_dict(cls, section_name: str, values: Dict[str, Any]):
        """
        Build the section from the content of a TOML table.

        Args:
            section_name (str): name of the table, for error messages.
            values (Dict[str, Any]): content of the table.

        Raises:
            InvalidConfiguration: if a key is unknown or has the wrong type.

        Returns:
            the section.
        """
        known = {class_field.name: class_field for class_field in fields(cls)}  # type: ignore[arg-type]
        kwargs = {}
        for key, value in values.items():
            if key not in known:
                raise InvalidConfiguration(
                    f"Unknown key {key} in section [{section_name}]."
                )
            default = getattr(cls, key, None)
            expected = None
            if isinstance(default, bool):
                if not isinstance(value, bool):
                    expected = "a boolean"
            elif isinstance(value, bool):
                if isinstance(default, (int, float)):
                    expected = "a number"
            elif isinstance(default, int) and not isinstance(value, int):
                expected = "an integer"
            elif isinstance(default, float) and not isinstance(value, (int, float)):
                expected = "a number"
            if expected is not None:
                raise InvalidConfiguration(
                    f"Key {key} in section [{section_name}] should be {expected}."
                )
            kwargs[key] = value
        return cls(**kwargs)


@dataclass
class OracleConfiguration(_Section):
    """
    Configuration of the exact oracle.
    """

    exact_edge_ceiling: int = field(default=DEFAULT_EXACT_EDGE_CEILING)
    budget: int = field(default=DEFAULT_ORACLE_BUDGET)
    inexact_restarts: int = field(default=DEFAULT_INEXACT_RESTARTS)
    swap_limit: int = field(default=DEFAULT_SWAP_LIMIT)
    classical_vertex_ceiling: int = field(default=DEFAULT_CLASSICAL_VERTEX_CEILING)
    cache_dir: Optional[str] = field(default=None)


@dataclass
class ExtractorsConfiguration(_Section):
    """
    Default values of the extractors.
    """

    trials: int = field(default=DEFAULT_TRIALS)
    inner_trials: int = field(default=DEFAULT_INNER_TRIALS)
    c_t: float = field(default=DEFAULT_C_T)
    max_target_size: int = field(default=DEFAULT_MAX_TARGET_SIZE)
    verify: bool = field(default=DEFAULT_VERIFY)
    copy_budget: int = field(default=DEFAULT_COPY_BUDGET)


@dataclass
class GeneratorsConfiguration(_Section):
    """
    Limits of the host generators.
    """

    max_vertices: int = field(default=DEFAULT_MAX_VERTICES)


@dataclass
class ExperimentsConfiguration(_Section):
    """
    Configuration of the experiment runner.
    """

    jobs: int = field(default=DEFAULT_JOBS)


SECTIONS = {
    "oracle": OracleConfiguration,
    "extractors": ExtractorsConfiguration,
    "generators": GeneratorsConfiguration,
    "experiments": ExperimentsConfiguration,
}


class Configuration:
    """
    Full configuration, one attribute per TOML table.
    """

    oracle: OracleConfiguration  #: Exact oracle settings.
    extractors: ExtractorsConfiguration  #: Extractor defaults.
    generators: GeneratorsConfiguration  #: Host generator limits.
    experiments: ExperimentsConfiguration  #: Experiment runner settings.

    def __init__(self, config_path: Optional[Union[str, Path]] = None) -> None:
        """
        Args:
            config_path (Optional[Union[str, Path]], optional): path of the TOML file. If None or if the file does not exist, the defaults are used. Defaults to None.

        Raises:
            InvalidConfiguration: if the file cannot be parsed or contains unknown keys.
        """
        content: Dict[str, Any] = {}
        if config_path is not None and Path(config_path).is_file():
            logger.info("Loading configuration from %s", config_path)
            try:
                content = toml.load(config_path)
            except (toml.TomlDecodeError, OSError) as exc:
                raise InvalidConfiguration(
                    f"Cannot read configuration file {config_path}: {exc}"
                ) from exc
        elif config_path is not None:
            logger.debug(
                "No configuration file at %s, using the defaults.", config_path
            )
        self._load(content)

    def _load(self, content: Dict[str, Any]) -> None:
        for section_name in content:
            if section_name not in SECTIONS:
                raise InvalidConfiguration(f"Unknown section [{section_name}].")
            if not isinstance(content[section_name], dict):
                raise InvalidConfiguration(
                    f"[{section_name}] should be a table."
                )
        self.oracle = OracleConfiguration.from_dict(
            "oracle", content.get("oracle", {})
        )
        self.extractors = ExtractorsConfiguration.from_dict(
            "extractors", content.get("extractors", {})
        )
        self.generators = GeneratorsConfiguration.from_dict(
            "generators", content.get("generators", {})
        )
        self.experiments = ExperimentsConfiguration.from_dict(
            "experiments", content.get("experiments", {})
        )

    @classmethod
    def from_dict(cls, content: Dict[str, Any]) -> "Configuration":
        """
        Build a configuration from an already parsed dict.

        Args:
            content (Dict[str, Any]): dict with the same layout as the TOML file.

        Returns:
            Configuration: the configuration.
        """
        config = cls(None)
        config._load(content)
        return config

    def to_dict(self) -> Dict[str, Dict[str, Any]]:
        """
        Dict with the same layout as the TOML file. Unset optional values are left out.

        Returns:
            Dict[str, Dict[str, Any]]: the configuration as nested dicts.
        """
        res: Dict[str, Dict[str, Any]] = {}
        for section_name in SECTIONS:
            values = asdict(getattr(self, section_name))
            res[section_name] = {
                key: value for key, value in values.items() if value is not None
            }
        return res

    def cache_dir(self) -> Optional[Path]:
        """
        Directory of the persistent oracle cache.

        The configuration file wins over the environment variable. If none is
        set, there is no persistent cache.

        Returns:
            Optional[Path]: the cache directory or None.
        """
        if self.oracle.cache_dir:
            return Path(self.oracle.cache_dir)
        from_env = os.environ.get(CACHE_DIR_ENVIRONMENT_VARIABLE)
        if from_env:
            return Path(from_env)
        return None

    def __str__(self) -> str:
        res = ""
        for section_name in SECTIONS:
            res += f"[{section_name}]\n{getattr(self, section_name)}"
        return res


def create_default_configuration(path: Union[str, Path]) -> None:
    """
    Write the default configuration to a TOML file.

    Args:
        path (Union[str, Path]): location of the file.
    """
    with open(path, "w", encoding="utf-8") as file:
        toml.dump(Configuration(None).to_dict(), file)
    logger.info("Default configuration written to %s", path)

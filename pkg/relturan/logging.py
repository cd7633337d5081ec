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
Logging helpers shared by the command line entrypoints.
"""
import logging
from typing import Optional, Union
from pathlib import Path

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def verbose_to_log_level(verbose: int) -> int:
    """
    Convert the number of -v flags to a logging level.

    If none, nothing is printed to the console. -v will print warnings and errors,
    -vv will add info and -vvv will print all debug logs.

    Args:
        verbose (int): number of -v flags.

    Returns:
        int: logging level for the console handler.
    """
    if verbose <= 0:
        return logging.CRITICAL + 1
    if verbose == 1:
        return logging.WARNING
    if verbose == 2:
        return logging.INFO
    return logging.DEBUG


def create_loggers(
    verbose: int, log_file: Optional[Union[str, Path]] = None
) -> logging.Logger:
    """
    Configure the root logger with a console handler and an optional file handler.

    The file handler, when present, always records debug messages.

    Args:
        verbose (int): number of -v flags given on the command line.
        log_file (Optional[Union[str, Path]], optional): file to write the logs to. Defaults to None.

    Returns:
        logging.Logger: the configured root logger.
    """
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    for handler in list(root.handlers):
        root.removeHandler(handler)

    formatter = logging.Formatter(LOG_FORMAT)

    console = logging.StreamHandler()
    console.setLevel(verbose_to_log_level(verbose))
    console.setFormatter(formatter)
    root.addHandler(console)

    if log_file is not None:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    return root

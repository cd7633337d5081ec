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
Exceptions raised by relturan.

The command line maps them to exit codes, see :mod:`relturan.commands`.
"""
from typing import Any, Optional


class RelturanError(Exception):
    """
    Base exception of the package.
    """


class InvalidInput(RelturanError):
    """
    Raised when an operation receives an argument outside of its domain
    (wrong uniformity, unknown vertex, malformed file or spec string...).
    """


class ExtractionPreconditionError(InvalidInput):
    """
    Raised by the dyadic selection when less than half of the edges are heavy.
    The caller should take the light branch instead.
    """


class InvalidConfiguration(RelturanError):
    """
    Raised when the configuration file cannot be used.
    """


class ResourceExceeded(RelturanError):
    """
    Raised when a search or an enumeration goes over its budget.

    The partial result computed so far, if any, is attached.
    """

    partial: Optional[Any]  #: Partial result at the time the budget ran out.

    def __init__(self, message: str, partial: Optional[Any] = None) -> None:
        """
        Args:
            message (str): description of the exhausted resource.
            partial (Optional[Any], optional): partial result. Defaults to None.
        """
        super().__init__(message)
        self.partial = partial


class VerificationFailure(RelturanError):
    """
    Raised when an output that should be family-free is not.
    """

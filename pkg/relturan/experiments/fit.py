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
Log-log fit of achieved size against maximum degree.

The achieved ratio e(G)/e(H) of a sweep is expected to decay like a power of
Delta. The slope of log(ratio) against log(Delta) estimates the exponent, and
is reported next to the exponent predicted for the pipeline.
"""
import math
import logging
from pathlib import Path
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import stats

from relturan.exceptions import InvalidInput
from relturan.generators import HostKind, parse_host_spec
from relturan.extractors.pipelines import reference_exponent
from relturan.experiments.runner import read_records

logger = logging.getLogger(__name__)

#: Minimum number of usable points for a fit.
MIN_FIT_POINTS = 3


@dataclass
class ExponentFit:
    """
    Least squares fit of log(ratio) = slope * log(Delta) + intercept.
    """

    points: int  #: Number of points used.
    slope: float  #: Fitted exponent.
    stderr: float  #: Standard error of the slope.
    intercept: float  #: Fitted intercept, natural log.
    reference: Optional[float] = None  #: Predicted exponent, if known.
    dropped: int = 0  #: Points left out because delta or ratio was not positive.
    deviation: Optional[float] = field(init=False, default=None)  #: slope - reference.

    def __post_init__(self) -> None:
        if self.reference is not None:
            self.deviation = self.slope - self.reference

    def to_dict(self) -> Dict[str, Any]:
        """
        Serializable representation.

        Returns:
            Dict[str, Any]: the fit.
        """
        return {
            "points": self.points,
            "slope": self.slope,
            "stderr": self.stderr,
            "intercept": self.intercept,
            "reference": self.reference,
            "deviation": self.deviation,
            "dropped": self.dropped,
        }

    def __str__(self) -> str:
        res = f"slope = {self.slope:.4f} +/- {self.stderr:.4f} over {self.points} points"
        if self.reference is not None:
            res += f" (reference {self.reference:.4f}, deviation {self.deviation:+.4f})"
        return res


def fit_exponent(
    points: Sequence[Tuple[float, float]], reference: Optional[float] = None
) -> ExponentFit:
    """
    Fit the exponent of ratio against Delta.

    Args:
        points (Sequence[Tuple[float, float]]): (delta, ratio) pairs.
        reference (Optional[float], optional): predicted exponent. Defaults to None.

    Raises:
        InvalidInput: if fewer than MIN_FIT_POINTS points are usable, all deltas are equal or the fit is not finite.

    Returns:
        ExponentFit: the fit.
    """
    usable = [
        (float(delta), float(ratio)) for delta, ratio in points if delta > 0 and ratio > 0
    ]
    dropped = len(points) - len(usable)
    if dropped:
        logger.warning("Dropping %i points with a non-positive delta or ratio.", dropped)
    if len(usable) < MIN_FIT_POINTS:
        raise InvalidInput(
            f"A fit needs at least {MIN_FIT_POINTS} usable points, got {len(usable)}."
        )
    log_delta = np.log(np.array([delta for delta, _ in usable]))
    if np.ptp(log_delta) == 0:
        raise InvalidInput("All points have the same delta, the slope is undefined.")
    log_ratio = np.log(np.array([ratio for _, ratio in usable]))
    regression = stats.linregress(log_delta, log_ratio)
    slope = float(regression.slope)
    if not math.isfinite(slope):
        raise InvalidInput("The fitted slope is not finite.")
    return ExponentFit(
        points=len(usable),
        slope=slope,
        stderr=float(regression.stderr),
        intercept=float(regression.intercept),
        reference=reference,
        dropped=dropped,
    )


def record_points(records: List[Dict[str, Any]]) -> List[Tuple[float, float]]:
    """
    (delta, ratio) pairs of the verified records.

    Args:
        records (List[Dict[str, Any]]): the records.

    Returns:
        List[Tuple[float, float]]: the pairs. Failed records give (0, 0) and are dropped by the fit.
    """
    res = []
    for record in records:
        if not record.get("verified_free"):
            res.append((0.0, 0.0))
            continue
        res.append((float(record.get("delta") or 0), float(record.get("ratio") or 0)))
    return res


def fit_results(path: Union[str, Path], reference: Optional[float] = None) -> ExponentFit:
    """
    Fit a result file of the experiment runner.

    If no reference is given, the one of the pipeline of the first record is
    used. Loose records on random hosts use the linear variant when their
    host spec says so.

    Args:
        path (Union[str, Path]): the JSON lines result file.
        reference (Optional[float], optional): predicted exponent. Defaults to None.

    Raises:
        InvalidInput: if the file is empty or the fit fails.

    Returns:
        ExponentFit: the fit.
    """
    records = read_records(Path(path))
    if not records:
        raise InvalidInput(f"{path} holds no records.")
    if reference is None:
        first = records[0]
        host = parse_host_spec(first["host"])
        reference = reference_exponent(
            first["pipeline"], first.get("ell"), host.r, host.kind == HostKind.LINEAR_RANDOM
        )
    return fit_exponent(record_points(records), reference)


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
Miscellaneous helpers: seeded random streams and the guards used in the
probability formulas.
"""
import math
import logging
from typing import Tuple

import numpy as np

logger = logging.getLogger(__name__)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    Create a PCG64 generator for the given seed and stream.

    The stream is used as the spawn key of the seed sequence, so that
    ``make_rng(seed, i)`` gives the same numbers whatever the order in which
    the streams are created.

    Args:
        seed (int): the seed of the run.
        *stream (int): the position of the consumer (trial index, stage...).

    Returns:
        np.random.Generator: the generator.
    """
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(stream))
    return np.random.Generator(np.random.PCG64(sequence))


def child_seed(seed: int, *stream: int) -> int:
    """
    Derive an integer seed for a nested procedure.

    Args:
        seed (int): the seed of the caller.
        *stream (int): position of the nested call.

    Returns:
        int: a 63-bit seed.
    """
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(stream))
    return int(sequence.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def guarded_log(value: float) -> float:
    """
    Natural logarithm floored at 1, so that thresholds stay meaningful for
    maximum degrees up to e.

    Args:
        value (float): positive value.

    Returns:
        float: max(log(value), 1).
    """
    if value <= 0:
        return 1.0
    return max(math.log(value), 1.0)


def clamp_probability(value: float, name: str = "p") -> Tuple[float, bool]:
    """
    Clamp a probability to [0, 1], logging a warning when it was out of range.

    Args:
        value (float): the computed probability.
        name (str, optional): name used in the log message. Defaults to "p".

    Returns:
        Tuple[float, bool]: the clamped probability and whether it was clamped.
    """
    if value > 1:
        logger.warning("%s = %f is larger than 1, clamped to 1 (keep all).", name, value)
        return 1.0, True
    if value < 0:
        logger.warning("%s = %f is negative, clamped to 0.", name, value)
        return 0.0, True
    return float(value), False

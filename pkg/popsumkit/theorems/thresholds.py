#  Copyright 2026 Popular Sumset Toolkit developers
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
"""Hypothesis thresholds for popular-sum structure statements.

Each threshold c(t) is the additive constant in a hypothesis of the form
``popular_sum(A, B, t) < t|A| + t|B| + c(t)``. All values are exact.
"""

from fractions import Fraction

from ..utils.utils import ceil_div

__all__ = [
    "threshold_limit",
    "threshold_new",
    "threshold_new_extended",
    "threshold_old",
    "threshold_pollard",
]


def threshold_new(t):
    """ceil((-4t^2 + 2t) / 3), for t >= 2.

    Parameters
    ----------
    t : int

    Returns
    -------
    int

    Raises
    ------
    ValueError
        t < 2.
    """
    t = int(t)
    if t < 2:
        raise ValueError("threshold_new needs t >= 2, got {}".format(t))
    return ceil_div(-4 * t * t + 2 * t, 3)


def threshold_new_extended(t):
    """`threshold_new`, also defined at t = 1.

    At t = 1 the constant -1/3 is added before rounding, which gives -1 and
    turns the hypothesis into |A+B| < |A|+|B|-1.
    """
    t = int(t)
    if t == 1:
        return ceil_div(-4 + 2 - 1, 3)
    return threshold_new(t)


def threshold_old(t):
    """-2t^2 + 3t - 2, for t >= 1."""
    t = int(t)
    if t < 1:
        raise ValueError("t must be positive, got {}".format(t))
    return -2 * t * t + 3 * t - 2


def threshold_pollard(t):
    """-t^2: the constant of the Pollard-type target hypothesis."""
    t = int(t)
    if t < 1:
        raise ValueError("t must be positive, got {}".format(t))
    return -t * t


def threshold_limit(t):
    """-9t^2/8: no threshold at or above this can give the structure.

    Returns
    -------
    fractions.Fraction
    """
    t = int(t)
    if t < 1:
        raise ValueError("t must be positive, got {}".format(t))
    return Fraction(-9 * t * t, 8)

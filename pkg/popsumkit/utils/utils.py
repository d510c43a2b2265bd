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
import math
import os

import numpy as np
import psutil
from sklearn.utils import check_random_state


"""
Some utility functions that can be used by different modules
"""

__all__ = [
    "WORKERS_ENV_VAR",
    "batch_random_state",
    "ceil_div",
    "ceil_sqrt",
    "default_worker_count",
    "is_prime",
    "number_or_float",
    "usable_cpu_count",
]

WORKERS_ENV_VAR = "POPSUMKIT_WORKERS"
"""Environment variable holding the default worker count."""


def usable_cpu_count():
    """Get number of CPUs usable by the current process.

    Takes into consideration cpusets restrictions.

    Returns
    -------
    int
    """
    try:
        result = len(os.sched_getaffinity(0))
    except AttributeError:
        try:
            result = len(psutil.Process().cpu_affinity())
        except AttributeError:
            result = os.cpu_count()
    return result


def default_worker_count():
    """Worker count from the environment, else 1.

    ``POPSUMKIT_WORKERS=auto`` selects `usable_cpu_count`.

    Returns
    -------
    int

    Raises
    ------
    ValueError
        The variable is set to something other than a positive integer or
        ``auto``.
    """
    value = os.environ.get(WORKERS_ENV_VAR)
    if value is None or value == "":
        return 1
    if value.strip().lower() == "auto":
        return usable_cpu_count()
    try:
        workers = int(value)
    except ValueError:
        raise ValueError("{} must be a positive integer or 'auto', got {!r}"
                         .format(WORKERS_ENV_VAR, value))
    if workers < 1:
        raise ValueError("{} must be positive, got {}"
                         .format(WORKERS_ENV_VAR, workers))
    return workers


def is_prime(n):
    """Trial-division primality test for small integers."""
    n = int(n)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def ceil_div(a, b):
    """Exact ceiling of a / b for integers, b > 0."""
    if b <= 0:
        raise ValueError("Divisor must be positive")
    return -((-a) // b)


def ceil_sqrt(n):
    """Smallest integer r with r*r >= n, for n >= 0."""
    if n < 0:
        raise ValueError("Square root of a negative number")
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def number_or_float(value):
    """Convert an exact rational to int when integral, else float.

    Keeps report numbers JSON friendly without losing integral values.
    """
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("Booleans are not report numbers")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if getattr(value, "denominator", None) == 1:
        return int(value.numerator)
    value = float(value)
    if value.is_integer():
        return int(value)
    return value


def batch_random_state(seed, *keys):
    """Independent random state for one unit of work.

    Parameters
    ----------
    seed : int
        Job seed.

    keys : int
        Coordinates of the unit (group index, batch index, ...).

    Returns
    -------
    numpy.random.RandomState
        Depends only on ``(seed, *keys)``, so results do not depend on
        which worker processes the unit.
    """
    seed_seq = [int(seed)] + [int(k) for k in keys]
    return check_random_state(np.random.RandomState(seed_seq))

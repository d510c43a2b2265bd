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

import pytest


def test_is_prime():
    from popsumkit.utils.utils import is_prime

    primes = [n for n in range(60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                      47, 53, 59], "is_prime returned wrong result!"


def test_ceil_helpers():
    from popsumkit.utils.utils import ceil_div, ceil_sqrt

    for a in range(-20, 21):
        for b in range(1, 7):
            assert ceil_div(a, b) == math.ceil(a / b)
    with pytest.raises(ValueError):
        ceil_div(1, 0)
    for n in range(0, 500):
        r = ceil_sqrt(n)
        assert r * r >= n and (r - 1) * (r - 1) < n or n == 0
    with pytest.raises(ValueError):
        ceil_sqrt(-1)


def test_number_or_float():
    from fractions import Fraction
    from popsumkit.utils.utils import number_or_float
    import numpy as np

    assert number_or_float(Fraction(6, 3)) == 2
    assert isinstance(number_or_float(Fraction(6, 3)), int)
    assert number_or_float(Fraction(15, 4)) == 3.75
    assert isinstance(number_or_float(np.int64(4)), int)
    assert number_or_float(2.0) == 2
    with pytest.raises(TypeError):
        number_or_float(True)


def test_batch_random_state():
    from popsumkit.utils.utils import batch_random_state

    first = batch_random_state(7, 0, 3).randint(1 << 30, size=5)
    again = batch_random_state(7, 0, 3).randint(1 << 30, size=5)
    other = batch_random_state(7, 0, 4).randint(1 << 30, size=5)
    assert (first == again).all(), "Same keys must give the same stream"
    assert not (first == other).all()


def test_default_worker_count(monkeypatch):
    from popsumkit.utils.utils import (WORKERS_ENV_VAR,
                                       default_worker_count,
                                       usable_cpu_count)

    monkeypatch.delenv(WORKERS_ENV_VAR, raising=False)
    assert default_worker_count() == 1
    monkeypatch.setenv(WORKERS_ENV_VAR, "3")
    assert default_worker_count() == 3
    monkeypatch.setenv(WORKERS_ENV_VAR, "auto")
    assert default_worker_count() == usable_cpu_count() >= 1
    monkeypatch.setenv(WORKERS_ENV_VAR, "0")
    with pytest.raises(ValueError):
        default_worker_count()
    monkeypatch.setenv(WORKERS_ENV_VAR, "many")
    with pytest.raises(ValueError):
        default_worker_count()

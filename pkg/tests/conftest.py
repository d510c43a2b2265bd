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

import pytest


@pytest.fixture
def z12_kneser_pair():
    """Z12 pair whose own sets are a witness at t=2."""
    from popsumkit.group import FiniteAbelianGroup, GroupSet

    G = FiniteAbelianGroup([12])
    return (GroupSet.from_elements(G, [0, 1, 4, 5, 8, 9]),
            GroupSet.from_elements(G, [0, 4, 8]))


@pytest.fixture
def z12_one_removal():
    """Z12 pair needing one removal from A for a witness at t=2."""
    from popsumkit.group import FiniteAbelianGroup, GroupSet

    G = FiniteAbelianGroup([12])
    return (GroupSet.from_elements(G, [0, 1, 2, 4, 5, 8, 9]),
            GroupSet.from_elements(G, [0, 4, 8]))

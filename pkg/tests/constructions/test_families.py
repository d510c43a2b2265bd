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


def _setup(order, generator):
    from popsumkit.group import FiniteAbelianGroup, subgroup_generated

    G = FiniteAbelianGroup([order])
    return G, subgroup_generated(G, [generator])


def test_ap_cosets():
    from popsumkit.constructions.families import gen_ap_cosets

    G, H = _setup(12, 4)
    spec = gen_ap_cosets(G, H, 0, 2, 2, 2)
    assert spec.t == 2 and spec.match
    assert spec.direct_sum == 18
    assert spec.A == [0, 1, 4, 5, 8, 9] and spec.A == spec.B

    G, H = _setup(18, 6)
    spec = gen_ap_cosets(G, H, 1, 1, 3, 3)
    assert spec.t == 4 and len(spec.A) == 9
    assert spec.predicted_sum == spec.direct_sum == 54


def test_ap_cosets_meets_conjectured_bound():
    from popsumkit.constructions.families import gen_ap_cosets
    from popsumkit.theorems.bounds import check_conjecture

    G, H = _setup(12, 4)
    spec = gen_ap_cosets(G, H, 0, 2, 2, 2)
    A, B = spec.sets(G)
    report = check_conjecture(A, B, spec.t)
    assert report.holds and report.details["equality"]


def test_kneser_pair():
    from popsumkit.constructions.families import gen_kneser_pair

    G, H = _setup(12, 4)
    spec = gen_kneser_pair(G, H, 2, 2, 1)
    assert len(spec.A) == 6 and len(spec.B) == 3
    assert spec.predicted_sum == spec.direct_sum == 12


def test_minus_self_records_discrepancy():
    from popsumkit.constructions.families import gen_minus_self

    G, H = _setup(12, 4)
    spec = gen_minus_self(G, H, 1, 2)
    assert spec.t == 5 and spec.match
    assert spec.direct_sum == 33
    note, = spec.notes
    assert note["kind"] == "formula_discrepancy"
    assert note["difference"] == note["t_squared"] == 25
    A, B = spec.sets()
    assert B == A.negate()


def test_recursive_1():
    from popsumkit.constructions.families import gen_recursive_1
    from popsumkit.group import GroupSet

    G, K = _setup(16, 4)
    inner = GroupSet.from_elements(G, [0, 8])
    spec = gen_recursive_1(G, K, 1, 1, inner, inner)
    assert spec.t == 5 and len(spec.A) == len(spec.B) == 6
    assert spec.predicted_sum == spec.direct_sum == 34

    spec = gen_recursive_1(G, K, 1, 2, K,
                           GroupSet.from_elements(G, [0, 4, 8]))
    assert spec.t == 6
    assert spec.predicted_sum == spec.direct_sum == 52


def test_recursive_2():
    from popsumkit.constructions.families import gen_recursive_2
    from popsumkit.group import GroupSet

    G, K = _setup(16, 4)
    spec = gen_recursive_2(G, K, 2, 2, 2, K,
                           GroupSet.from_elements(G, [0, 4, 8]))
    assert spec.predicted_sum == spec.direct_sum == 24
    assert spec.direct_sum < 2 * len(spec.A) + 2 * len(spec.B) - 4


KNESER_MATRIX = [
    (8, 2, 2, 1, 2), (9, 3, 2, 2, 2), (10, 2, 3, 1, 1), (12, 4, 1, 2, 3),
    (12, 3, 3, 2, 1), (15, 5, 2, 3, 2), (16, 4, 2, 2, 2), (18, 6, 2, 3, 3),
    (20, 4, 4, 2, 2), (24, 6, 3, 3, 4),
]

AP_MATRIX = [
    (8, 4, 0, 1, 2, 2), (8, 4, 1, 1, 2, 3), (9, 3, 0, 2, 1, 2),
    (10, 5, 1, 1, 2, 3), (12, 4, 0, 2, 2, 2), (14, 7, 2, 1, 3, 4),
    (16, 4, 1, 3, 2, 2), (18, 6, 1, 1, 3, 3), (20, 5, 1, 2, 2, 3),
    (24, 8, 2, 1, 3, 5),
]


@pytest.mark.parametrize("order,generator,t,nA,nB", KNESER_MATRIX)
def test_kneser_pair_matrix(order, generator, t, nA, nB):
    from popsumkit.constructions.families import gen_kneser_pair

    G, H = _setup(order, generator)
    spec = gen_kneser_pair(G, H, t, nA, nB)
    h = len(H)
    assert len(spec.A) == nA * h and len(spec.B) == nB * h
    assert spec.predicted_sum == spec.direct_sum == \
        t * (nA + nB - 1) * h


@pytest.mark.parametrize("order,generator,s,u,nA,nB", AP_MATRIX)
def test_ap_cosets_matrix(order, generator, s, u, nA, nB):
    from popsumkit.constructions.families import gen_ap_cosets
    from popsumkit.theorems.bounds import check_conjecture

    G, H = _setup(order, generator)
    spec = gen_ap_cosets(G, H, s, u, nA, nB)
    h = len(H)
    assert spec.t == s * h + u
    assert spec.predicted_sum == spec.direct_sum
    assert spec.direct_sum < spec.t * (len(spec.A) + len(spec.B)) - \
        spec.t ** 2
    report = check_conjecture(*spec.sets(G), spec.t)
    assert report.holds and report.details["equality"]


@pytest.mark.parametrize("order,generator,s,u", [
    (8, 4, 1, 1), (12, 4, 1, 2), (16, 4, 1, 3), (24, 6, 2, 2),
])
def test_recursive_1_with_full_inner_pair_is_minus_self(order, generator, s,
                                                        u):
    from popsumkit.constructions.families import (gen_minus_self,
                                                  gen_recursive_1)

    G, K = _setup(order, generator)
    base = gen_minus_self(G, K, s, u)
    spec = gen_recursive_1(G, K, s, u, K, K)
    assert (spec.A, spec.B, spec.t) == (base.A, base.B, base.t)
    assert spec.predicted_sum == base.predicted_sum == spec.direct_sum


@pytest.mark.parametrize("order,generator,t,nA,nB,A0,B0,expected", [
    (16, 4, 2, 2, 2, [0, 4, 8, 12], [0, 4, 8], 24),
    (20, 4, 2, 2, 2, [0, 4, 8, 12, 16], [0, 4, 8], 30),
    (24, 4, 2, 2, 1, [0, 8, 16], [0, 8, 16], 18),
    (18, 3, 3, 1, 1, [0, 3, 6, 9, 12, 15], [0, 3, 6, 9], 18),
])
def test_recursive_2_nested_instances(order, generator, t, nA, nB, A0, B0,
                                      expected):
    from popsumkit.constructions.families import gen_recursive_2
    from popsumkit.group import GroupSet

    G, K = _setup(order, generator)
    spec = gen_recursive_2(G, K, t, nA, nB, GroupSet.from_elements(G, A0),
                           GroupSet.from_elements(G, B0))
    assert spec.predicted_sum == spec.direct_sum == expected
    assert spec.direct_sum < t * (len(spec.A) + len(spec.B)) - t * t


def test_recursive_1_nested_in_z24():
    from popsumkit.constructions.families import gen_recursive_1
    from popsumkit.group import GroupSet

    G, K = _setup(24, 6)
    inner = GroupSet.from_elements(G, [0, 12])
    spec = gen_recursive_1(G, K, 1, 1, inner, inner)
    assert spec.t == 5
    assert spec.predicted_sum == spec.direct_sum == 34
    assert spec.direct_sum < 5 * (len(spec.A) + len(spec.B)) - 25


def test_parameter_errors():
    from popsumkit.constructions.families import (gen_ap_cosets,
                                                  gen_kneser_pair,
                                                  gen_minus_self,
                                                  gen_recursive_1)
    from popsumkit.exceptions import PreconditionError
    from popsumkit.group import FiniteAbelianGroup, GroupSet

    G, H = _setup(12, 4)
    with pytest.raises(PreconditionError):
        gen_minus_self(G, H, 0, 1)
    with pytest.raises(PreconditionError):
        gen_minus_self(G, H, 1, 3)
    with pytest.raises(PreconditionError):
        gen_kneser_pair(G, H, 3, 1, 1)
    with pytest.raises(PreconditionError):
        gen_ap_cosets(G, H, 1, 1, 1, 2)
    with pytest.raises(PreconditionError):
        gen_ap_cosets(G, H, 0, 1, 3, 3)
    inner = GroupSet.from_elements(G, [0, 8])
    with pytest.raises(PreconditionError):
        gen_recursive_1(G, H, 1, 1, inner, inner)
    other = FiniteAbelianGroup([6])
    with pytest.raises(PreconditionError):
        gen_kneser_pair(other, H, 1, 1, 1)


def test_spec_serialization():
    from popsumkit.constructions.families import (ConstructionSpec,
                                                  gen_minus_self)

    G, H = _setup(12, 4)
    spec = gen_minus_self(G, H, 1, 1)
    data = spec.to_dict()
    assert data["match"] is True
    assert ConstructionSpec.from_dict(data) == spec
    data["family"] = "nonsense"
    with pytest.raises(ValueError):
        ConstructionSpec.from_dict(data)

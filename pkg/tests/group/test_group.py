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


def test_cyclic_arithmetic():
    from popsumkit.group import FiniteAbelianGroup

    G = FiniteAbelianGroup([6])
    assert G.add(4, 5) == 3, "4 + 5 in Z6 should be 3"
    assert G.neg(2) == 4, "-2 in Z6 should be 4"
    assert G.sub(1, 2) == 5
    assert FiniteAbelianGroup([5]).add(0, 2) == 2, "0 is the identity"
    assert FiniteAbelianGroup([5]).neg(0) == 0


def test_product_arithmetic():
    from popsumkit.group import FiniteAbelianGroup

    G = FiniteAbelianGroup.from_spec("Z4xZ2")
    assert G.order == 8
    assert G.spec == "Z4xZ2"
    g = G.index((3, 1))
    h = G.index((1, 1))
    assert G.components(g) == (3, 1), "last factor varies fastest"
    assert G.components(G.add(g, h)) == (0, 0)
    assert G.components(G.neg(h)) == (3, 1)
    assert G.element_order(h) == 4
    assert G.multiple(-1, h) == G.neg(h)


def test_group_axioms_exhaustive():
    from popsumkit.group import FiniteAbelianGroup
    import numpy as np

    for spec in ["Z8", "Z2xZ4", "Z3xZ3", "Z2xZ2xZ2"]:
        G = FiniteAbelianGroup.from_spec(spec)
        g = G.elements[:, None]
        h = G.elements[None, :]
        sums = G.add_arrays(g, h)
        assert np.array_equal(sums, sums.T), "addition must commute"
        assert np.all(G.add_arrays(G.elements, G.neg_array(G.elements))
                      == 0), "neg must invert"
        assert np.array_equal(G.add_arrays(G.elements, 0), G.elements)
        for k in G.elements:
            left = G.add_arrays(sums, k)
            right = G.add_arrays(g, G.add_arrays(h, k))
            assert np.array_equal(left, right), \
                "addition must be associative in " + spec


def test_bad_specs_and_elements():
    from popsumkit.group import FiniteAbelianGroup

    for spec in ["Z", "Y4", "Z4x", "12"]:
        with pytest.raises(ValueError):
            FiniteAbelianGroup.from_spec(spec)
    with pytest.raises(ValueError):
        FiniteAbelianGroup([0])
    with pytest.raises(ValueError):
        FiniteAbelianGroup([5]).add(5, 1)


def test_group_set_views():
    from popsumkit.group import FiniteAbelianGroup, GroupSet

    G = FiniteAbelianGroup([8])
    S = GroupSet.from_elements(G, [0, 1, 4, 5])
    assert S.mask == 0x33
    assert GroupSet.from_mask(G, 0x33) == S
    assert S.to_list() == [0, 1, 4, 5]
    assert len(S) == 4 and 4 in S and 2 not in S
    assert list(S) == [0, 1, 4, 5]
    assert S.translate(3).to_list() == [0, 3, 4, 7]
    assert S.negate().to_list() == [0, 3, 4, 7]
    assert (S | S.translate(2)) == GroupSet.full(G)
    assert (S & S.translate(4)) == S
    assert (S - S).is_empty()
    assert S.complement().to_list() == [2, 3, 6, 7]
    assert S <= GroupSet.full(G) and not GroupSet.full(G) <= S
    assert hash(S) == hash(GroupSet.from_mask(G, 0x33))
    with pytest.raises(ValueError):
        GroupSet.from_mask(G, 1 << 8)
    with pytest.raises(ValueError):
        S.bits[0] = False


def test_subgroup_generated():
    from popsumkit.group import FiniteAbelianGroup, subgroup_generated

    assert subgroup_generated(FiniteAbelianGroup([8]), [2]).to_list() == \
        [0, 2, 4, 6]
    assert subgroup_generated(FiniteAbelianGroup([6]), []).to_list() == [0]
    V = FiniteAbelianGroup.from_spec("Z2xZ2")
    whole = subgroup_generated(V, [V.index((1, 0)), V.index((0, 1))])
    assert whole.order == 4


def test_subgroup_validation():
    from popsumkit.group import FiniteAbelianGroup, GroupSet, Subgroup

    G = FiniteAbelianGroup([6])
    with pytest.raises(ValueError):
        Subgroup.from_set(GroupSet.from_elements(G, [1, 4]))
    with pytest.raises(ValueError):
        Subgroup.from_set(GroupSet.from_elements(G, [0, 1]))
    H = Subgroup.from_set(GroupSet.from_elements(G, [0, 3]))
    assert H.order == 2 and H.index_in_group == 3


def test_enumerate_subgroups():
    from popsumkit.exceptions import ResourceLimitError
    from popsumkit.group import FiniteAbelianGroup, enumerate_subgroups

    z4 = enumerate_subgroups(FiniteAbelianGroup([4]))
    assert [H.to_list() for H in z4] == [[0], [0, 2], [0, 1, 2, 3]]
    z6 = enumerate_subgroups(FiniteAbelianGroup([6]))
    assert [H.to_list() for H in z6] == \
        [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]]
    klein = enumerate_subgroups(FiniteAbelianGroup.from_spec("Z2xZ2"))
    assert len(klein) == 5, "the Klein group has 5 subgroups"
    assert len(enumerate_subgroups(FiniteAbelianGroup([12]))) == 6
    assert len(enumerate_subgroups(
        FiniteAbelianGroup.from_spec("Z2xZ2xZ2"))) == 16
    with pytest.raises(ResourceLimitError):
        enumerate_subgroups(FiniteAbelianGroup([64]), limit=32)


def test_enumerated_subgroups_are_closed_and_distinct():
    from popsumkit.group import FiniteAbelianGroup, enumerate_subgroups
    import numpy as np

    G = FiniteAbelianGroup.from_spec("Z2xZ6")
    subgroups = enumerate_subgroups(G)
    assert len({H.mask for H in subgroups}) == len(subgroups)
    for H in subgroups:
        sums = G.add_arrays(H.elements[:, None], H.elements[None, :])
        assert np.all(H.bits[sums]), "subgroups must be closed"
        assert G.order % H.order == 0


def test_quotient_map():
    from popsumkit.group import (FiniteAbelianGroup, GroupSet, Subgroup,
                                 quotient_map, enumerate_subgroups)

    G = FiniteAbelianGroup([6])
    K = Subgroup.from_set(GroupSet.from_elements(G, [0, 3]))
    assert quotient_map(G, K, 4) == 1
    assert quotient_map(G, K, 0) == 0
    G4 = FiniteAbelianGroup([4])
    K4 = Subgroup.from_set(GroupSet.from_elements(G4, [0, 2]))
    assert quotient_map(G4, K4, 3) == 1

    G = FiniteAbelianGroup.from_spec("Z2xZ4")
    for K in enumerate_subgroups(G):
        for g in range(G.order):
            for h in range(G.order):
                same = K.quotient_map(g) == K.quotient_map(h)
                assert same == (G.sub(g, h) in K), \
                    "cosets must be the classes of g - h in K"


def test_cosets_and_slices():
    from popsumkit.group import FiniteAbelianGroup, GroupSet, Subgroup

    G = FiniteAbelianGroup([12])
    H = Subgroup.from_set(GroupSet.from_elements(G, [0, 4, 8]))
    assert list(H.coset_representatives()) == [0, 1, 2, 3]
    assert H.coset(5).to_list() == [1, 5, 9]
    assert len(H.cosets()) == 4
    S = GroupSet.from_elements(G, [0, 1, 2, 4, 5])
    assert H.periodize(S).to_list() == [0, 1, 2, 4, 5, 6, 8, 9, 10]
    assert [piece.to_list() for piece in H.slices(S)] == \
        [[0, 4], [1, 5], [2]]


def test_parse_element():
    from popsumkit.group import FiniteAbelianGroup, parse_element

    G = FiniteAbelianGroup.from_spec("Z4xZ2")
    assert parse_element(G, "(3,1)") == 7
    assert parse_element(G, "5") == 5
    assert parse_element(G, (1, 1)) == 3
    with pytest.raises(ValueError):
        parse_element(G, "(3,1")
    with pytest.raises(ValueError):
        parse_element(G, "8")


def test_group_pickles():
    from popsumkit.group import FiniteAbelianGroup
    import pickle

    G = FiniteAbelianGroup.from_spec("Z3xZ5")
    assert pickle.loads(pickle.dumps(G)) == G

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
"""Set arithmetic over finite abelian groups.

Sumsets, representation profiles and popular sumsets, stabilizers, and the
bookkeeping objects used in arguments about popular sums: the Dyson
transform, the dot-grid statistics and the self-absorbing part of a set.

All functions are pure; inputs are immutable `GroupSet` values.
"""

import logging

from typing import List, NamedTuple

import numpy as np

from .group import Element, GroupSet, Subgroup

logger = logging.getLogger(__name__)

__all__ = [
    "DotGridStats",
    "DysonPair",
    "RepProfile",
    "canonicalize",
    "difference_set",
    "dot_grid_stats",
    "dyson",
    "invariant_T",
    "normalize_translation",
    "popular_sum",
    "popular_sumset",
    "rep_count",
    "rep_profile",
    "stabilizer",
    "sumset",
]


def _check_pair(A: GroupSet, B: GroupSet) -> None:
    if A.group != B.group:
        raise ValueError("Sets live in different groups: {} and {}"
                         .format(A.group.spec, B.group.spec))


def _check_t(t: int) -> int:
    t = int(t)
    if t < 1:
        raise ValueError("t must be a positive integer, got {}".format(t))
    return t


class RepProfile:
    """Representation counts of every group element.

    Parameters
    ----------
    A, B : GroupSet
        Summands, in the same group.

    counts : array of int, shape=[group.order]
        ``counts[g]`` is the number of pairs (a, b) in A x B with a+b = g.

    Attributes
    ----------
    group : FiniteAbelianGroup

    counts : read-only array of int
    """

    def __init__(self, A: GroupSet, B: GroupSet, counts: np.ndarray):
        counts = np.array(counts, dtype=np.int64, copy=True)
        counts.flags.writeable = False
        self.group = A.group
        self.size_A = len(A)
        self.size_B = len(B)
        self.counts = counts
        assert int(counts.sum()) == self.size_A * self.size_B, \
            "Representation counts must sum to |A||B|"

    def __getitem__(self, g: Element) -> int:
        return int(self.counts[g])

    def popular(self, t: int) -> GroupSet:
        """Elements with at least t representations."""
        return GroupSet(self.group, self.counts >= _check_t(t))

    def popular_sum(self, t: int) -> int:
        """Sum of the sizes of the i-popular sumsets for i = 1..t."""
        return int(np.minimum(self.counts, _check_t(t)).sum())

    def support(self) -> GroupSet:
        return GroupSet(self.group, self.counts > 0)

    def to_list(self) -> List[int]:
        return [int(c) for c in self.counts]

    def __eq__(self, other):
        if not isinstance(other, RepProfile):
            return NotImplemented
        return (self.group == other.group
                and np.array_equal(self.counts, other.counts))

    def __repr__(self):
        return "RepProfile({}, {})".format(self.group.spec, self.to_list())


def rep_profile(A: GroupSet, B: GroupSet) -> RepProfile:
    """Representation counts r_{A,B}(g) for every g.

    Parameters
    ----------
    A, B : GroupSet

    Returns
    -------
    RepProfile

    Raises
    ------
    ValueError
        A and B live in different groups.
    """
    _check_pair(A, B)
    group = A.group
    if A.is_empty() or B.is_empty():
        return RepProfile(A, B, np.zeros(group.order, dtype=np.int64))
    sums = group.add_arrays(A.elements[:, None], B.elements[None, :])
    counts = np.bincount(sums.ravel(), minlength=group.order)
    return RepProfile(A, B, counts)


def rep_count(A: GroupSet, B: GroupSet, g: Element) -> int:
    """r_{A,B}(g) as the popcount of (g - A) & B."""
    _check_pair(A, B)
    g_minus_A = A.negate().translate(g)
    return len(g_minus_A & B)


def sumset(A: GroupSet, B: GroupSet) -> GroupSet:
    """A + B; empty when either operand is empty."""
    return rep_profile(A, B).support()


def difference_set(A: GroupSet, B: GroupSet) -> GroupSet:
    """A - B."""
    return sumset(A, B.negate())


def popular_sumset(A: GroupSet, B: GroupSet, t: int) -> GroupSet:
    """Elements of A + B with at least t representations.

    Raises
    ------
    ValueError
        t < 1 or group mismatch.
    """
    t = _check_t(t)
    return rep_profile(A, B).popular(t)


def popular_sum(A: GroupSet, B: GroupSet, t: int) -> int:
    """Sum over i = 1..t of the i-popular sumset sizes.

    Computed in one pass as the sum over g of min(r(g), t).
    """
    t = _check_t(t)
    return rep_profile(A, B).popular_sum(t)


def stabilizer(A: GroupSet) -> Subgroup:
    """Subgroup of all e with e + A = A.

    The empty set is fixed by every element, so its stabilizer is the whole
    group. Only candidates e with e + a0 in A, for a fixed member a0, are
    tested.
    """
    group = A.group
    if A.is_empty():
        return Subgroup.whole(group)
    a0 = int(A.elements[0])
    candidates = group.add_arrays(A.elements, group.neg(a0))
    shifted = group.add_arrays(candidates[:, None], A.elements[None, :])
    fixes = np.all(A.bits[shifted], axis=1)
    bits = np.zeros(group.order, dtype=bool)
    bits[candidates[fixes]] = True
    return Subgroup(group, bits, check=False)


class DysonPair(NamedTuple):
    """Result of the Dyson transform of (A, B) at z.

    ``degenerate`` is set when z is not in A - B, in which case the
    intersection part is empty.
    """

    union: GroupSet
    intersection: GroupSet
    degenerate: bool


def dyson(A: GroupSet, B: GroupSet, z: Element) -> DysonPair:
    """(A | (z + B), A & (z + B)).

    Total size is preserved: the two parts have sizes adding to
    |A| + |B|.
    """
    _check_pair(A, B)
    shifted = B.translate(z)
    union = A | shifted
    intersection = A & shifted
    assert len(union) + len(intersection) == len(A) + len(B)
    degenerate = intersection.is_empty()
    if degenerate:
        logger.debug("Dyson transform at z=%d is degenerate", int(z))
    return DysonPair(union, intersection, degenerate)


class DotGridStats(NamedTuple):
    """Counts of the dot grid of A x B at level t.

    Attributes
    ----------
    X : GroupSet
        Elements with more than t representations.

    y : int
        Holes: |X||B| minus the representations of elements of X.

    edge_count : int
        Pairs (a, b) whose sum falls outside X.

    popular_sum : int
        Sum over i = 1..t of the i-popular sumset sizes.
    """

    X: GroupSet
    y: int
    edge_count: int
    popular_sum: int


def dot_grid_stats(A: GroupSet, B: GroupSet, t: int) -> DotGridStats:
    """Dot-grid statistics of the pair at level t.

    Both counting identities hold on the result::

        popular_sum = |A||B| - |X|(|B| - t) + y
        popular_sum = t|X| + edge_count

    Raises
    ------
    ValueError
        t < 1 or |B| < t.
    """
    t = _check_t(t)
    if len(B) < t:
        raise ValueError("Dot grid needs |B| >= t, got |B|={} and t={}"
                         .format(len(B), t))
    profile = rep_profile(A, B)
    X = profile.popular(t + 1)
    reps_in_X = int(profile.counts[X.elements].sum())
    y = len(X) * len(B) - reps_in_X
    edge_count = len(A) * len(B) - reps_in_X
    total = profile.popular_sum(t)
    assert total == len(A) * len(B) - len(X) * (len(B) - t) + y
    assert total == t * len(X) + edge_count
    return DotGridStats(X, y, edge_count, total)


def invariant_T(A: GroupSet, B: GroupSet):
    """Self-absorbing part of A and its period.

    Parameters
    ----------
    A, B : GroupSet
        B nonempty.

    Returns
    -------
    T : GroupSet
        Members x of A with x + B contained in A.

    omega : Subgroup
        Stabilizer of T + B, or the trivial subgroup when T is empty.

    Raises
    ------
    ValueError
        B is empty.
    """
    _check_pair(A, B)
    if B.is_empty():
        raise ValueError("B must be nonempty")
    group = A.group
    if A.is_empty():
        return GroupSet.empty(group), Subgroup.trivial(group)
    sums = group.add_arrays(A.elements[:, None], B.elements[None, :])
    absorbed = np.all(A.bits[sums], axis=1)
    bits = np.zeros(group.order, dtype=bool)
    bits[A.elements[absorbed]] = True
    T = GroupSet(group, bits)
    if T.is_empty():
        return T, Subgroup.trivial(group)
    T_plus_B = sumset(T, B)
    omega = stabilizer(T_plus_B)
    assert T_plus_B <= A
    # With 0 in B the two periods agree; otherwise they may differ.
    if 0 in B:
        assert omega == stabilizer(T), "T + B and T must share a period"
    return T, omega


def canonicalize(S_prime: GroupSet, S: GroupSet, H: Subgroup) -> GroupSet:
    """(S' + H) & S: fill S' up to whole H-coset slices of S."""
    return H.periodize(S_prime) & S


def normalize_translation(S: GroupSet) -> GroupSet:
    """Translate S so that its smallest member becomes 0."""
    if S.is_empty():
        return S
    return S.translate(S.group.neg(int(S.elements[0])))

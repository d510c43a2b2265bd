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
"""Finite abelian groups, their subsets and their subgroups.

A group is a product of cyclic factors Z_{d1} x ... x Z_{dk}. Elements are
dense integer indices in mixed-radix order: component j of index g is
``(g // prod(d[j+1:])) % d[j]``, so the last factor varies fastest. Subsets
are fixed-length boolean vectors indexed by element, which makes every set
operation a vectorized numpy operation and gives each subset a canonical
integer bitmask.
"""

import logging
import re

from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .exceptions import ResourceLimitError

logger = logging.getLogger(__name__)

__all__ = [
    "Element",
    "FiniteAbelianGroup",
    "GroupSet",
    "Subgroup",
    "enumerate_subgroups",
    "quotient_map",
    "subgroup_generated",
]

Element = int
"""Elements are plain integer indices into the group."""

DEFAULT_SUBGROUP_LIMIT = 4096
"""Largest group order accepted by `enumerate_subgroups` by default."""

_FACTOR_RE = re.compile(r"^Z(\d+)$")


class FiniteAbelianGroup:
    """Finite abelian group given as a product of cyclic factors.

    Parameters
    ----------
    moduli : sequence of int
        Orders d_i >= 1 of the cyclic factors, in presentation order. The
        presentation is not normalized, so ``Z2xZ3`` and ``Z6`` are distinct
        groups.

    Attributes
    ----------
    moduli : tuple of int
        The cyclic factor orders.

    order : int
        Number of elements, the product of the moduli.
    """

    def __init__(self, moduli: Sequence[int]):
        moduli = tuple(int(d) for d in moduli)
        if len(moduli) == 0:
            raise ValueError("A group needs at least one cyclic factor")
        if any(d < 1 for d in moduli):
            raise ValueError("Cyclic factor orders must be positive: {}"
                             .format(moduli))
        self.moduli = moduli
        self.order = int(np.prod(moduli, dtype=np.int64))
        strides = []
        stride = 1
        for d in reversed(moduli):
            strides.append(stride)
            stride *= d
        self._strides = tuple(reversed(strides))
        self._elements = np.arange(self.order, dtype=np.int64)
        self._elements.flags.writeable = False
        self._neg_table = self.add_arrays(
            np.zeros(self.order, dtype=np.int64), self._elements, sign=-1)
        self._neg_table.flags.writeable = False

    @classmethod
    def from_spec(cls, spec: str) -> "FiniteAbelianGroup":
        """Parse a group spec such as ``Z12`` or ``Z4xZ2``.

        Parameters
        ----------
        spec : str
            Factors ``Z<n>`` joined by ``x``.

        Returns
        -------
        FiniteAbelianGroup

        Raises
        ------
        ValueError
            Malformed spec.
        """
        factors = spec.strip().split("x")
        moduli = []
        for factor in factors:
            match = _FACTOR_RE.match(factor.strip())
            if match is None:
                raise ValueError("Malformed group spec: {!r}".format(spec))
            moduli.append(int(match.group(1)))
        return cls(moduli)

    @property
    def spec(self) -> str:
        """Spec string accepted by `from_spec`."""
        return "x".join("Z{}".format(d) for d in self.moduli)

    @property
    def elements(self) -> np.ndarray:
        """All element indices, read-only."""
        return self._elements

    def is_cyclic_prime(self) -> bool:
        """Whether the presentation is a single factor of prime order."""
        from .utils.utils import is_prime
        return len(self.moduli) == 1 and is_prime(self.moduli[0])

    def zero(self) -> Element:
        return 0

    def check_element(self, g: Element) -> Element:
        """Return g as an int, raising ValueError if out of range."""
        g = int(g)
        if not 0 <= g < self.order:
            raise ValueError("Element {} out of range for {}"
                             .format(g, self.spec))
        return g

    def components(self, g: Element) -> Tuple[int, ...]:
        """Mixed-radix components of element g."""
        g = self.check_element(g)
        return tuple((g // stride) % d
                     for d, stride in zip(self.moduli, self._strides))

    def index(self, components: Sequence[int]) -> Element:
        """Element index of a component tuple (reduced modulo each factor)."""
        if len(components) != len(self.moduli):
            raise ValueError("Expected {} components, got {}"
                             .format(len(self.moduli), len(components)))
        return int(sum((int(c) % d) * stride for c, d, stride
                       in zip(components, self.moduli, self._strides)))

    def add_arrays(self, g: np.ndarray, h: np.ndarray,
                   sign: int = 1) -> np.ndarray:
        """Componentwise g + sign*h for broadcastable index arrays.

        No range checking; callers pass valid indices.
        """
        g = np.asarray(g, dtype=np.int64)
        h = np.asarray(h, dtype=np.int64)
        result = np.zeros(np.broadcast(g, h).shape, dtype=np.int64)
        for d, stride in zip(self.moduli, self._strides):
            result += ((g // stride + sign * (h // stride)) % d) * stride
        return result

    def add(self, g: Element, h: Element) -> Element:
        """Group sum of two elements.

        Raises
        ------
        ValueError
            Either index is out of range.
        """
        g = self.check_element(g)
        h = self.check_element(h)
        return int(self.add_arrays(g, h))

    def sub(self, g: Element, h: Element) -> Element:
        """g - h."""
        return self.add(g, self.neg(h))

    def neg(self, g: Element) -> Element:
        """Additive inverse of g."""
        return int(self._neg_table[self.check_element(g)])

    def neg_array(self, g: np.ndarray) -> np.ndarray:
        return self._neg_table[np.asarray(g, dtype=np.int64)]

    def multiple(self, k: int, g: Element) -> Element:
        """k*g for an integer k (negative k allowed)."""
        comps = self.components(g)
        return self.index([k * c for c in comps])

    def element_order(self, g: Element) -> int:
        """Order of g: lcm over factors of d / gcd(d, component)."""
        result = 1
        for c, d in zip(self.components(g), self.moduli):
            component_order = d // np.gcd(c, d)
            result = int(np.lcm(result, component_order))
        return result

    def __eq__(self, other):
        return (isinstance(other, FiniteAbelianGroup)
                and self.moduli == other.moduli)

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self):
        return "FiniteAbelianGroup({})".format(self.spec)

    def __reduce__(self):
        return (FiniteAbelianGroup, (self.moduli,))


class GroupSet:
    """Immutable subset of a finite abelian group stored as a bit vector.

    Parameters
    ----------
    group : FiniteAbelianGroup
        Ambient group.

    bits : array of bool, shape=[group.order]
        ``bits[g]`` is True iff g is in the set. The array is copied.

    Attributes
    ----------
    group : FiniteAbelianGroup

    bits : read-only array of bool, shape=[group.order]

    cardinality : int
        Number of members, cached.
    """

    __slots__ = ("group", "bits", "cardinality", "_mask", "_elements")

    def __init__(self, group: FiniteAbelianGroup, bits: np.ndarray):
        bits = np.array(bits, dtype=bool, copy=True).ravel()
        if bits.shape[0] != group.order:
            raise ValueError("Bit vector length {} != group order {}"
                             .format(bits.shape[0], group.order))
        bits.flags.writeable = False
        self.group = group
        self.bits = bits
        self.cardinality = int(np.count_nonzero(bits))
        self._mask = None
        self._elements = None

    @classmethod
    def from_elements(cls, group: FiniteAbelianGroup,
                      elements: Iterable[Element]) -> "GroupSet":
        """Build a set from element indices.

        Raises
        ------
        ValueError
            An element is out of range.
        """
        bits = np.zeros(group.order, dtype=bool)
        for g in elements:
            bits[group.check_element(g)] = True
        return cls(group, bits)

    @classmethod
    def from_mask(cls, group: FiniteAbelianGroup, mask: int) -> "GroupSet":
        """Build a set from an integer bitmask (bit g set iff g in set)."""
        mask = int(mask)
        if mask < 0 or mask >> group.order:
            raise ValueError("Mask {:#x} does not fit {}"
                             .format(mask, group.spec))
        n_bytes = max(1, (group.order + 7) // 8)
        raw = np.frombuffer(mask.to_bytes(n_bytes, "little"), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")[:group.order]
        return cls(group, bits.astype(bool))

    @classmethod
    def empty(cls, group: FiniteAbelianGroup) -> "GroupSet":
        return cls(group, np.zeros(group.order, dtype=bool))

    @classmethod
    def full(cls, group: FiniteAbelianGroup) -> "GroupSet":
        return cls(group, np.ones(group.order, dtype=bool))

    @property
    def mask(self) -> int:
        """Integer bitmask with bit g set iff g is a member."""
        if self._mask is None:
            packed = np.packbits(self.bits, bitorder="little")
            self._mask = int.from_bytes(packed.tobytes(), "little")
        return self._mask

    @property
    def elements(self) -> np.ndarray:
        """Sorted member indices."""
        if self._elements is None:
            elements = np.flatnonzero(self.bits)
            elements.flags.writeable = False
            self._elements = elements
        return self._elements

    def to_list(self) -> List[int]:
        return [int(g) for g in self.elements]

    def is_empty(self) -> bool:
        return self.cardinality == 0

    def _check_same_group(self, other: "GroupSet") -> None:
        if self.group != other.group:
            raise ValueError("Sets live in different groups: {} and {}"
                             .format(self.group.spec, other.group.spec))

    def __len__(self):
        return self.cardinality

    def __iter__(self):
        return (int(g) for g in self.elements)

    def __contains__(self, g):
        return 0 <= int(g) < self.group.order and bool(self.bits[int(g)])

    def __eq__(self, other):
        if not isinstance(other, GroupSet):
            return NotImplemented
        return (self.group == other.group
                and np.array_equal(self.bits, other.bits))

    def __hash__(self):
        return hash((self.group, self.mask))

    def __le__(self, other: "GroupSet") -> bool:
        """Subset test."""
        self._check_same_group(other)
        return not np.any(self.bits & ~other.bits)

    def __or__(self, other: "GroupSet") -> "GroupSet":
        self._check_same_group(other)
        return GroupSet(self.group, self.bits | other.bits)

    def __and__(self, other: "GroupSet") -> "GroupSet":
        self._check_same_group(other)
        return GroupSet(self.group, self.bits & other.bits)

    def __sub__(self, other: "GroupSet") -> "GroupSet":
        self._check_same_group(other)
        return GroupSet(self.group, self.bits & ~other.bits)

    def complement(self) -> "GroupSet":
        return GroupSet(self.group, ~self.bits)

    def with_element(self, g: Element) -> "GroupSet":
        bits = self.bits.copy()
        bits[self.group.check_element(g)] = True
        return GroupSet(self.group, bits)

    def translate(self, g: Element) -> "GroupSet":
        """g + S."""
        g = self.group.check_element(g)
        bits = np.zeros(self.group.order, dtype=bool)
        bits[self.group.add_arrays(self.elements, g)] = True
        return GroupSet(self.group, bits)

    def negate(self) -> "GroupSet":
        """-S."""
        bits = np.zeros(self.group.order, dtype=bool)
        bits[self.group.neg_array(self.elements)] = True
        return GroupSet(self.group, bits)

    def __repr__(self):
        return "GroupSet({}, {{{}}})".format(
            self.group.spec, ",".join(str(g) for g in self))


class Subgroup(GroupSet):
    """Subgroup of a finite abelian group, with coset services.

    Parameters
    ----------
    group : FiniteAbelianGroup

    bits : array of bool, shape=[group.order]

    check : bool, default True
        Verify that the members contain zero and are closed under addition.

    Raises
    ------
    ValueError
        ``check`` is set and the members do not form a subgroup.
    """

    __slots__ = ("_coset_ids",)

    def __init__(self, group: FiniteAbelianGroup, bits: np.ndarray,
                 check: bool = True):
        super().__init__(group, bits)
        self._coset_ids = None
        if check:
            if not self.bits[0]:
                raise ValueError("Subgroup must contain zero")
            elements = self.elements
            sums = group.add_arrays(elements[:, None], elements[None, :])
            if not np.all(self.bits[sums]):
                raise ValueError("Members are not closed under addition")
        assert group.order % self.cardinality == 0, \
            "Subgroup order must divide the group order"

    @classmethod
    def from_set(cls, members: GroupSet, check: bool = True) -> "Subgroup":
        return cls(members.group, members.bits, check=check)

    @classmethod
    def trivial(cls, group: FiniteAbelianGroup) -> "Subgroup":
        bits = np.zeros(group.order, dtype=bool)
        bits[0] = True
        return cls(group, bits, check=False)

    @classmethod
    def whole(cls, group: FiniteAbelianGroup) -> "Subgroup":
        return cls(group, np.ones(group.order, dtype=bool), check=False)

    @property
    def order(self) -> int:
        return self.cardinality

    @property
    def index_in_group(self) -> int:
        return self.group.order // self.cardinality

    @property
    def coset_ids(self) -> np.ndarray:
        """Quotient map as an array: coset id of every element.

        Ids are dense in ``[0, index_in_group)`` and assigned in order of the
        smallest coset representative.
        """
        if self._coset_ids is None:
            ids = np.full(self.group.order, -1, dtype=np.int64)
            next_id = 0
            for g in range(self.group.order):
                if ids[g] < 0:
                    ids[self.group.add_arrays(self.elements, g)] = next_id
                    next_id += 1
            ids.flags.writeable = False
            self._coset_ids = ids
        return self._coset_ids

    def coset_representatives(self) -> np.ndarray:
        """Smallest element of every coset, ordered by coset id."""
        _, first = np.unique(self.coset_ids, return_index=True)
        return first

    def coset(self, g: Element) -> GroupSet:
        """g + H."""
        return GroupSet(self.group, self.coset_ids == self.coset_ids[
            self.group.check_element(g)])

    def cosets(self) -> List[GroupSet]:
        return [GroupSet(self.group, self.coset_ids == i)
                for i in range(self.index_in_group)]

    def periodize(self, subset: GroupSet) -> GroupSet:
        """S + H: union of the cosets meeting S."""
        hit = np.zeros(self.index_in_group, dtype=bool)
        hit[self.coset_ids[subset.elements]] = True
        return GroupSet(self.group, hit[self.coset_ids])

    def slices(self, subset: GroupSet) -> List[GroupSet]:
        """Nonempty intersections of S with the cosets, by coset id."""
        ids = self.coset_ids
        return [GroupSet(self.group, subset.bits & (ids == i))
                for i in np.unique(ids[subset.elements])]

    def quotient_map(self, g: Element) -> int:
        return int(self.coset_ids[self.group.check_element(g)])

    def __repr__(self):
        return "Subgroup({}, {{{}}})".format(
            self.group.spec, ",".join(str(g) for g in self))


def _join(group: FiniteAbelianGroup, subgroup: GroupSet,
          g: Element) -> np.ndarray:
    """Bits of the subgroup generated by a subgroup and one element."""
    multiples = [0]
    x = g
    while x != 0:
        multiples.append(x)
        x = group.add(x, g)
    sums = group.add_arrays(subgroup.elements[:, None],
                            np.asarray(multiples)[None, :])
    bits = np.zeros(group.order, dtype=bool)
    bits[sums.ravel()] = True
    return bits


def subgroup_generated(group: FiniteAbelianGroup,
                       gens: Iterable[Element]) -> Subgroup:
    """Smallest subgroup containing the generators.

    Parameters
    ----------
    group : FiniteAbelianGroup

    gens : iterable of Element
        Generators; empty gives the trivial subgroup.

    Returns
    -------
    Subgroup
    """
    current = Subgroup.trivial(group)
    for g in gens:
        g = group.check_element(g)
        if g not in current:
            current = Subgroup(group, _join(group, current, g), check=False)
    return current


def enumerate_subgroups(group: FiniteAbelianGroup,
                        limit: int = DEFAULT_SUBGROUP_LIMIT
                        ) -> List[Subgroup]:
    """All subgroups, each exactly once, sorted by (order, bitmask).

    Breadth-first closure: starting from the trivial subgroup, every known
    subgroup is joined with one representative of each of its nontrivial
    cosets. Every subgroup is reached because it is generated by finitely
    many elements added one at a time.

    Parameters
    ----------
    group : FiniteAbelianGroup

    limit : int, default 4096
        Largest group order accepted.

    Returns
    -------
    list of Subgroup

    Raises
    ------
    ResourceLimitError
        The group order exceeds ``limit``.
    """
    if group.order > limit:
        raise ResourceLimitError("Group order {} exceeds subgroup "
                                 "enumeration limit {}"
                                 .format(group.order, limit))
    trivial = Subgroup.trivial(group)
    found = {trivial.mask: trivial}
    frontier = [trivial]
    while frontier:
        next_frontier = []
        for subgroup in frontier:
            for g in subgroup.coset_representatives()[1:]:
                bits = _join(group, subgroup, int(g))
                candidate = Subgroup(group, bits, check=False)
                if candidate.mask not in found:
                    found[candidate.mask] = candidate
                    next_frontier.append(candidate)
        frontier = next_frontier
    logger.debug("Found %d subgroups of %s", len(found), group.spec)
    return sorted(found.values(), key=lambda k: (k.order, k.mask))


def quotient_map(group: FiniteAbelianGroup, subgroup: Subgroup,
                 g: Element) -> int:
    """Coset id of g in G/K; ids are dense and ordered by representative."""
    if subgroup.group != group:
        raise ValueError("Subgroup belongs to a different group")
    return subgroup.quotient_map(g)


def parse_element(group: FiniteAbelianGroup,
                  literal: Union[str, int, Sequence[int]]) -> Element:
    """Parse a flat index or a component tuple such as ``(3,1)``."""
    if isinstance(literal, (int, np.integer)):
        return group.check_element(literal)
    if isinstance(literal, str):
        text = literal.strip()
        if text.startswith("("):
            if not text.endswith(")"):
                raise ValueError("Malformed element literal: {!r}"
                                 .format(literal))
            parts = [p for p in text[1:-1].split(",") if p.strip()]
            return group.index([int(p) for p in parts])
        return group.check_element(int(text))
    return group.index(list(literal))

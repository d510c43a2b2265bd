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
"""Search and validation of structural witnesses.

For sets A, B and a level t, a witness is a pair A' of A and B' of B with
at most ``t - 1`` elements removed in total such that the t-popular sums of
A' and B' coincide with all of their sums and with the t-popular sums of A
and B.

The search only removes whole H-coset slices, H being the stabilizer of the
t-popular sumset of A and B. This loses nothing: if any witness exists then
its canonical form ``((A' + H) & A, (B' + H) & B)`` is one as well, and a
canonical witness is determined by the slices it drops. Candidates are
ordered by the number of removed elements, then by the removed bitmasks,
and the first valid candidate is returned, so results are reproducible.
"""

import itertools
import logging

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..exceptions import PreconditionError
from ..group import FiniteAbelianGroup, GroupSet, Subgroup
from ..sets import canonicalize, rep_profile, stabilizer
from ..theorems.thresholds import threshold_new

logger = logging.getLogger(__name__)

__all__ = [
    "CLAUSES",
    "NoWitnessFound",
    "WitnessReport",
    "exhaustive_witness_search",
    "find_witness",
    "search_witness",
    "validate_witness",
    "witness_from_dict",
]

CLAUSES = (
    "containment",
    "sumset_equality",
    "sizes",
    "small_sumset",
    "implied_bound_middle",
    "implied_bound_outer",
)
"""Witness clauses, in report order. Only the first two decide validity."""


@dataclass
class WitnessReport:
    """A candidate witness together with its clause verdicts.

    Attributes
    ----------
    group : str
        Group spec.

    t : int
        Level the witness is checked at.

    A, B : list of int
        Input sets.

    A_prime, B_prime : list of int
        Candidate subsets.

    H : list of int
        Stabilizer of the t-popular sumset of A and B.

    ell : int
        Elements removed, ``|A - A'| + |B - B'|``.

    rho : int
        Holes, ``|(A' + H) - A'| + |(B' + H) - B'|``.

    popular_sum : int
        Popular sum of A and B at level t.

    bound_middle, bound_outer : int
        ``t|A|+t|B|-t^2-(t-ell)(|H|-rho-t)`` and ``t|A|+t|B|-t|H|``.

    clauses : dict of str to bool
        Verdict of every clause in `CLAUSES`.

    canonical : bool
        Whether the subsets were put in canonical form before checking.
    """

    group: str
    t: int
    A: List[int]
    B: List[int]
    A_prime: List[int]
    B_prime: List[int]
    H: List[int]
    ell: int
    rho: int
    popular_sum: int
    bound_middle: int
    bound_outer: int
    clauses: Dict[str, bool] = field(default_factory=dict)
    canonical: bool = True

    @property
    def valid(self) -> bool:
        return self.clauses["containment"] and self.clauses["sumset_equality"]

    @property
    def all_clauses(self) -> bool:
        return all(self.clauses[name] for name in CLAUSES)

    def sets(self, group: FiniteAbelianGroup) -> Tuple[GroupSet, GroupSet]:
        """The witness subsets as `GroupSet` values."""
        return (GroupSet.from_elements(group, self.A_prime),
                GroupSet.from_elements(group, self.B_prime))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "t": self.t,
            "A": list(self.A),
            "B": list(self.B),
            "A_prime": list(self.A_prime),
            "B_prime": list(self.B_prime),
            "H": list(self.H),
            "ell": self.ell,
            "rho": self.rho,
            "popular_sum": self.popular_sum,
            "bound_middle": self.bound_middle,
            "bound_outer": self.bound_outer,
            "clauses": {name: self.clauses[name] for name in CLAUSES},
            "canonical": self.canonical,
            "valid": self.valid,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WitnessReport":
        return cls(group=data["group"], t=int(data["t"]),
                   A=list(data["A"]), B=list(data["B"]),
                   A_prime=list(data["A_prime"]),
                   B_prime=list(data["B_prime"]), H=list(data["H"]),
                   ell=int(data["ell"]), rho=int(data["rho"]),
                   popular_sum=int(data["popular_sum"]),
                   bound_middle=int(data["bound_middle"]),
                   bound_outer=int(data["bound_outer"]),
                   clauses={name: bool(data["clauses"][name])
                            for name in CLAUSES},
                   canonical=bool(data.get("canonical", True)))


@dataclass
class NoWitnessFound:
    """Outcome of a search that exhausted its candidates.

    Carries everything needed to reproduce the instance independently.
    """

    group: str
    t: int
    A_mask: int
    B_mask: int
    profile: List[int]
    max_removed: int
    search: str

    valid = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "t": self.t,
            "A_mask": hex(self.A_mask),
            "B_mask": hex(self.B_mask),
            "profile": list(self.profile),
            "max_removed": self.max_removed,
            "search": self.search,
            "valid": False,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NoWitnessFound":
        return cls(group=data["group"], t=int(data["t"]),
                   A_mask=int(data["A_mask"], 16),
                   B_mask=int(data["B_mask"], 16),
                   profile=list(data["profile"]),
                   max_removed=int(data["max_removed"]),
                   search=data["search"])


SearchResult = Union[WitnessReport, NoWitnessFound]


def witness_from_dict(data: Dict[str, Any]) -> SearchResult:
    """Inverse of ``to_dict`` for either search outcome."""
    if "A_mask" in data:
        return NoWitnessFound.from_dict(data)
    return WitnessReport.from_dict(data)


def _holes(S: GroupSet, H: Subgroup) -> int:
    return len(H.periodize(S)) - len(S)


def validate_witness(A: GroupSet, B: GroupSet, t: int, A_prime: GroupSet,
                     B_prime: GroupSet, canonical: bool = True,
                     H: Optional[Subgroup] = None) -> WitnessReport:
    """Evaluate every witness clause independently.

    Parameters
    ----------
    A, B : GroupSet

    t : int
        Level, t >= 1.

    A_prime, B_prime : GroupSet
        Subsets of A and B.

    canonical : bool, default True
        Replace the subsets by ``(A' + H) & A`` and ``(B' + H) & B`` first.

    H : Subgroup, optional
        Stabilizer of the t-popular sumset of A and B, if already known.

    Returns
    -------
    WitnessReport

    Raises
    ------
    PreconditionError
        A' is not a subset of A or B' is not a subset of B.
    """
    t = int(t)
    if t < 1:
        raise ValueError("t must be positive, got {}".format(t))
    if not (A_prime <= A and B_prime <= B):
        raise PreconditionError("Witness candidates must be subsets of A "
                                "and B")
    profile = rep_profile(A, B)
    popular = profile.popular(t)
    if H is None:
        H = stabilizer(popular)
    if canonical:
        A_prime = canonicalize(A_prime, A, H)
        B_prime = canonicalize(B_prime, B, H)
    inner = rep_profile(A_prime, B_prime)
    ell = (len(A) - len(A_prime)) + (len(B) - len(B_prime))
    rho = _holes(A_prime, H) + _holes(B_prime, H)
    total = profile.popular_sum(t)
    h = len(H)
    bound_middle = (t * len(A) + t * len(B) - t * t
                    - (t - ell) * (h - rho - t))
    bound_outer = t * len(A) + t * len(B) - t * h
    sum_prime = inner.support()
    clauses = {
        "containment": ell <= t - 1,
        "sumset_equality": (not popular.is_empty()
                            and inner.popular(t) == sum_prime
                            and sum_prime == popular),
        "sizes": len(A_prime) >= t + 1 and len(B_prime) >= t + 1,
        "small_sumset": len(sum_prime) < len(A_prime) + len(B_prime) - t,
        "implied_bound_middle": total >= bound_middle,
        "implied_bound_outer": bound_middle >= bound_outer,
    }
    return WitnessReport(
        group=A.group.spec, t=t, A=A.to_list(), B=B.to_list(),
        A_prime=A_prime.to_list(), B_prime=B_prime.to_list(),
        H=H.to_list(), ell=ell, rho=rho, popular_sum=total,
        bound_middle=bound_middle, bound_outer=bound_outer,
        clauses=clauses, canonical=canonical)


def _is_witness(A_prime: GroupSet, B_prime: GroupSet, popular: GroupSet,
                t: int) -> bool:
    if A_prime.is_empty() or B_prime.is_empty():
        return False
    inner = rep_profile(A_prime, B_prime)
    return inner.support() == popular and inner.popular(t) == popular


def _removals(pieces: Sequence[GroupSet], budget: int, empty: GroupSet):
    """Unions of pieces with total size at most budget, with their sizes."""
    results = []
    for k in range(min(len(pieces), budget) + 1):
        for combo in itertools.combinations(pieces, k):
            size = sum(len(piece) for piece in combo)
            if size > budget:
                continue
            removed = empty
            for piece in combo:
                removed = removed | piece
            results.append((size, removed))
    return results


def _candidates(A_pieces, B_pieces, budget, empty):
    """Removal pairs ordered by (total size, A mask, B mask)."""
    removals_A = _removals(A_pieces, budget, empty)
    removals_B = _removals(B_pieces, budget, empty)
    pairs = []
    for size_A, removed_A in removals_A:
        for size_B, removed_B in removals_B:
            if size_A + size_B <= budget:
                pairs.append((size_A + size_B, removed_A.mask,
                              removed_B.mask, removed_A, removed_B))
    pairs.sort(key=lambda item: item[:3])
    return pairs


def _check_search_inputs(A: GroupSet, B: GroupSet, t: int,
                         max_removed: Optional[int]):
    t = int(t)
    if t < 1:
        raise ValueError("t must be positive, got {}".format(t))
    if A.group != B.group:
        raise ValueError("Sets live in different groups")
    if max_removed is None:
        max_removed = t - 1
    if max_removed < 0:
        raise ValueError("max_removed must be nonnegative")
    profile = rep_profile(A, B)
    popular = profile.popular(t)
    if popular.is_empty():
        raise PreconditionError("The {}-popular sumset is empty".format(t))
    return t, max_removed, profile, popular


def search_witness(A: GroupSet, B: GroupSet, t: int,
                   max_removed: Optional[int] = None) -> SearchResult:
    """Slice-removal witness search without hypothesis checks.

    Parameters
    ----------
    A, B : GroupSet

    t : int
        Level, t >= 1.

    max_removed : int, optional
        Removal budget, ``t - 1`` by default.

    Returns
    -------
    WitnessReport or NoWitnessFound
        The first valid canonical witness in candidate order.

    Raises
    ------
    PreconditionError
        The t-popular sumset is empty.
    """
    t, max_removed, profile, popular = _check_search_inputs(
        A, B, t, max_removed)
    H = stabilizer(popular)
    empty = GroupSet.empty(A.group)
    candidates = _candidates(H.slices(A), H.slices(B), max_removed, empty)
    logger.debug("Witness search over %d slice removals (|H|=%d, t=%d)",
                 len(candidates), len(H), t)
    for _, _, _, removed_A, removed_B in candidates:
        A_prime = A - removed_A
        B_prime = B - removed_B
        if _is_witness(A_prime, B_prime, popular, t):
            return validate_witness(A, B, t, A_prime, B_prime, H=H)
    return NoWitnessFound(group=A.group.spec, t=t, A_mask=A.mask,
                          B_mask=B.mask, profile=profile.to_list(),
                          max_removed=max_removed, search="slices")


def exhaustive_witness_search(A: GroupSet, B: GroupSet, t: int,
                              max_removed: Optional[int] = None
                              ) -> SearchResult:
    """Element-removal witness search, used as an oracle.

    Tries every removal of at most ``max_removed`` single elements, in the
    same order as `search_witness`. The witness is reported as found,
    without canonicalization.

    Returns
    -------
    WitnessReport or NoWitnessFound
    """
    t, max_removed, profile, popular = _check_search_inputs(
        A, B, t, max_removed)
    group = A.group
    singles_A = [GroupSet.from_elements(group, [a]) for a in A]
    singles_B = [GroupSet.from_elements(group, [b]) for b in B]
    candidates = _candidates(singles_A, singles_B, max_removed,
                             GroupSet.empty(group))
    for _, _, _, removed_A, removed_B in candidates:
        A_prime = A - removed_A
        B_prime = B - removed_B
        if _is_witness(A_prime, B_prime, popular, t):
            return validate_witness(A, B, t, A_prime, B_prime,
                                    canonical=False)
    return NoWitnessFound(group=group.spec, t=t, A_mask=A.mask,
                          B_mask=B.mask, profile=profile.to_list(),
                          max_removed=max_removed, search="exhaustive")


def find_witness(A: GroupSet, B: GroupSet, t: int) -> SearchResult:
    """Witness search under the structure theorem's hypothesis.

    Parameters
    ----------
    A, B : GroupSet
        Both of size at least t.

    t : int
        Level, t >= 2.

    Returns
    -------
    WitnessReport or NoWitnessFound
        A `NoWitnessFound` here contradicts the structure theorem and must
        be reported as a finding.

    Raises
    ------
    PreconditionError
        |A| or |B| is below t, the popular sum is not below
        ``t|A| + t|B| + threshold_new(t)``, or the t-popular sumset is
        empty.
    """
    t = int(t)
    if t < 2:
        raise ValueError("find_witness needs t >= 2, got {}".format(t))
    if len(A) < t or len(B) < t:
        raise PreconditionError("Need |A|, |B| >= t, got {}, {} and t={}"
                                .format(len(A), len(B), t))
    total = rep_profile(A, B).popular_sum(t)
    bound = t * len(A) + t * len(B) + threshold_new(t)
    if not total < bound:
        raise PreconditionError("Popular sum {} is not below {}"
                                .format(total, bound))
    result = search_witness(A, B, t)
    if not result.valid:
        logger.warning("No witness for %s A=%#x B=%#x t=%d",
                       A.group.spec, A.mask, B.mask, t)
    return result


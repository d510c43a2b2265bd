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
"""Restricted sumsets under an injective deleter map.

For an injective map tau on A, the restricted sumset keeps the sums a + b
with b != tau(a). When |A| + |B| >= |G| + 1 two lower bounds on its size
are checked: ``|G| - sqrt(|G|) - 1/2`` (strict) and
``|G| + (1 - 4 sqrt(3M)) / 3`` with M = min(|A|, |B|). The second is the
better one when M is below ``3|G|/16 + 5 sqrt(|G|)/16 + 25/192``.

Square roots never enter a verdict: both bounds are decided by integer
comparisons of squares.
"""

import logging
import math

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np
from sklearn.utils import check_random_state

from .group import GroupSet
from .sets import popular_sum, rep_profile, sumset
from .theorems.reports import ANCHORS, SCHEMA_VERSION, Verdict
from .utils.utils import ceil_div, ceil_sqrt, number_or_float

logger = logging.getLogger(__name__)

__all__ = [
    "RestrictedReport",
    "TauMap",
    "both_cases_level",
    "check_restricted",
    "crossover_threshold",
    "lev_bound",
    "lev_holds",
    "new_bound",
    "new_bound_holds",
    "restricted_sumset",
    "tau_size",
]


class TauMap:
    """Injective map from A into the group.

    Parameters
    ----------
    domain : GroupSet
        The set A.

    images : array of int, shape=[len(domain)]
        ``images[i]`` is the image of the i-th smallest member of A.

    Raises
    ------
    ValueError
        Wrong number of images, images out of range, or two equal images.
    """

    def __init__(self, domain: GroupSet, images):
        images = np.array(images, dtype=np.int64).ravel()
        if images.shape[0] != len(domain):
            raise ValueError("Expected {} images, got {}"
                             .format(len(domain), images.shape[0]))
        if images.size and (images.min() < 0
                            or images.max() >= domain.group.order):
            raise ValueError("Images out of range for {}"
                             .format(domain.group.spec))
        if np.unique(images).size != images.size:
            raise ValueError("tau must be injective")
        images.flags.writeable = False
        self.domain = domain
        self.images = images

    @classmethod
    def identity(cls, domain: GroupSet) -> "TauMap":
        """tau(a) = a."""
        return cls(domain, domain.elements)

    @classmethod
    def from_pairs(cls, domain: GroupSet,
                   pairs: Iterable[Tuple[int, int]]) -> "TauMap":
        """Build from (a, tau(a)) pairs covering every a in the domain."""
        mapping = {}
        for a, image in pairs:
            a = domain.group.check_element(a)
            if a in mapping:
                raise ValueError("Duplicate pair for {}".format(a))
            mapping[a] = domain.group.check_element(image)
        if set(mapping) != set(domain.to_list()):
            raise ValueError("Pairs must cover exactly the members of A")
        return cls(domain, [mapping[a] for a in domain])

    @classmethod
    def random(cls, domain: GroupSet, random_state=None) -> "TauMap":
        """Uniformly random injective map.

        Parameters
        ----------
        domain : GroupSet

        random_state : `numpy.random.RandomState`, int or None
            Passed to `sklearn.utils.check_random_state`.
        """
        random_state = check_random_state(random_state)
        images = random_state.permutation(domain.group.order)[:len(domain)]
        return cls(domain, images)

    def pairs(self) -> List[Tuple[int, int]]:
        return [(int(a), int(image))
                for a, image in zip(self.domain.elements, self.images)]

    def __call__(self, a: int) -> int:
        index = int(np.searchsorted(self.domain.elements, a))
        if index >= len(self.domain) or self.domain.elements[index] != a:
            raise ValueError("{} is not in the domain".format(a))
        return int(self.images[index])


def _check_tau(A: GroupSet, tau: TauMap) -> None:
    if tau.domain != A:
        raise ValueError("tau is defined on a different set")


def restricted_sumset(A: GroupSet, B: GroupSet, tau: TauMap) -> GroupSet:
    """Sums a + b over pairs with b != tau(a)."""
    _check_tau(A, tau)
    if A.group != B.group:
        raise ValueError("Sets live in different groups")
    group = A.group
    if A.is_empty() or B.is_empty():
        return GroupSet.empty(group)
    sums = group.add_arrays(A.elements[:, None], B.elements[None, :])
    kept = B.elements[None, :] != tau.images[:, None]
    bits = np.zeros(group.order, dtype=bool)
    bits[sums[kept]] = True
    return GroupSet(group, bits)


def tau_size(A: GroupSet, B: GroupSet, tau: TauMap) -> int:
    """Number of pairs (a, b) in A x B with tau(a) = b."""
    _check_tau(A, tau)
    return int(np.count_nonzero(B.bits[tau.images]))


def lev_bound(n: int) -> float:
    """n - sqrt(n) - 1/2, a strict lower bound."""
    if n < 1:
        raise ValueError("n must be positive")
    return n - math.sqrt(n) - 0.5


def new_bound(n: int, M: int) -> float:
    """n + (1 - 4 sqrt(3M)) / 3, a non-strict lower bound."""
    if n < 1 or M < 1:
        raise ValueError("n and M must be positive")
    return n + (1 - 4 * math.sqrt(3 * M)) / 3


def crossover_threshold(n: int) -> float:
    """3n/16 + 5 sqrt(n)/16 + 25/192."""
    if n < 1:
        raise ValueError("n must be positive")
    return 3 * n / 16 + 5 * math.sqrt(n) / 16 + 25 / 192


def lev_holds(size: int, n: int) -> bool:
    """size > n - sqrt(n) - 1/2, decided exactly.

    Equivalent to 2 sqrt(n) > d with d = 2(n - size) - 1.
    """
    d = 2 * (n - size) - 1
    return d < 0 or 4 * n > d * d


def new_bound_holds(size: int, n: int, M: int) -> bool:
    """size >= n + (1 - 4 sqrt(3M)) / 3, decided exactly.

    Equivalent to 4 sqrt(3M) >= d with d = 3n + 1 - 3 size.
    """
    d = 3 * n + 1 - 3 * size
    return d <= 0 or 48 * M >= d * d


def both_cases_level(M: int) -> int:
    """ceil(sqrt(3M) / 2), the level minimizing the intermediate bound."""
    return ceil_div(ceil_sqrt(3 * M), 2)


def _both_cases_bound(n: int, M: int, t: int) -> Fraction:
    """n - 4t/3 - M/t + 5/3."""
    return n - Fraction(4 * t, 3) - Fraction(M, t) + Fraction(5, 3)


@dataclass
class RestrictedReport:
    """Restricted sumset of one (A, B, tau) instance and both bounds.

    Attributes
    ----------
    group : str

    A, B : list of int

    tau : list of (int, int)
        The (a, tau(a)) pairs.

    restricted : list of int
        Members of the restricted sumset.

    size : int

    tau_size : int

    M : int
        min(|A|, |B|).

    lev_rhs, new_rhs, crossover : float

    lev_verdict, new_verdict : Verdict

    details : dict
        Intermediate checks: the counting inequality
        ``t|restricted| + tau_size >= popular_sum`` and the bound
        ``n - 4t/3 - M/t + 5/3`` at every level t in [2, M].
    """

    group: str
    A: List[int]
    B: List[int]
    tau: List[Tuple[int, int]]
    restricted: List[int]
    size: int
    tau_size: int
    M: int
    lev_rhs: float
    new_rhs: float
    crossover: float
    lev_verdict: Verdict
    new_verdict: Verdict
    details: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None

    @property
    def verdict(self) -> Verdict:
        if Verdict.HYPOTHESIS_NOT_MET in (self.lev_verdict, self.new_verdict):
            return Verdict.HYPOTHESIS_NOT_MET
        if self.lev_verdict is Verdict.HOLDS and \
                self.new_verdict is Verdict.HOLDS:
            return Verdict.HOLDS
        return Verdict.VIOLATED

    def to_dict(self) -> Dict[str, Any]:
        verdict = self.verdict
        return {
            "schema": SCHEMA_VERSION,
            "theorem": "restricted",
            "group": self.group,
            "A": list(self.A),
            "B": list(self.B),
            "t": None,
            "lhs": self.size,
            "rhs": self.new_rhs,
            "verdict": verdict.value,
            "anchor": ANCHORS["restricted"],
            "tau": [list(pair) for pair in self.tau],
            "restricted": list(self.restricted),
            "tau_size": self.tau_size,
            "M": self.M,
            "lev_rhs": self.lev_rhs,
            "new_rhs": self.new_rhs,
            "crossover": self.crossover,
            "lev_verdict": self.lev_verdict.value,
            "new_verdict": self.new_verdict.value,
            "details": dict(self.details),
            "witness": None,
            "finding_kind": ("violation" if verdict is Verdict.VIOLATED
                             else None),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RestrictedReport":
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError("Unsupported report schema: {!r}"
                             .format(data.get("schema")))
        return cls(group=data["group"], A=list(data["A"]),
                   B=list(data["B"]),
                   tau=[(int(a), int(b)) for a, b in data["tau"]],
                   restricted=list(data["restricted"]),
                   size=int(data["size"] if "size" in data
                            else data["lhs"]),
                   tau_size=int(data["tau_size"]), M=int(data["M"]),
                   lev_rhs=data["lev_rhs"], new_rhs=data["new_rhs"],
                   crossover=data["crossover"],
                   lev_verdict=Verdict(data["lev_verdict"]),
                   new_verdict=Verdict(data["new_verdict"]),
                   details=dict(data.get("details") or {}),
                   seed=data.get("seed"))


def _both_cases(A, B, n, M, size, ts):
    """Intermediate bound and counting inequality at every level."""
    levels = {}
    for t in range(2, M + 1):
        bound = _both_cases_bound(n, M, t)
        total = popular_sum(A, B, t)
        levels[str(t)] = {
            "bound": number_or_float(bound),
            "holds": size >= bound,
            "counting_holds": t * size + ts >= total,
        }
    return levels


def check_restricted(A: GroupSet, B: GroupSet, tau: TauMap,
                     seed: Optional[int] = None) -> RestrictedReport:
    """Evaluate both restricted-sumset bounds on one instance.

    Parameters
    ----------
    A, B : GroupSet

    tau : TauMap
        Injective map on A.

    seed : int, optional
        Recorded in the report when tau was drawn at random.

    Returns
    -------
    RestrictedReport
        Verdicts are hypothesis-not-met when |A| + |B| <= |G|.
    """
    _check_tau(A, tau)
    group = A.group
    n = group.order
    restricted = restricted_sumset(A, B, tau)
    size = len(restricted)
    ts = tau_size(A, B, tau)
    M = min(len(A), len(B))
    assert ts <= M
    report = RestrictedReport(
        group=group.spec, A=A.to_list(), B=B.to_list(), tau=tau.pairs(),
        restricted=restricted.to_list(), size=size, tau_size=ts, M=M,
        lev_rhs=lev_bound(n), new_rhs=new_bound(n, max(M, 1)),
        crossover=crossover_threshold(n),
        lev_verdict=Verdict.HYPOTHESIS_NOT_MET,
        new_verdict=Verdict.HYPOTHESIS_NOT_MET, seed=seed)
    if len(A) + len(B) < n + 1:
        return report
    assert sumset(A, B).cardinality == n, \
        "|A| + |B| > |G| forces A + B = G"
    report.lev_verdict = Verdict.of(lev_holds(size, n))
    report.new_verdict = Verdict.of(new_bound_holds(size, n, M))
    details = {"new_better": M < crossover_threshold(n)}
    if M == 1:
        details["single_element_holds"] = size >= n - 1
    else:
        t = both_cases_level(M)
        details["level"] = t
        if 2 <= t <= M:
            bound = _both_cases_bound(n, M, t)
            details["level_bound"] = number_or_float(bound)
            details["level_holds"] = size >= bound
        details["levels"] = _both_cases(A, B, n, M, size, ts)
    removed = len(sumset(A, B)) - size
    lost = int(np.count_nonzero(
        (rep_profile(A, B).counts > 0) & ~restricted.bits))
    details["lost_elements"] = lost
    assert removed == lost <= ts
    report.details = details
    if report.verdict is Verdict.VIOLATED:
        logger.warning("Restricted bound violated on %s A=%#x B=%#x",
                       group.spec, A.mask, B.mask)
    return report

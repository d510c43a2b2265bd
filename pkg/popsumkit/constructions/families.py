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
"""Families of pairs with popular sums below t|A| + t|B| - t^2.

Three building blocks place A and B as unions of H-cosets along an
arithmetic progression in G/H: the pair A, -A, pairs with small ordinary
sumset and a large period, and two progressions of cosets with a common
difference. Two recursive processes swap the zero coset of a building
block for a smaller pair living inside it.

Every generator returns a `ConstructionSpec` holding the pair, the level t
and the value of the popular sum predicted by the family's formula, next to
the value computed directly.
"""

import logging

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..exceptions import PreconditionError
from ..group import FiniteAbelianGroup, GroupSet, Subgroup
from ..sets import popular_sum, stabilizer, sumset

logger = logging.getLogger(__name__)

__all__ = [
    "ConstructionSpec",
    "FAMILIES",
    "gen_ap_cosets",
    "gen_kneser_pair",
    "gen_minus_self",
    "gen_recursive_1",
    "gen_recursive_2",
]

FAMILIES = ("minus_self", "kneser_pair", "ap_cosets", "recursive_1",
            "recursive_2")


@dataclass
class ConstructionSpec:
    """A generated instance and its predicted popular sum.

    Attributes
    ----------
    family : str
        One of `FAMILIES`.

    group : str
        Group spec.

    H : list of int
        Subgroup the cosets are taken from (K for the recursive families).

    params : dict
        Family parameters (s, u, coset counts, inner sets).

    A, B : list of int

    t : int

    predicted_sum : int
        Value of the family's formula.

    direct_sum : int
        Popular sum computed from the profile.

    notes : list of dict
        Formula discrepancies and other remarks; each note has a ``kind``.
    """

    family: str
    group: str
    H: List[int]
    params: Dict[str, Any]
    A: List[int]
    B: List[int]
    t: int
    predicted_sum: int
    direct_sum: int
    notes: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return self.predicted_sum == self.direct_sum

    def sets(self, group: Optional[FiniteAbelianGroup] = None):
        """The pair as `GroupSet` values."""
        if group is None:
            group = FiniteAbelianGroup.from_spec(self.group)
        return (GroupSet.from_elements(group, self.A),
                GroupSet.from_elements(group, self.B))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "group": self.group,
            "H": list(self.H),
            "params": dict(self.params),
            "A": list(self.A),
            "B": list(self.B),
            "t": self.t,
            "predicted_sum": self.predicted_sum,
            "direct_sum": self.direct_sum,
            "match": self.match,
            "notes": [dict(note) for note in self.notes],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ConstructionSpec":
        if data["family"] not in FAMILIES:
            raise ValueError("Unknown family {!r}".format(data["family"]))
        return cls(family=data["family"], group=data["group"],
                   H=list(data["H"]), params=dict(data["params"]),
                   A=list(data["A"]), B=list(data["B"]), t=int(data["t"]),
                   predicted_sum=int(data["predicted_sum"]),
                   direct_sum=int(data["direct_sum"]),
                   notes=[dict(note) for note in data.get("notes", [])])


def _quotient_order(G: FiniteAbelianGroup, H: Subgroup, g: int) -> int:
    """Order of g + H in G/H."""
    k, x = 1, g
    while x not in H:
        x = G.add(x, g)
        k += 1
    return k


def _step_candidates(G: FiniteAbelianGroup, H: Subgroup, min_order: int):
    """Coset representatives g with order of g + H at least min_order.

    Largest quotient order first, then smallest representative.
    """
    orders = [(int(g), _quotient_order(G, H, int(g)))
              for g in H.coset_representatives()]
    fitting = [(g, order) for g, order in orders if order >= min_order]
    fitting.sort(key=lambda item: (-item[1], item[0]))
    return fitting


def _coset_progression(G: FiniteAbelianGroup, H: Subgroup, g: int,
                       count: int) -> GroupSet:
    """Union of the cosets k g + H for k in [0, count)."""
    members = GroupSet.empty(G)
    for k in range(count):
        members = members | H.coset(G.multiple(k, g))
    return members


def _check_subgroup(G: FiniteAbelianGroup, H: Subgroup) -> None:
    if H.group != G:
        raise PreconditionError("Subgroup belongs to {}, not {}"
                                .format(H.group.spec, G.spec))


def _spec(family, G, H, params, A, B, t, predicted, notes=None):
    direct = popular_sum(A, B, t)
    spec = ConstructionSpec(family=family, group=G.spec, H=H.to_list(),
                            params=params, A=A.to_list(), B=B.to_list(),
                            t=t, predicted_sum=int(predicted),
                            direct_sum=direct, notes=notes or [])
    if not spec.match:
        logger.warning("%s on %s: predicted %d, direct %d", family, G.spec,
                       spec.predicted_sum, direct)
    return spec


def gen_minus_self(G: FiniteAbelianGroup, H: Subgroup, s: int,
                   u: int) -> ConstructionSpec:
    """A union of s+1 consecutive H-cosets and B = -A.

    Parameters
    ----------
    G : FiniteAbelianGroup

    H : Subgroup

    s : int
        s >= 1.

    u : int
        ``1 <= u <= |H| - 1``; the level is t = s|H| + u.

    Returns
    -------
    ConstructionSpec
        Predicted popular sum ``|A|^2 - (|H| - u)|H|``. A note of kind
        ``formula_discrepancy`` records the alternative closed form
        ``t|A| + t|B| - u(|H| - u)``, which exceeds the direct value by
        exactly t^2.

    Raises
    ------
    PreconditionError
        Parameters out of range, or no step g makes the 2s+1 cosets of
        A - A distinct with the stabilizers of A and A - A equal to H.
    """
    _check_subgroup(G, H)
    h = len(H)
    if s < 1 or not 1 <= u <= h - 1:
        raise PreconditionError("minus_self needs s >= 1 and 1 <= u <= "
                                "|H|-1, got s={} u={} |H|={}"
                                .format(s, u, h))
    t = s * h + u
    for g, _ in _step_candidates(G, H, 2 * s + 1):
        A = _coset_progression(G, H, g, s + 1)
        if stabilizer(A) != H:
            continue
        if stabilizer(sumset(A, A.negate())) != H:
            continue
        B = A.negate()
        predicted = len(A) ** 2 - (h - u) * h
        alternative = t * len(A) + t * len(B) - u * (h - u)
        direct = popular_sum(A, B, t)
        notes = [{
            "kind": "formula_discrepancy",
            "alternative_form": alternative,
            "direct": direct,
            "difference": alternative - direct,
            "t_squared": t * t,
        }]
        logger.info("minus_self on %s: direct %d, alternative form %d",
                    G.spec, direct, alternative)
        return _spec("minus_self", G, H, {"s": s, "u": u, "step": g},
                     A, B, t, predicted, notes)
    raise PreconditionError("No coset progression of length {} with period "
                            "exactly H in {}".format(2 * s + 1, G.spec))


def gen_kneser_pair(G: FiniteAbelianGroup, H: Subgroup, t: int, nA: int,
                    nB: int) -> ConstructionSpec:
    """Progressions of nA and nB H-cosets with |H| > t.

    Every element of A + B has at least |H| > t representations, so the
    popular sum is ``t|A+B| = t|A| + t|B| - t|H|``.

    Raises
    ------
    PreconditionError
        |H| <= t, a count below 1, or no step with nA + nB - 1 distinct
        cosets.
    """
    _check_subgroup(G, H)
    h = len(H)
    if t < 1 or h <= t:
        raise PreconditionError("kneser_pair needs |H| > t >= 1, got "
                                "|H|={} t={}".format(h, t))
    if nA < 1 or nB < 1:
        raise PreconditionError("Coset counts must be positive")
    steps = _step_candidates(G, H, nA + nB - 1)
    if not steps:
        raise PreconditionError("{} has no coset progression of length {}"
                                .format(G.spec, nA + nB - 1))
    g = steps[0][0]
    A = _coset_progression(G, H, g, nA)
    B = _coset_progression(G, H, g, nB)
    predicted = t * len(A) + t * len(B) - t * h
    return _spec("kneser_pair", G, H,
                 {"t": t, "nA": nA, "nB": nB, "step": g}, A, B, t,
                 predicted)


def gen_ap_cosets(G: FiniteAbelianGroup, H: Subgroup, s: int, u: int,
                  nA: int, nB: int) -> ConstructionSpec:
    """Progressions of nA and nB H-cosets with common difference.

    With t = s|H| + u the popular sum is
    ``t|A| + t|B| - (2s+1)t|H| + s(s+1)|H|^2``, which equals
    ``t|A| + t|B| - t^2 - u(|H| - u)``; both forms are computed and must
    agree.

    Raises
    ------
    PreconditionError
        ``u`` outside ``[1, |H|-1]``, s < 0, a count below s+1, or no
        injective progression of nA + nB - 1 cosets.
    """
    _check_subgroup(G, H)
    h = len(H)
    if s < 0 or not 1 <= u <= h - 1:
        raise PreconditionError("ap_cosets needs s >= 0 and 1 <= u <= "
                                "|H|-1, got s={} u={} |H|={}"
                                .format(s, u, h))
    if nA < s + 1 or nB < s + 1:
        raise PreconditionError("Coset counts must be at least s+1={}"
                                .format(s + 1))
    steps = _step_candidates(G, H, nA + nB - 1)
    if not steps:
        raise PreconditionError("{} has no coset progression of length {}"
                                .format(G.spec, nA + nB - 1))
    g = steps[0][0]
    t = s * h + u
    A = _coset_progression(G, H, g, nA)
    B = _coset_progression(G, H, g, nB)
    predicted = t * len(A) + t * len(B) - t * t - u * (h - u)
    intermediate = (t * len(A) + t * len(B) - (2 * s + 1) * t * h
                    + s * (s + 1) * h * h)
    assert predicted == intermediate
    return _spec("ap_cosets", G, H,
                 {"s": s, "u": u, "nA": nA, "nB": nB, "step": g}, A, B, t,
                 predicted)


def _check_inner(A0: GroupSet, B0: GroupSet, K: Subgroup, level: int):
    if not (A0 <= K and B0 <= K):
        raise PreconditionError("Inner sets must lie in K")
    if len(A0) < level or len(B0) < level:
        raise PreconditionError("Inner sets need at least {} elements"
                                .format(level))
    inner = popular_sum(A0, B0, level)
    bound = level * len(A0) + level * len(B0) - level * level
    if not inner < bound:
        raise PreconditionError("Inner pair has popular sum {} at level {}, "
                                "not below {}".format(inner, level, bound))
    return inner


def _replace_zero_coset(S: GroupSet, K: Subgroup,
                        inner: GroupSet) -> GroupSet:
    return (S - K) | inner


def gen_recursive_1(G: FiniteAbelianGroup, K: Subgroup, s: int, u: int,
                    A0: GroupSet, B0: GroupSet) -> ConstructionSpec:
    """Replace K inside a `gen_minus_self` pair by an inner pair.

    The base pair contains K in both sets. With t = s|K| + u and the inner
    pair below its own threshold at level u, the prediction is
    ``t|A*| + t|B*| - t^2 - u|A0| - u|B0| + u^2 + S_u(A0, B0)``, S_u
    being the inner popular sum at level u.

    Raises
    ------
    PreconditionError
        Base parameters invalid, inner sets outside K or too small, or the
        inner pair not below ``u|A0| + u|B0| - u^2``.
    """
    base = gen_minus_self(G, K, s, u)
    A, B = base.sets(G)
    assert K <= A and K <= B
    inner = _check_inner(A0, B0, K, u)
    t = base.t
    A_star = _replace_zero_coset(A, K, A0)
    B_star = _replace_zero_coset(B, K, B0)
    predicted = (t * len(A_star) + t * len(B_star) - t * t
                 - u * len(A0) - u * len(B0) + u * u + inner)
    assert predicted < t * len(A_star) + t * len(B_star) - t * t
    params = {"s": s, "u": u, "A0": A0.to_list(), "B0": B0.to_list(),
              "step": base.params["step"]}
    return _spec("recursive_1", G, K, params, A_star, B_star, t, predicted)


def _unique_expression_at_zero(A: GroupSet, B: GroupSet,
                               K: Subgroup) -> bool:
    """Whether the zero coset has exactly one coset-level expression."""
    reps = K.coset_representatives()
    cosets_A = np.unique(K.coset_ids[A.elements])
    cosets_B = np.unique(K.coset_ids[B.elements])
    sums = A.group.add_arrays(reps[cosets_A][:, None],
                              reps[cosets_B][None, :])
    return int(np.count_nonzero(K.coset_ids[sums] == 0)) == 1


def gen_recursive_2(G: FiniteAbelianGroup, K: Subgroup, t: int, nA: int,
                    nB: int, A0: GroupSet, B0: GroupSet) -> ConstructionSpec:
    """Replace K inside a `gen_kneser_pair` pair by an inner pair.

    The base pair has period K for A, B and A + B, a small sumset and the
    zero coset expressed uniquely at the coset level. The prediction is
    ``t(|A*| - |A0|) + t(|B*| - |B0|) + S_t(A0, B0)``.

    Raises
    ------
    PreconditionError
        Base parameters invalid, the base periods differ from K, inner
        sets outside K or too small, or the inner pair not below
        ``t|A0| + t|B0| - t^2``.
    """
    base = gen_kneser_pair(G, K, t, nA, nB)
    A, B = base.sets(G)
    S = sumset(A, B)
    if not (stabilizer(A) == K and stabilizer(B) == K
            and stabilizer(S) == K):
        raise PreconditionError("Base pair periods differ from K; use "
                                "fewer cosets")
    assert len(S) < len(A) + len(B) - 1
    assert K <= A and K <= B
    assert _unique_expression_at_zero(A, B, K)
    inner = _check_inner(A0, B0, K, t)
    A_star = _replace_zero_coset(A, K, A0)
    B_star = _replace_zero_coset(B, K, B0)
    predicted = (t * (len(A_star) - len(A0)) + t * (len(B_star) - len(B0))
                 + inner)
    assert predicted < t * len(A_star) + t * len(B_star) - t * t
    params = {"t": t, "nA": nA, "nB": nB, "A0": A0.to_list(),
              "B0": B0.to_list(), "step": base.params["step"]}
    return _spec("recursive_2", G, K, params, A_star, B_star, t, predicted)

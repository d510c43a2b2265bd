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
"""Instance checkers for sumset and popular-sum lower bounds.

Every checker computes both sides exactly and compares them in integer or
rational arithmetic. A failed hypothesis is a verdict, not an exception;
exceptions are reserved for inputs the statement does not apply to at all,
such as a Pollard check outside a cyclic group of prime order.
"""

import functools
import logging

from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np

from ..exceptions import PreconditionError
from ..group import (FiniteAbelianGroup, GroupSet, Subgroup,
                     enumerate_subgroups)
from ..sets import rep_profile, stabilizer, sumset
from ..witness.search import (NoWitnessFound, WitnessReport,
                              exhaustive_witness_search, search_witness,
                              validate_witness)
from .reports import (BoundReport, ConjectureParams, Verdict, make_report)
from .thresholds import threshold_new, threshold_old

logger = logging.getLogger(__name__)

__all__ = [
    "check_cauchy_davenport",
    "check_conjecture",
    "check_hamidoune_serra",
    "check_kneser",
    "check_multiplicity",
    "check_pigeonhole",
    "check_pollard",
    "check_pollard_extended",
    "check_theorem_new",
    "check_theorem_old",
    "max_coset_subgroup",
]

WitnessInput = Union[WitnessReport, NoWitnessFound,
                     Tuple[GroupSet, GroupSet], None]


def _prime_order(A: GroupSet, B: GroupSet) -> int:
    if A.group != B.group:
        raise ValueError("Sets live in different groups")
    if not A.group.is_cyclic_prime():
        raise PreconditionError("Statement needs a cyclic group of prime "
                                "order, got {}".format(A.group.spec))
    return A.group.order


def _check_t(t) -> int:
    t = int(t)
    if t < 1:
        raise ValueError("t must be positive, got {}".format(t))
    return t


def check_pigeonhole(A: GroupSet, B: GroupSet) -> BoundReport:
    """Every element has at least |A| + |B| - |G| representations."""
    profile = rep_profile(A, B)
    lhs = int(profile.counts.min())
    rhs = len(A) + len(B) - A.group.order
    return make_report("pigeonhole", A, B, None, lhs, rhs,
                       Verdict.of(lhs >= rhs),
                       argmin=int(np.argmin(profile.counts)))


def check_multiplicity(A: GroupSet, B: GroupSet) -> BoundReport:
    """Every element of A + B has at least |A| + |B| - |A+B| representations.
    """
    if A.is_empty() or B.is_empty():
        return make_report("multiplicity", A, B, None, None, None,
                           Verdict.HYPOTHESIS_NOT_MET)
    profile = rep_profile(A, B)
    support = profile.support()
    lhs = int(profile.counts[support.elements].min())
    rhs = len(A) + len(B) - len(support)
    return make_report("multiplicity", A, B, None, lhs, rhs,
                       Verdict.of(lhs >= rhs))


def check_cauchy_davenport(A: GroupSet, B: GroupSet) -> BoundReport:
    """|A+B| >= min(p, |A|+|B|-1) in a cyclic group of prime order p.

    Raises
    ------
    PreconditionError
        The group is not cyclic of prime order.
    """
    p = _prime_order(A, B)
    if A.is_empty() or B.is_empty():
        return make_report("cd", A, B, None, None, None,
                           Verdict.HYPOTHESIS_NOT_MET)
    lhs = len(sumset(A, B))
    rhs = min(p, len(A) + len(B) - 1)
    return make_report("cd", A, B, None, lhs, rhs, Verdict.of(lhs >= rhs))


def check_kneser(A: GroupSet, B: GroupSet) -> BoundReport:
    """|A+B| >= |A+H| + |B+H| - |H| with H the stabilizer of A+B.

    The weaker form |A+B| >= |A| + |B| - |H| is reported in the details.
    """
    if A.is_empty() or B.is_empty():
        return make_report("kneser", A, B, None, None, None,
                           Verdict.HYPOTHESIS_NOT_MET)
    S = sumset(A, B)
    H = stabilizer(S)
    lhs = len(S)
    rhs = len(H.periodize(A)) + len(H.periodize(B)) - len(H)
    weak_rhs = len(A) + len(B) - len(H)
    return make_report("kneser", A, B, None, lhs, rhs,
                       Verdict.of(lhs >= rhs), subgroup=H,
                       weak_rhs=weak_rhs, weak_holds=lhs >= weak_rhs)


def check_pollard(A: GroupSet, B: GroupSet, t: int) -> BoundReport:
    """Popular sum >= min(tp, t|A| + t|B| - t^2) for |A|, |B| >= t.

    Raises
    ------
    PreconditionError
        The group is not cyclic of prime order.
    """
    p = _prime_order(A, B)
    t = _check_t(t)
    lhs = rep_profile(A, B).popular_sum(t)
    rhs = min(t * p, t * len(A) + t * len(B) - t * t)
    if len(A) < t or len(B) < t:
        return make_report("pollard", A, B, t, lhs, rhs,
                           Verdict.HYPOTHESIS_NOT_MET)
    return make_report("pollard", A, B, t, lhs, rhs, Verdict.of(lhs >= rhs))


def check_pollard_extended(A: GroupSet, B: GroupSet, t: int) -> BoundReport:
    """Pollard's bound without size hypothesis, |A||B| added to the minimum.
    """
    p = _prime_order(A, B)
    t = _check_t(t)
    lhs = rep_profile(A, B).popular_sum(t)
    rhs = min(t * p, len(A) * len(B), t * len(A) + t * len(B) - t * t)
    return make_report("pollard_ext", A, B, t, lhs, rhs,
                       Verdict.of(lhs >= rhs))


@functools.lru_cache(maxsize=32)
def _subgroups_largest_first(group: FiniteAbelianGroup
                             ) -> Tuple[Subgroup, ...]:
    return tuple(sorted(enumerate_subgroups(group),
                        key=lambda k: (-k.order, k.mask)))


def max_coset_subgroup(S: GroupSet) -> Tuple[Subgroup, int]:
    """Largest subgroup H with a coset g + H inside S.

    Ties between subgroups of equal order go to the smallest bitmask; the
    returned g is the smallest element of the first fitting coset.

    Parameters
    ----------
    S : GroupSet
        Nonempty.

    Returns
    -------
    H : Subgroup

    g : int

    Raises
    ------
    ValueError
        S is empty.
    """
    if S.is_empty():
        raise ValueError("max_coset_subgroup needs a nonempty set")
    for H in _subgroups_largest_first(S.group):
        counts = np.bincount(H.coset_ids[S.elements],
                             minlength=H.index_in_group)
        full = np.flatnonzero(counts == H.order)
        if full.size:
            g = int(H.coset_representatives()[full[0]])
            return H, g
    raise AssertionError("The trivial subgroup always fits")


def check_hamidoune_serra(A: GroupSet, B: GroupSet, t: int) -> BoundReport:
    """Popular sum >= t|A| + t|B| - t^2 - |H|^2/4.

    H is the largest subgroup with a coset inside A + B.
    """
    t = _check_t(t)
    profile = rep_profile(A, B)
    lhs = profile.popular_sum(t)
    if len(A) < t or len(B) < t:
        return make_report("hs", A, B, t, lhs, None,
                           Verdict.HYPOTHESIS_NOT_MET)
    H, g = max_coset_subgroup(profile.support())
    h = len(H)
    rhs = Fraction(4 * (t * len(A) + t * len(B) - t * t) - h * h, 4)
    return make_report("hs", A, B, t, lhs, rhs, Verdict.of(lhs >= rhs),
                       subgroup=H, coset_element=g)


def _resolve_witness(A, B, t, witness: WitnessInput, H: Subgroup):
    if isinstance(witness, NoWitnessFound):
        return witness
    if isinstance(witness, WitnessReport):
        A_prime, B_prime = witness.sets(A.group)
        return validate_witness(A, B, t, A_prime, B_prime, H=H)
    A_prime, B_prime = witness
    return validate_witness(A, B, t, A_prime, B_prime, H=H)


def _check_structure(theorem: str, A: GroupSet, B: GroupSet, t: int,
                     threshold: int, witness: WitnessInput) -> BoundReport:
    profile = rep_profile(A, B)
    total = profile.popular_sum(t)
    hypothesis_rhs = t * len(A) + t * len(B) + threshold
    if len(A) < t or len(B) < t or not total < hypothesis_rhs:
        return make_report(theorem, A, B, t, total, hypothesis_rhs,
                           Verdict.HYPOTHESIS_NOT_MET,
                           hypothesis_rhs=hypothesis_rhs)
    popular = profile.popular(t)
    H = stabilizer(popular)
    if witness is None:
        result = search_witness(A, B, t)
    else:
        result = _resolve_witness(A, B, t, witness, H)
    if isinstance(result, NoWitnessFound):
        logger.warning("%s: no witness for %s A=%#x B=%#x t=%d", theorem,
                       A.group.spec, A.mask, B.mask, t)
        report = make_report(theorem, A, B, t, total, None,
                             Verdict.VIOLATED, subgroup=H,
                             hypothesis_rhs=hypothesis_rhs)
        report.witness = result.to_dict()
        report.finding_kind = "violation"
        return report
    report = make_report(theorem, A, B, t, total, result.bound_middle,
                         Verdict.of(result.all_clauses), subgroup=H,
                         hypothesis_rhs=hypothesis_rhs,
                         bound_outer=result.bound_outer,
                         clauses=result.clauses)
    report.witness = result.to_dict()
    if not report.holds:
        report.finding_kind = "violation"
    return report


def check_theorem_new(A: GroupSet, B: GroupSet, t: int,
                      witness: WitnessInput = None) -> BoundReport:
    """Structure of pairs with popular sum below the improved threshold.

    When the popular sum is below ``t|A| + t|B| + threshold_new(t)``, a
    witness must exist and satisfy every clause: at most t-1 elements
    removed, equal sumsets, sizes at least t+1, a small sumset and the
    chained lower bound with H the stabilizer of the t-popular sumset.

    Parameters
    ----------
    A, B : GroupSet

    t : int
        t >= 2.

    witness : WitnessReport or (GroupSet, GroupSet), optional
        Candidate to check; searched for when absent.

    Returns
    -------
    BoundReport
        ``lhs`` is the popular sum and ``rhs`` the middle term of the
        chained bound. A missing witness gives a violation.
    """
    t = int(t)
    if t < 2:
        raise ValueError("check_theorem_new needs t >= 2, got {}".format(t))
    return _check_structure("new", A, B, t, threshold_new(t), witness)


def check_theorem_old(A: GroupSet, B: GroupSet, t: int,
                      witness: WitnessInput = None) -> BoundReport:
    """Same conclusions as `check_theorem_new` under the older threshold
    ``-2t^2 + 3t - 2``, for t >= 1."""
    t = _check_t(t)
    return _check_structure("old", A, B, t, threshold_old(t), witness)


def check_conjecture(A: GroupSet, B: GroupSet, t: int,
                     witness: Optional[Tuple[GroupSet, GroupSet]] = None,
                     search: bool = True) -> BoundReport:
    """Conjectured bound for pairs below the Pollard-type threshold.

    With H the stabilizer of the t-popular sumset and t = s|H| + u,
    ``u in [1, |H|]``, checks popular sum >= t|A|+t|B|-t^2-u(|H|-u). The
    structural part (a witness at level u with fewer than u removals and
    period H) and the strengthened bound are reported in the details; the
    verdict depends on the bound alone.

    Parameters
    ----------
    A, B : GroupSet

    t : int

    witness : (GroupSet, GroupSet), optional
        Candidate subsets for the structural part.

    search : bool, default True
        Search for a level-u witness when none is given.

    Returns
    -------
    BoundReport
    """
    t = _check_t(t)
    profile = rep_profile(A, B)
    total = profile.popular_sum(t)
    target = t * len(A) + t * len(B) - t * t
    if len(A) < t or len(B) < t or not total < target:
        return make_report("conjecture", A, B, t, total, target,
                           Verdict.HYPOTHESIS_NOT_MET, target=target)
    H = stabilizer(profile.popular(t))
    params = ConjectureParams.from_t_h(t, len(H))
    rhs = params.bound(len(A), len(B))
    details = {"s": params.s, "u": params.u, "h": params.h,
               "target": target, "equality": total == rhs,
               "structure": "not_searched"}
    if witness is None and search:
        found = exhaustive_witness_search(A, B, params.u,
                                          max_removed=params.u - 1)
        if isinstance(found, WitnessReport):
            witness = found.sets(A.group)
        else:
            details["structure"] = Verdict.VIOLATED
    if witness is not None:
        details.update(_conjecture_structure(A, B, params, H, witness,
                                             total))
    report = make_report("conjecture", A, B, t, total, rhs,
                         Verdict.of(total >= rhs), subgroup=H, **details)
    if not report.holds:
        report.finding_kind = "violation"
    return report


def _conjecture_structure(A, B, params: ConjectureParams, H: Subgroup,
                          witness, total):
    A_prime, B_prime = witness
    if not (A_prime <= A and B_prime <= B):
        raise PreconditionError("Witness candidates must be subsets of A "
                                "and B")
    u = params.u
    inner = rep_profile(A_prime, B_prime)
    sum_prime = inner.support()
    popular_u = rep_profile(A, B).popular(u)
    ell = (len(A) - len(A_prime)) + (len(B) - len(B_prime))
    rho = (len(H.periodize(A_prime)) - len(A_prime)
           + len(H.periodize(B_prime)) - len(B_prime))
    clauses = {
        "removed": ell < u,
        "sumset_equality": (sum_prime == inner.popular(u)
                            and sum_prime == popular_u),
        "period_equality": (stabilizer(sum_prime) == H
                            and stabilizer(inner.popular(u)) == H),
    }
    strong_rhs = params.strong_bound(len(A), len(B), ell, rho)
    structure = Verdict.of(all(clauses.values()))
    return {
        "structure": structure,
        "structure_clauses": clauses,
        "ell": ell,
        "rho": rho,
        "A_prime": A_prime,
        "B_prime": B_prime,
        "strong_rhs": strong_rhs,
        "strong_holds": total >= strong_rhs,
    }

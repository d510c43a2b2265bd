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
"""Item-by-item check of the canonical witness refinement.

Given a witness (A', B') at level t for a pair with popular sum below
``t|A| + t|B| - (1 + alpha) t^2``, the refinement A'' = (A' + H) & A,
B'' = (B' + H) & B, with H the stabilizer of the t-popular sumset, is
claimed to satisfy six numbered items. Each item gets its own verdict.
"""

import math

from fractions import Fraction
from typing import List

from ..group import GroupSet, Subgroup
from ..sets import canonicalize, rep_profile, stabilizer, sumset
from ..utils.utils import number_or_float
from .reports import BoundReport, ItemVerdict, Verdict, make_report

__all__ = [
    "check_mainprop_items",
]


def _item(item, ok, lhs=None, rhs=None, detail=""):
    return ItemVerdict(item=item, verdict=Verdict.of(ok),
                       lhs=None if lhs is None else number_or_float(lhs),
                       rhs=None if rhs is None else number_or_float(rhs),
                       detail=detail)


def _is_conclusion(A, B, t, A_prime, B_prime, popular):
    ell = (len(A) - len(A_prime)) + (len(B) - len(B_prime))
    if A_prime.is_empty() or B_prime.is_empty() or ell > t - 1:
        return False
    inner = rep_profile(A_prime, B_prime)
    return inner.support() == popular and inner.popular(t) == popular


def _item4(A, B, A2, B2, H: Subgroup, popular: GroupSet, hole_bound):
    """Removed elements miss the popular sumset on a whole slice."""
    missing = []
    for a in (A - A2):
        ok = any(((B2 & H.coset(b)).translate(a) & popular).is_empty()
                 for b in B2)
        far = len(B2.translate(a) - popular) >= hole_bound
        if not (ok and far):
            missing.append(("A", a))
    for b in (B - B2):
        ok = any(((A2 & H.coset(a)).translate(b) & popular).is_empty()
                 for a in A2)
        far = len(A2.translate(b) - popular) >= hole_bound
        if not (ok and far):
            missing.append(("B", b))
    detail = "all removed elements isolated" if not missing else \
        "fails for " + ", ".join("{} element {}".format(side, g)
                                  for side, g in missing)
    return _item(4, not missing, detail=detail)


def _item6(A, B, A2, B2, H, t):
    """Adding any new element outside the refined periods lifts the sum."""
    failures = []
    outside_A = (H.periodize(A2) | A).complement()
    for g in outside_A:
        bigger = A.with_element(g)
        total = rep_profile(bigger, B).popular_sum(t)
        if total < t * len(bigger) + t * len(B) - t * t:
            failures.append(("g", g))
    outside_B = (H.periodize(B2) | B).complement()
    for h in outside_B:
        bigger = B.with_element(h)
        total = rep_profile(A, bigger).popular_sum(t)
        if total < t * len(A) + t * len(bigger) - t * t:
            failures.append(("h", h))
    detail = ("checked {} + {} additions".format(len(outside_A),
                                                 len(outside_B))
              if not failures else
              "fails for " + ", ".join("{}={}".format(k, v)
                                        for k, v in failures))
    return _item(6, not failures, detail=detail)


def check_mainprop_items(A: GroupSet, B: GroupSet, t: int,
                         A_prime: GroupSet, B_prime: GroupSet,
                         alpha=0) -> BoundReport:
    """Verdict of every item for the canonical refinement of (A', B').

    Parameters
    ----------
    A, B : GroupSet
        Both of size at least t.

    t : int
        t >= 1.

    A_prime, B_prime : GroupSet
        A witness at level t: subsets of A and B with at most t-1 removed
        elements whose sumset equals their t-popular sumset and the
        t-popular sumset of A and B.

    alpha : int, Fraction or str, default 0
        Nonnegative slack; strings such as ``"1/2"`` are parsed exactly.

    Returns
    -------
    BoundReport
        Item verdicts in ``items``; the overall verdict holds when every
        item does, and is hypothesis-not-met when the popular-sum bound or
        the witness conditions fail. Item 6 is only evaluated when
        ell = t - 1. It ranges over elements outside both the set and the
        refined period; elements already in the set are skipped.
    """
    t = int(t)
    if t < 1:
        raise ValueError("t must be positive, got {}".format(t))
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative, got {}".format(alpha))
    profile = rep_profile(A, B)
    total = profile.popular_sum(t)
    popular = profile.popular(t)
    bound = t * len(A) + t * len(B) - (1 + alpha) * t * t
    hypothesis = (len(A) >= t and len(B) >= t and total < bound
                  and A_prime <= A and B_prime <= B
                  and _is_conclusion(A, B, t, A_prime, B_prime, popular))
    if not hypothesis:
        return make_report("mainprop", A, B, t, total, bound,
                           Verdict.HYPOTHESIS_NOT_MET, alpha=alpha)

    H = stabilizer(popular)
    h = len(H)
    A2 = canonicalize(A_prime, A, H)
    B2 = canonicalize(B_prime, B, H)
    ell = (len(A) - len(A2)) + (len(B) - len(B2))
    rho = (len(H.periodize(A2)) - len(A2)) + (len(H.periodize(B2)) - len(B2))
    middle = t * len(A) + t * len(B) - t * t - (t - ell) * (h - rho - t)
    outer = t * len(A) + t * len(B) - t * h
    items: List[ItemVerdict] = []

    conclusion = _is_conclusion(A, B, t, A2, B2, popular)
    items.append(_item(1, conclusion and total >= middle >= outer,
                       total, middle,
                       "refined pair is a witness: {}".format(conclusion)))

    sum2 = sumset(A2, B2)
    item2_rhs = len(A2) + len(B2) - (1 + alpha) * t
    items.append(_item(2, len(sum2) < item2_rhs, len(sum2), item2_rhs))

    refined_total = rep_profile(A2, B2).popular_sum(t)
    item3_mid = refined_total + ell * (h - rho)
    items.append(_item(3, total >= item3_mid >= middle, total, item3_mid,
                       "chain lower end {}".format(middle)))

    items.append(_item4(A, B, A2, B2, H, popular, h - rho))

    if ell < t:
        item5_rhs = math.floor(((1 + alpha) * t * t - t * ell)
                               / Fraction(t - ell)) + 1
        item5_low = math.floor((1 + alpha) * t) + 1
        ok5 = (h - rho >= item5_rhs >= item5_low
               and item5_low > (1 + alpha) * t)
        items.append(_item(5, ok5, h - rho, item5_rhs))
    else:
        items.append(_item(5, False, h - rho, None, "ell >= t"))

    if ell == t - 1:
        items.append(_item6(A, B, A2, B2, H, t))

    ok = all(item.verdict is Verdict.HOLDS for item in items)
    report = make_report("mainprop", A, B, t, total, middle, Verdict.of(ok),
                         subgroup=H, alpha=alpha, ell=ell, rho=rho,
                         A_refined=A2, B_refined=B2)
    report.items = items
    if not ok:
        report.finding_kind = "violation"
    return report

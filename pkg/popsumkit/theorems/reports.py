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
"""Report records shared by the checkers.

Report numbers are exact while computed (int or `fractions.Fraction`) and
are stored as int when integral, else as float, so that every report
survives a JSON round trip unchanged.
"""

import enum

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from ..group import GroupSet
from ..utils.utils import number_or_float

__all__ = [
    "ANCHORS",
    "BoundReport",
    "ConjectureParams",
    "ItemVerdict",
    "SCHEMA_VERSION",
    "Verdict",
    "make_report",
]

SCHEMA_VERSION = 1

ANCHORS = {
    "pigeonhole": "pigeonhole bound: r(g) >= |A|+|B|-|G|",
    "multiplicity": "multiplicity bound: r(g) >= |A|+|B|-|A+B| on A+B",
    "cd": "Cauchy-Davenport: |A+B| >= min(p, |A|+|B|-1)",
    "kneser": "Kneser: |A+B| >= |A+H|+|B+H|-|H|, H = stab(A+B)",
    "pollard": "Pollard: popular sum >= min(tp, t|A|+t|B|-t^2)",
    "pollard_ext": "Pollard, size-free form: "
                   "popular sum >= min(tp, |A||B|, t|A|+t|B|-t^2)",
    "hs": "Hamidoune-Serra: popular sum >= t|A|+t|B|-t^2-|H|^2/4",
    "old": "structure theorem under popular sum < t|A|+t|B|-2t^2+3t-2",
    "new": "structure theorem under "
           "popular sum < t|A|+t|B|+ceil(-4t^2/3+2t/3)",
    "mainprop": "canonical witness refinement A'' = (A'+H) & A",
    "conjecture": "conjectured bound t|A|+t|B|-t^2-u(|H|-u)",
    "restricted": "restricted sumset bounds under |A|+|B| >= |G|+1",
}


class Verdict(str, enum.Enum):
    """Outcome of one checked inequality."""

    HOLDS = "holds"
    VIOLATED = "violated"
    HYPOTHESIS_NOT_MET = "hypothesis_not_met"

    @classmethod
    def of(cls, ok: bool) -> "Verdict":
        return cls.HOLDS if ok else cls.VIOLATED


@dataclass
class ItemVerdict:
    """Verdict of one numbered item of a multi-part statement."""

    item: int
    verdict: Verdict
    lhs: Any = None
    rhs: Any = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "item": self.item,
            "verdict": self.verdict.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "detail": self.detail,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ItemVerdict":
        return cls(item=int(data["item"]), verdict=Verdict(data["verdict"]),
                   lhs=data.get("lhs"), rhs=data.get("rhs"),
                   detail=data.get("detail", ""))


@dataclass
class BoundReport:
    """One theorem instance: inputs, both sides, verdict and provenance.

    Attributes
    ----------
    theorem : str
        Checker id, a key of `ANCHORS`.

    group : str
        Group spec.

    A, B : list of int
        Members of the input sets.

    t : int or None
        Popularity level, None for plain sumset statements.

    lhs, rhs : int or float or None
        Both sides of the inequality ``lhs >= rhs`` (or ``>`` where the
        statement is strict).

    verdict : Verdict

    anchor : str
        Human readable statement checked.

    subgroup : list of int or None
        Members of the subgroup used by the bound, if any.

    details : dict
        Secondary quantities and side verdicts.

    witness : dict or None
        Serialized witness for structural statements.

    items : list of ItemVerdict
        Per-item verdicts of multi-part statements.
    """

    theorem: str
    group: str
    A: List[int]
    B: List[int]
    t: Optional[int]
    lhs: Any
    rhs: Any
    verdict: Verdict
    anchor: str = ""
    subgroup: Optional[List[int]] = None
    details: Dict[str, Any] = field(default_factory=dict)
    witness: Optional[Dict[str, Any]] = None
    items: List[ItemVerdict] = field(default_factory=list)
    finding_kind: Optional[str] = None
    seed: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "theorem": self.theorem,
            "group": self.group,
            "A": list(self.A),
            "B": list(self.B),
            "t": self.t,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict.value,
            "anchor": self.anchor,
            "subgroup": self.subgroup,
            "details": dict(self.details),
            "witness": self.witness,
            "items": [item.to_dict() for item in self.items],
            "finding_kind": self.finding_kind,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BoundReport":
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError("Unsupported report schema: {!r}"
                             .format(data.get("schema")))
        return cls(theorem=data["theorem"], group=data["group"],
                   A=list(data["A"]), B=list(data["B"]), t=data["t"],
                   lhs=data["lhs"], rhs=data["rhs"],
                   verdict=Verdict(data["verdict"]),
                   anchor=data.get("anchor", ""),
                   subgroup=data.get("subgroup"),
                   details=dict(data.get("details") or {}),
                   witness=data.get("witness"),
                   items=[ItemVerdict.from_dict(item)
                          for item in data.get("items") or []],
                   finding_kind=data.get("finding_kind"),
                   seed=data.get("seed"))


def make_report(theorem: str, A: GroupSet, B: GroupSet, t: Optional[int],
                lhs, rhs, verdict: Verdict, subgroup: GroupSet = None,
                **details) -> BoundReport:
    """Build a report, converting exact numbers for serialization."""
    return BoundReport(
        theorem=theorem,
        group=A.group.spec,
        A=A.to_list(),
        B=B.to_list(),
        t=None if t is None else int(t),
        lhs=None if lhs is None else number_or_float(lhs),
        rhs=None if rhs is None else number_or_float(rhs),
        verdict=verdict,
        anchor=ANCHORS[theorem],
        subgroup=None if subgroup is None else subgroup.to_list(),
        details={key: _plain(value) for key, value in details.items()},
    )


def _plain(value):
    if isinstance(value, Verdict):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, GroupSet):
        return value.to_list()
    if isinstance(value, dict):
        return {key: _plain(v) for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction) and value.denominator != 1:
        return str(value)
    return number_or_float(value)


@dataclass(frozen=True)
class ConjectureParams:
    """Decomposition t = s*h + u with u in [1, h] and s >= 0.

    Attributes
    ----------
    t : int
    h : int
        Order of the period subgroup.
    s : int
    u : int
    """

    t: int
    h: int
    s: int
    u: int

    def __post_init__(self):
        assert self.t == self.s * self.h + self.u
        assert 1 <= self.u <= self.h
        assert self.s >= 0

    @classmethod
    def from_t_h(cls, t: int, h: int) -> "ConjectureParams":
        """Unique decomposition; h dividing t gives u = h."""
        if t < 1 or h < 1:
            raise ValueError("t and h must be positive, got t={} h={}"
                             .format(t, h))
        s = (t - 1) // h
        return cls(t=t, h=h, s=s, u=t - s * h)

    def bound(self, size_A: int, size_B: int) -> int:
        """t|A| + t|B| - t^2 - u(h - u)."""
        t, u, h = self.t, self.u, self.h
        return t * size_A + t * size_B - t * t - u * (h - u)

    def strong_bound(self, size_A: int, size_B: int, ell: int,
                     rho: int) -> int:
        """t|A| + t|B| - t^2 - (u - ell)(h - rho - u)."""
        t, u, h = self.t, self.u, self.h
        return (t * size_A + t * size_B - t * t
                - (u - ell) * (h - rho - u))

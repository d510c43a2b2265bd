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
"""Exhaustive and randomized scans over (group, A, B, t).

A scan is split into tasks: one A bitmask per task in exhaustive mode, one
batch of samples per task in random mode. Tasks only depend on the job, so
results are identical for any worker count, and a job interrupted after
``cursor`` tasks resumes by skipping them.
"""

import functools
import hashlib
import logging

from collections import Counter
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool
from typing import Any, Dict, Iterator, List, Optional, Tuple

from ..constructions.families import ConstructionSpec
from ..exceptions import PreconditionError, ResourceLimitError
from ..group import FiniteAbelianGroup, GroupSet
from ..io import dumps
from ..restricted import RestrictedReport, TauMap, check_restricted
from ..sets import rep_profile
from ..theorems.bounds import (check_cauchy_davenport, check_conjecture,
                               check_hamidoune_serra, check_kneser,
                               check_multiplicity, check_pigeonhole,
                               check_pollard, check_pollard_extended,
                               check_theorem_new, check_theorem_old)
from ..theorems.mainprop import check_mainprop_items
from ..theorems.reports import ANCHORS, BoundReport, Verdict
from ..theorems.thresholds import threshold_new
from ..utils.utils import batch_random_state, usable_cpu_count
from ..witness.search import (NoWitnessFound, WitnessReport,
                              exhaustive_witness_search, find_witness,
                              search_witness)

logger = logging.getLogger(__name__)

__all__ = [
    "Finding",
    "GOALS",
    "MODES",
    "ScanJob",
    "ScanResult",
    "construction_findings",
    "hunt_tightness",
    "iter_scan",
    "replay_finding",
    "run_checker",
    "scan",
]

MODES = ("exhaustive", "random")
GOALS = ("verify_all", "hunt_tightness", "hunt_conjecture_violation",
         "verify_restricted")
FINDING_KINDS = ("violation", "tightness", "conjecture_equality",
                 "formula_discrepancy")

DEFAULT_CAP = 12
TIGHTNESS_LEVELS = (2, 4)

Task = Tuple[int, int]


@dataclass
class ScanJob:
    """Everything that determines the output of a scan.

    Parameters
    ----------
    groups : list of str
        Group specs, e.g. ``["Z5", "Z2xZ4"]``.

    t_min, t_max : int
        Levels checked for every pair, inclusive.

    mode : str
        ``"exhaustive"`` or ``"random"``.

    goal : str
        One of `GOALS`.

    seed : int
        Random mode seed; also recorded in every finding.

    samples : int
        Random pairs per group.

    batch_size : int
        Random pairs per task.

    min_size, max_size : int or None
        Bounds on |A| and |B|.

    normalize : bool
        In exhaustive mode, only enumerate pairs with 0 in A and in B.

    cap : int
        Largest group order allowed in exhaustive mode.

    tau_samples : int
        Random injective maps drawn per pair by ``verify_restricted``.
    """

    groups: List[str]
    t_min: int = 2
    t_max: int = 2
    mode: str = "exhaustive"
    goal: str = "verify_all"
    seed: int = 0
    samples: int = 0
    batch_size: int = 256
    min_size: int = 1
    max_size: Optional[int] = None
    normalize: bool = True
    cap: int = DEFAULT_CAP
    tau_samples: int = 200

    def __post_init__(self):
        self.groups = [FiniteAbelianGroup.from_spec(spec).spec
                       for spec in self.groups]
        if self.mode not in MODES:
            raise ValueError("mode must be one of {}, got {!r}"
                             .format(MODES, self.mode))
        if self.goal not in GOALS:
            raise ValueError("goal must be one of {}, got {!r}"
                             .format(GOALS, self.goal))
        if not 1 <= self.t_min <= self.t_max:
            raise ValueError("Need 1 <= t_min <= t_max, got {}, {}"
                             .format(self.t_min, self.t_max))
        if self.goal == "hunt_tightness":
            low, high = TIGHTNESS_LEVELS
            if self.t_min < low or self.t_max > high:
                raise ValueError("Tightness hunts need t in [{}, {}], got "
                                 "[{}, {}]".format(low, high, self.t_min,
                                                   self.t_max))
        if self.samples < 0 or self.batch_size < 1 or self.tau_samples < 1:
            raise ValueError("Need samples >= 0, batch_size >= 1 and "
                             "tau_samples >= 1")
        if self.min_size < 1 or (self.max_size is not None
                                 and self.max_size < self.min_size):
            raise ValueError("Invalid size filter [{}, {}]"
                             .format(self.min_size, self.max_size))
        self._check_groups()

    def _check_groups(self):
        """Cap exhaustive scans; warn about groups that yield no pairs."""
        for group in self.group_objects():
            if self.mode == "exhaustive" and group.order > self.cap:
                raise ResourceLimitError(
                    "{} has order {} above the exhaustive cap {}"
                    .format(group.spec, group.order, self.cap))
            if not self._has_sets(group):
                logger.warning("Skipping %s: no set of it passes the size "
                               "filter", group.spec)

    def group_objects(self) -> List[FiniteAbelianGroup]:
        return [FiniteAbelianGroup.from_spec(spec) for spec in self.groups]

    def _size_range(self, group: FiniteAbelianGroup) -> Tuple[int, int]:
        low = max(self.min_size, self.t_min if self.mode == "random" else 1)
        high = group.order if self.max_size is None else min(self.max_size,
                                                             group.order)
        return low, high

    def _has_sets(self, group: FiniteAbelianGroup) -> bool:
        low, high = self._size_range(group)
        return low <= high

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ScanJob":
        return cls(**data)

    def job_hash(self) -> str:
        """Stable digest of the job, used to match checkpoints."""
        return hashlib.sha256(dumps(self.to_dict()).encode()).hexdigest()

    def tasks(self) -> List[Task]:
        """All (group index, unit) pairs in canonical order.

        The unit is an A bitmask in exhaustive mode and a batch index in
        random mode.
        """
        tasks = []
        for gi, group in enumerate(self.group_objects()):
            if self.mode == "exhaustive":
                low, high = self._size_range(group)
                tasks.extend((gi, mask) for mask in _masks(group.order,
                                                           self.normalize)
                             if low <= bin(mask).count("1") <= high)
            elif self._has_sets(group):
                n_batches = -(-self.samples // self.batch_size)
                tasks.extend((gi, bi) for bi in range(n_batches))
        return tasks


@dataclass
class Finding:
    """A scan result worth keeping: a violation, a tightness instance, an
    equality case of the conjectured bound or a formula mismatch.

    Top level fields repeat those of the primary report; ``reports`` holds
    every serialized report of the instance.
    """

    kind: str
    theorem: str
    group: str
    A: List[int]
    B: List[int]
    t: Optional[int]
    lhs: Any
    rhs: Any
    verdict: str
    anchor: str
    witness: Optional[Dict[str, Any]] = None
    seed: Optional[int] = None
    reports: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in FINDING_KINDS:
            raise ValueError("Unknown finding kind {!r}".format(self.kind))

    @classmethod
    def from_report(cls, kind: str, report: BoundReport,
                    reports: List[BoundReport], seed=None,
                    **details) -> "Finding":
        return cls(kind=kind, theorem=report.theorem, group=report.group,
                   A=list(report.A), B=list(report.B), t=report.t,
                   lhs=report.lhs, rhs=report.rhs,
                   verdict=report.verdict.value, anchor=report.anchor,
                   witness=report.witness, seed=seed,
                   reports=[r.to_dict() for r in reports], details=details)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": 1,
            "finding_kind": self.kind,
            "theorem": self.theorem,
            "group": self.group,
            "A": list(self.A),
            "B": list(self.B),
            "t": self.t,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict,
            "anchor": self.anchor,
            "witness": self.witness,
            "seed": self.seed,
            "reports": list(self.reports),
            "details": dict(self.details),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Finding":
        if data.get("schema") != 1:
            raise ValueError("Unsupported finding schema: {!r}"
                             .format(data.get("schema")))
        return cls(kind=data["finding_kind"], theorem=data["theorem"],
                   group=data["group"], A=list(data["A"]),
                   B=list(data["B"]), t=data["t"], lhs=data["lhs"],
                   rhs=data["rhs"], verdict=data["verdict"],
                   anchor=data["anchor"], witness=data.get("witness"),
                   seed=data.get("seed"),
                   reports=list(data.get("reports") or []),
                   details=dict(data.get("details") or {}))


@dataclass
class ScanResult:
    findings: List[Finding]
    summary: Dict[str, int]
    cursor: int


def _masks(order: int, normalize: bool) -> Iterator[int]:
    """Nonempty subset masks in increasing order."""
    if normalize:
        return range(1, 1 << order, 2)
    return range(1, 1 << order)


@functools.lru_cache(maxsize=8)
def _enumerated_sets(spec: str, normalize: bool,
                     low: int, high: int) -> Tuple[GroupSet, ...]:
    group = FiniteAbelianGroup.from_spec(spec)
    return tuple(GroupSet.from_mask(group, mask)
                 for mask in _masks(group.order, normalize)
                 if low <= bin(mask).count("1") <= high)


def _random_set(group: FiniteAbelianGroup, random_state, low: int,
                high: int) -> GroupSet:
    """Independent inclusion with probability 1/2, conditioned on size."""
    while True:
        bits = random_state.random_sample(group.order) < 0.5
        if low <= int(bits.sum()) <= high:
            return GroupSet(group, bits)


def _witness_sets(A: GroupSet, witness):
    if isinstance(witness, dict):
        if "A_mask" in witness:
            return NoWitnessFound.from_dict(witness)
        if "group" not in witness:
            return (GroupSet.from_elements(A.group, witness["A_prime"]),
                    GroupSet.from_elements(A.group, witness["B_prime"]))
        witness = WitnessReport.from_dict(witness)
    if isinstance(witness, WitnessReport):
        return witness.sets(A.group)
    return witness


def run_checker(theorem: str, A: GroupSet, B: GroupSet, t: int = None,
                witness=None, alpha=0, search: bool = True) -> BoundReport:
    """Run one checker by its report id.

    Parameters
    ----------
    theorem : str
        A key of `popsumkit.theorems.reports.ANCHORS` other than
        ``"restricted"``.

    A, B : GroupSet

    t : int, optional
        Required by every popular-sum statement.

    witness : (GroupSet, GroupSet) or WitnessReport or dict, optional
        Candidate witness for the structural statements.

    alpha : number or str
        Slack of the item-by-item check.

    search : bool
        Let the conjecture check search for a witness.

    Returns
    -------
    BoundReport

    Raises
    ------
    ValueError
        Unknown theorem or missing t.
    """
    plain = {
        "pigeonhole": check_pigeonhole,
        "multiplicity": check_multiplicity,
        "cd": check_cauchy_davenport,
        "kneser": check_kneser,
    }
    leveled = {
        "pollard": check_pollard,
        "pollard_ext": check_pollard_extended,
        "hs": check_hamidoune_serra,
    }
    if theorem in plain:
        return plain[theorem](A, B)
    if theorem not in ANCHORS or theorem == "restricted":
        raise ValueError("Unknown theorem {!r}".format(theorem))
    if t is None:
        raise ValueError("Theorem {!r} needs t".format(theorem))
    if theorem in leveled:
        return leveled[theorem](A, B, t)
    sets = _witness_sets(A, witness)
    if theorem == "new":
        return check_theorem_new(A, B, t, witness=sets)
    if theorem == "old":
        return check_theorem_old(A, B, t, witness=sets)
    if theorem == "conjecture":
        return check_conjecture(A, B, t, witness=sets, search=search)
    if sets is None:
        sets = _default_mainprop_witness(A, B, t)
    report = check_mainprop_items(A, B, t, sets[0], sets[1], alpha=alpha)
    report.witness = {"A_prime": sets[0].to_list(),
                      "B_prime": sets[1].to_list()}
    return report


def _default_mainprop_witness(A, B, t):
    try:
        found = search_witness(A, B, t)
    except PreconditionError:
        return A, B
    if found.valid:
        return found.sets(A.group)
    return A, B


def _structure_reports(A, B, t) -> List[BoundReport]:
    """Witness, structure and item checks under the main hypothesis."""
    found = find_witness(A, B, t)
    reports = [check_theorem_new(A, B, t, witness=found)]
    if found.valid:
        reports.append(run_checker("mainprop", A, B, t,
                                   witness=found.sets(A.group)))
    return reports


def _verify_reports(A: GroupSet, B: GroupSet, t: int,
                    first_level: bool) -> List[BoundReport]:
    prime = A.group.is_cyclic_prime()
    reports = []
    if first_level:
        reports.extend([check_pigeonhole(A, B), check_multiplicity(A, B),
                        check_kneser(A, B)])
        if prime:
            reports.append(check_cauchy_davenport(A, B))
    if prime:
        reports.extend([check_pollard(A, B, t),
                        check_pollard_extended(A, B, t)])
    if len(A) < t or len(B) < t:
        return reports
    reports.append(check_hamidoune_serra(A, B, t))
    total = rep_profile(A, B).popular_sum(t)
    if t >= 2 and total < t * len(A) + t * len(B) + threshold_new(t):
        reports.extend(_structure_reports(A, B, t))
    reports.append(check_conjecture(A, B, t))
    return reports


def _tightness_finding(A: GroupSet, B: GroupSet, t: int, seed,
                       counter: Counter, where) -> Optional[Finding]:
    if len(A) < t or len(B) < t:
        return None
    profile = rep_profile(A, B)
    total = profile.popular_sum(t)
    bound = t * len(A) + t * len(B) + threshold_new(t)
    if total != bound or profile.popular(t).is_empty():
        return None
    counter["tightness.candidates"] += 1
    result = exhaustive_witness_search(A, B, t)
    if result.valid:
        return None
    return Finding(kind="tightness", theorem="new", group=A.group.spec,
                   A=A.to_list(), B=B.to_list(), t=t, lhs=total, rhs=bound,
                   verdict=Verdict.HYPOTHESIS_NOT_MET.value,
                   anchor=ANCHORS["new"], witness=result.to_dict(),
                   seed=seed, details=dict(where))


def _restricted_sound(report: RestrictedReport) -> bool:
    """Both bounds, the optimal level bound and every counting step."""
    if report.verdict is Verdict.VIOLATED:
        return False
    if report.details.get("level_holds") is False:
        return False
    return all(level["counting_holds"]
               for level in report.details.get("levels", {}).values())


def _restricted_findings(job: ScanJob, A: GroupSet, B: GroupSet,
                         counter: Counter, where,
                         random_state) -> List[Finding]:
    """Check random injective maps on a pair with |A| + |B| > |G|."""
    if len(A) + len(B) < A.group.order + 1:
        return []
    findings = []
    for k in range(job.tau_samples):
        tau = TauMap.random(A, random_state)
        report = check_restricted(A, B, tau, seed=job.seed)
        counter["instances"] += 1
        counter["restricted.{}".format(report.verdict.value)] += 1
        if _restricted_sound(report):
            continue
        data = report.to_dict()
        findings.append(Finding(
            kind="violation", theorem="restricted", group=report.group,
            A=report.A, B=report.B, t=None, lhs=report.size,
            rhs=data["rhs"], verdict=Verdict.VIOLATED.value,
            anchor=data["anchor"], seed=job.seed, reports=[data],
            details=dict(where, tau_sample=k)))
    return findings


def _evaluate_pair(job: ScanJob, A: GroupSet, B: GroupSet,
                   counter: Counter, where,
                   random_state=None) -> List[Finding]:
    counter["pairs"] += 1
    if job.goal == "verify_restricted":
        return _restricted_findings(job, A, B, counter, where, random_state)
    findings = []
    for t in range(job.t_min, job.t_max + 1):
        if job.goal == "hunt_tightness":
            counter["instances"] += 1
            finding = _tightness_finding(A, B, t, job.seed, counter, where)
            if finding is not None:
                findings.append(finding)
            continue
        if job.goal == "verify_all":
            reports = _verify_reports(A, B, t, t == job.t_min)
        elif len(A) >= t and len(B) >= t:
            reports = [check_conjecture(A, B, t)]
        else:
            continue
        counter["instances"] += 1
        for report in reports:
            counter["{}.{}".format(report.theorem,
                                   report.verdict.value)] += 1
            if report.verdict is Verdict.VIOLATED:
                findings.append(Finding.from_report(
                    "violation", report, reports, seed=job.seed, **where))
            elif (job.goal == "hunt_conjecture_violation"
                  and report.theorem == "conjecture"
                  and report.details.get("equality")):
                findings.append(Finding.from_report(
                    "conjecture_equality", report, [report], seed=job.seed,
                    **where))
    return findings


def _run_task(args) -> Tuple[List[Finding], Counter]:
    """Evaluate one task; top level so worker processes can unpickle it."""
    job, (gi, unit) = args
    group = FiniteAbelianGroup.from_spec(job.groups[gi])
    counter = Counter()
    findings = []
    low, high = job._size_range(group)
    random_state = batch_random_state(job.seed, gi, unit)
    if job.mode == "exhaustive":
        A = GroupSet.from_mask(group, unit)
        for B in _enumerated_sets(group.spec, job.normalize, low, high):
            findings.extend(_evaluate_pair(job, A, B, counter, {},
                                           random_state))
    else:
        count = min(job.batch_size, job.samples - unit * job.batch_size)
        for k in range(count):
            A = _random_set(group, random_state, low, high)
            B = _random_set(group, random_state, low, high)
            where = {"batch": unit, "sample": k}
            findings.extend(_evaluate_pair(job, A, B, counter, where,
                                           random_state))
    counter["tasks"] += 1
    counter["findings"] += len(findings)
    for finding in findings:
        counter["findings.{}".format(finding.kind)] += 1
    return findings, counter


def iter_scan(job: ScanJob, workers: int = 1, start: int = 0
              ) -> Iterator[Tuple[int, List[Finding], Counter]]:
    """Evaluate the tasks of a job in canonical order.

    Parameters
    ----------
    job : ScanJob

    workers : int
        Processes; at most the usable CPU count. 1 runs inline.

    start : int
        Number of leading tasks to skip, from a checkpoint.

    Yields
    ------
    index : int
        Position of the task, so ``index + 1`` is the resume cursor.

    findings : list of Finding

    counter : Counter
        Summary counts of the task alone.
    """
    tasks = job.tasks()[start:]
    logger.info("Scanning %d tasks of %s (goal %s) from cursor %d",
                len(tasks), ",".join(job.groups) or "no groups", job.goal,
                start)
    workers = max(1, min(int(workers), usable_cpu_count()))
    args = ((job, task) for task in tasks)
    if workers == 1 or len(tasks) <= 1:
        for offset, arg in enumerate(args):
            findings, counter = _run_task(arg)
            yield start + offset, findings, counter
        return
    with Pool(workers) as pool:
        for offset, (findings, counter) in enumerate(
                pool.imap(_run_task, args, chunksize=4)):
            yield start + offset, findings, counter


def scan(job: ScanJob, workers: int = 1, start: int = 0,
         summary: Optional[Dict[str, int]] = None) -> ScanResult:
    """Run a job to completion.

    Parameters
    ----------
    job : ScanJob

    workers : int

    start : int
        Resume cursor.

    summary : dict, optional
        Counts accumulated before ``start``.

    Returns
    -------
    ScanResult
        Findings in canonical order; ``summary`` always has the
        ``tasks``, ``pairs``, ``instances`` and ``findings`` keys.
    """
    total = Counter({"tasks": 0, "pairs": 0, "instances": 0, "findings": 0})
    total.update(summary or {})
    findings = []
    cursor = start
    for index, task_findings, counter in iter_scan(job, workers, start):
        findings.extend(task_findings)
        total.update(counter)
        cursor = index + 1
    violations = total["findings.violation"]
    if violations:
        logger.warning("Scan found %d violations", violations)
    return ScanResult(findings=findings, summary=dict(sorted(total.items())),
                      cursor=cursor)


def hunt_tightness(groups: List[str], t: int, workers: int = 1,
                   normalize: bool = True, cap: int = DEFAULT_CAP
                   ) -> Iterator[Finding]:
    """Exhaustively look for instances at the exact threshold with no
    witness.

    Raises
    ------
    ValueError
        t outside [2, 4].
    ResourceLimitError
        A group above the cap.
    """
    low, high = TIGHTNESS_LEVELS
    if not low <= t <= high:
        raise ValueError("Tightness hunts need t in [{}, {}], got {}"
                         .format(low, high, t))
    job = ScanJob(groups=list(groups), t_min=t, t_max=t, mode="exhaustive",
                  goal="hunt_tightness", min_size=t, normalize=normalize,
                  cap=cap)
    for _, findings, _ in iter_scan(job, workers):
        yield from findings


def construction_findings(spec: ConstructionSpec,
                          seed=None) -> List[Finding]:
    """Formula mismatch and conjectured-bound findings of a construction.
    """
    findings = []
    A, B = spec.sets()
    if not spec.match:
        findings.append(Finding(
            kind="formula_discrepancy", theorem="construction",
            group=spec.group, A=spec.A, B=spec.B, t=spec.t,
            lhs=spec.direct_sum, rhs=spec.predicted_sum,
            verdict=Verdict.VIOLATED.value,
            anchor="family formula: {}".format(spec.family), seed=seed,
            details={"construction": spec.to_dict()}))
    report = check_conjecture(A, B, spec.t)
    if report.verdict is Verdict.VIOLATED:
        findings.append(Finding.from_report("violation", report, [report],
                                            seed=seed, family=spec.family))
    elif report.holds and report.details.get("equality"):
        findings.append(Finding.from_report("conjecture_equality", report,
                                            [report], seed=seed,
                                            family=spec.family))
    return findings


def replay_finding(finding: Finding) -> bool:
    """Re-check a finding from its serialization.

    Returns
    -------
    bool
        True when every stored verdict is reproduced.
    """
    group = FiniteAbelianGroup.from_spec(finding.group)
    A = GroupSet.from_elements(group, finding.A)
    B = GroupSet.from_elements(group, finding.B)
    t = finding.t
    if finding.kind == "tightness":
        total = rep_profile(A, B).popular_sum(t)
        bound = t * len(A) + t * len(B) + threshold_new(t)
        return (total == bound == finding.lhs
                and not exhaustive_witness_search(A, B, t).valid)
    if finding.theorem == "construction":
        direct = rep_profile(A, B).popular_sum(t)
        return direct == finding.lhs and direct != finding.rhs
    if finding.theorem == "restricted":
        return all(_replay_restricted(A, B, data)
                   for data in finding.reports)
    for data in finding.reports:
        stored = BoundReport.from_dict(data)
        witness = stored.witness if stored.theorem != "conjecture" else None
        alpha = stored.details.get("alpha", 0)
        again = run_checker(stored.theorem, A, B, stored.t,
                            witness=witness, alpha=alpha)
        if again.verdict is not stored.verdict:
            logger.info("Replay of %s differs: %s then %s", stored.theorem,
                        stored.verdict.value, again.verdict.value)
            return False
    return True


def _replay_restricted(A: GroupSet, B: GroupSet,
                       data: Dict[str, Any]) -> bool:
    stored = RestrictedReport.from_dict(data)
    tau = TauMap.from_pairs(A, stored.tau)
    again = check_restricted(A, B, tau, seed=stored.seed)
    return (again.verdict is stored.verdict
            and _restricted_sound(again) == _restricted_sound(stored))

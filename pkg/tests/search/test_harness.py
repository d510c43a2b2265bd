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


def _job(**kwargs):
    from popsumkit.search.harness import ScanJob

    return ScanJob(**kwargs)


def test_verify_all_small_groups_has_no_violations():
    from popsumkit.search.harness import scan

    job = _job(groups=["Z2", "Z3", "Z4", "Z5", "Z6"], t_min=2, t_max=2)
    result = scan(job)
    assert result.findings == [], [f.to_dict() for f in result.findings]
    assert result.cursor == len(job.tasks())
    assert result.summary["tasks"] == len(job.tasks())
    assert result.summary["pairs"] == sum(4 ** (n - 1) for n in range(2, 7))
    assert result.summary.get("new.violated", 0) == 0
    assert result.summary["new.holds"] > 0
    assert result.summary["pollard.holds"] > 0


def test_random_scan_without_samples():
    from popsumkit.search.harness import scan

    result = scan(_job(groups=["Z7"], mode="random", samples=0))
    assert result.findings == [] and result.cursor == 0
    assert result.summary == {"findings": 0, "instances": 0, "pairs": 0,
                              "tasks": 0}


def test_random_scan_is_reproducible():
    from popsumkit.search.harness import scan

    job = _job(groups=["Z8", "Z9"], t_min=2, t_max=3, mode="random",
               goal="hunt_conjecture_violation", seed=5, samples=10,
               batch_size=4)
    assert len(job.tasks()) == 6
    first = scan(job)
    second = scan(job)
    assert first.summary == second.summary
    assert [f.to_dict() for f in first.findings] == \
        [f.to_dict() for f in second.findings]
    assert first.summary["pairs"] == 20
    for finding in first.findings:
        assert finding.seed == 5 and "batch" in finding.details


def test_results_do_not_depend_on_workers():
    from popsumkit.search.harness import scan

    job = _job(groups=["Z6"], goal="hunt_conjecture_violation")
    inline = scan(job, workers=1)
    pooled = scan(job, workers=2)
    assert inline.summary == pooled.summary
    assert [f.to_dict() for f in inline.findings] == \
        [f.to_dict() for f in pooled.findings]
    assert inline.findings, "Z6 has equality cases of the conjecture"
    assert {f.kind for f in inline.findings} == {"conjecture_equality"}


def test_resume_from_cursor_matches_full_run():
    from collections import Counter
    from popsumkit.search.harness import iter_scan, scan

    job = _job(groups=["Z5", "Z6"], goal="hunt_conjecture_violation")
    full = scan(job)
    split = 7
    partial = Counter()
    head = []
    for index, findings, counter in iter_scan(job):
        if index >= split:
            break
        head.extend(findings)
        partial.update(counter)
    rest = scan(job, start=split, summary=partial)
    assert rest.cursor == full.cursor
    assert rest.summary == full.summary
    assert [f.to_dict() for f in head + rest.findings] == \
        [f.to_dict() for f in full.findings]


def test_job_validation():
    from popsumkit.exceptions import ResourceLimitError

    with pytest.raises(ResourceLimitError):
        _job(groups=["Z13"])
    _job(groups=["Z13"], cap=13)
    _job(groups=["Z13"], mode="random", samples=3)
    with pytest.raises(ValueError):
        _job(groups=["Z5"], mode="sideways")
    with pytest.raises(ValueError):
        _job(groups=["Z5"], goal="hunt_tightness", t_min=2, t_max=5)
    with pytest.raises(ValueError):
        _job(groups=["Z5"], t_min=3, t_max=2)
    with pytest.raises(ValueError):
        _job(groups=["Z5"], goal="verify_restricted", tau_samples=0)


def test_job_hash_and_serialization():
    from popsumkit.search.harness import ScanJob

    job = _job(groups=["Z5", "Z2xZ2"], t_max=3)
    again = ScanJob.from_dict(job.to_dict())
    assert again == job and again.job_hash() == job.job_hash()
    assert _job(groups=["Z5"]).job_hash() != job.job_hash()


def test_normalized_tasks_contain_zero():
    job = _job(groups=["Z4"])
    assert [mask for _, mask in job.tasks()] == [1, 3, 5, 7, 9, 11, 13, 15]
    job = _job(groups=["Z3"], normalize=False, min_size=2)
    assert [mask for _, mask in job.tasks()] == [3, 5, 6, 7]


def test_hunt_tightness():
    from popsumkit.search.harness import hunt_tightness, replay_finding

    assert list(hunt_tightness([], 2)) == []
    with pytest.raises(ValueError):
        list(hunt_tightness(["Z5"], 5))
    for finding in hunt_tightness(["Z4", "Z6"], 2):
        assert finding.kind == "tightness"
        assert finding.lhs == finding.rhs
        assert replay_finding(finding)


def test_finding_roundtrip_and_replay(z12_one_removal):
    from popsumkit.search.harness import Finding, replay_finding
    from popsumkit.theorems.bounds import check_theorem_new

    A, B = z12_one_removal
    report = check_theorem_new(A, B, 2, witness=(A, B))
    finding = Finding.from_report("violation", report, [report], seed=3)
    data = finding.to_dict()
    assert data["finding_kind"] == "violation" and data["schema"] == 1
    assert Finding.from_dict(data) == finding
    assert replay_finding(finding)
    with pytest.raises(ValueError):
        Finding.from_dict(dict(data, finding_kind="surprise"))


def test_run_checker(z12_one_removal):
    from popsumkit.search.harness import run_checker
    from popsumkit.theorems.reports import Verdict

    A, B = z12_one_removal
    report = run_checker("mainprop", A, B, 2)
    assert report.verdict is Verdict.HOLDS
    assert report.witness["A_prime"] == [0, 1, 4, 5, 8, 9]
    assert run_checker("kneser", A, B).holds
    with pytest.raises(ValueError):
        run_checker("hs", A, B)
    with pytest.raises(ValueError):
        run_checker("restricted", A, B, 2)
    with pytest.raises(ValueError):
        run_checker("folklore", A, B, 2)


def test_construction_findings():
    from popsumkit.constructions.families import (ConstructionSpec,
                                                  gen_ap_cosets)
    from popsumkit.group import FiniteAbelianGroup, subgroup_generated
    from popsumkit.search.harness import (construction_findings,
                                          replay_finding)

    G = FiniteAbelianGroup([12])
    H = subgroup_generated(G, [4])
    spec = gen_ap_cosets(G, H, 0, 2, 2, 2)
    findings = construction_findings(spec, seed=1)
    assert [f.kind for f in findings] == ["conjecture_equality"]
    assert findings[0].details["family"] == "ap_cosets"
    assert replay_finding(findings[0])

    data = spec.to_dict()
    data["predicted_sum"] += 1
    wrong = ConstructionSpec.from_dict(data)
    findings = construction_findings(wrong)
    assert findings[0].kind == "formula_discrepancy"
    assert replay_finding(findings[0])


def test_random_scan_skips_groups_without_sets(caplog):
    import logging
    from popsumkit.search.harness import scan

    with caplog.at_level(logging.WARNING):
        job = _job(groups=["Z2", "Z5", "Z3"], mode="random", t_min=3,
                   t_max=3, samples=4, batch_size=2)
    assert "Skipping Z2" in caplog.text
    assert {gi for gi, _ in job.tasks()} == {1, 2}
    result = scan(job)
    assert result.summary["pairs"] == 8
    assert result.cursor == len(job.tasks()) == 4


def test_verify_restricted_scan():
    from popsumkit.search.harness import scan

    job = _job(groups=["Z5", "Z2xZ2"], goal="verify_restricted",
               tau_samples=4, seed=2)
    inline = scan(job)
    assert inline.findings == [], [f.to_dict() for f in inline.findings]
    holds = inline.summary["restricted.holds"]
    assert holds > 0 and holds % 4 == 0
    assert inline.summary.get("restricted.violated", 0) == 0
    assert inline.summary["instances"] == holds
    pooled = scan(job, workers=2)
    assert pooled.summary == inline.summary


def test_restricted_finding_replay():
    from popsumkit.group import FiniteAbelianGroup, GroupSet
    from popsumkit.restricted import TauMap, check_restricted
    from popsumkit.search.harness import Finding, replay_finding

    G = FiniteAbelianGroup([5])
    A = GroupSet.from_elements(G, [0, 1, 2, 3])
    B = GroupSet.from_elements(G, [0, 1])
    data = check_restricted(A, B, TauMap.identity(A), seed=4).to_dict()
    finding = Finding(kind="violation", theorem="restricted", group="Z5",
                      A=data["A"], B=data["B"], t=None, lhs=data["lhs"],
                      rhs=data["rhs"], verdict=data["verdict"],
                      anchor=data["anchor"], seed=4, reports=[data])
    assert replay_finding(Finding.from_dict(finding.to_dict()))
    tampered = dict(data, lev_verdict="violated", new_verdict="violated")
    finding.reports = [tampered]
    assert not replay_finding(finding)


def test_fractional_alpha_replays_exactly(z12_one_removal):
    import json
    from fractions import Fraction
    from popsumkit.io import dumps
    from popsumkit.search.harness import Finding, replay_finding, run_checker
    from popsumkit.theorems.reports import BoundReport

    A, B = z12_one_removal
    report = run_checker("mainprop", A, B, 2, alpha=Fraction(1, 3))
    data = json.loads(dumps(report.to_dict()))
    assert data["details"]["alpha"] == "1/3"
    assert Fraction(BoundReport.from_dict(data).details["alpha"]) == \
        Fraction(1, 3)
    finding = Finding.from_report("violation", report, [report])
    assert replay_finding(Finding.from_dict(
        json.loads(dumps(finding.to_dict()))))


@pytest.mark.parametrize("groups", [["Z7"], ["Z2xZ2"]])
def test_verify_all_up_to_level_three(groups):
    from popsumkit.search.harness import scan

    result = scan(_job(groups=groups, t_min=2, t_max=3))
    assert result.findings == [], [f.to_dict() for f in result.findings]
    assert result.summary.get("new.violated", 0) == 0


@pytest.mark.slow
def test_verify_all_groups_up_to_order_ten():
    from popsumkit.search.harness import scan
    from popsumkit.utils.utils import usable_cpu_count

    groups = ["Z{}".format(n) for n in range(2, 11)]
    groups += ["Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "Z3xZ3", "Z2xZ6"]
    result = scan(_job(groups=groups, t_min=2, t_max=3),
                  workers=usable_cpu_count())
    assert result.findings == [], [f.to_dict() for f in result.findings]
    assert result.summary["new.holds"] > 0


@pytest.mark.slow
def test_verify_all_random_z12():
    from popsumkit.search.harness import scan
    from popsumkit.utils.utils import usable_cpu_count

    job = _job(groups=["Z12"], t_min=2, t_max=3, mode="random", seed=12,
               samples=10000)
    result = scan(job, workers=usable_cpu_count())
    assert result.findings == [], [f.to_dict() for f in result.findings]
    assert result.summary["pairs"] == 10000

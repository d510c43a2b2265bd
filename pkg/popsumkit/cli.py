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
"""Command-line front end.

stdout carries JSON (one object) or JSONL (one object per line) only;
diagnostics go to stderr. Exit codes:

0
    Statement holds, scan clean.
1
    Invalid input or resource limit.
2
    Violation or formula mismatch found.
3
    Hypothesis not met.
"""

import argparse
import logging
import os
import sys

from pathlib import Path

from .constructions import families
from .exceptions import PreconditionError, ResourceLimitError
from .group import FiniteAbelianGroup, Subgroup
from .io import (dumps, load_checkpoint, parse_group_list, parse_set_literal,
                 parse_tau_pairs, save_checkpoint)
from .restricted import TauMap, check_restricted
from .search.harness import (GOALS, MODES, ScanJob, construction_findings,
                             iter_scan, run_checker)
from .theorems.reports import ANCHORS, Verdict
from .utils.utils import batch_random_state, default_worker_count

logger = logging.getLogger(__name__)

__all__ = [
    "main",
]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FINDING = 2
EXIT_HYPOTHESIS = 3

EXIT_CODES = {
    Verdict.HOLDS: EXIT_OK,
    Verdict.VIOLATED: EXIT_FINDING,
    Verdict.HYPOTHESIS_NOT_MET: EXIT_HYPOTHESIS,
}

THEOREMS = sorted(name for name in ANCHORS if name != "restricted")


def _emit(obj, stream=None):
    stream = stream or sys.stdout
    stream.write(dumps(obj))
    stream.write("\n")
    stream.flush()


def _set_arg(group, words):
    """Rejoin a set literal the shell may have split or brace-expanded."""
    if words is None:
        return None
    return parse_set_literal(group, ",".join(words))


def _worst(verdicts):
    if Verdict.VIOLATED in verdicts:
        return EXIT_FINDING
    if Verdict.HYPOTHESIS_NOT_MET in verdicts:
        return EXIT_HYPOTHESIS
    return EXIT_OK


def cmd_check(args) -> int:
    group = FiniteAbelianGroup.from_spec(args.group)
    A = _set_arg(group, args.A)
    B = _set_arg(group, args.B)
    witness = None
    if (args.A_prime is None) != (args.B_prime is None):
        raise ValueError("--A-prime and --B-prime go together")
    if args.A_prime is not None:
        witness = (_set_arg(group, args.A_prime),
                   _set_arg(group, args.B_prime))
    try:
        report = run_checker(args.theorem, A, B, args.t, witness=witness,
                             alpha=args.alpha)
    except PreconditionError as err:
        logger.error("%s", err)
        return EXIT_HYPOTHESIS
    _emit(report.to_dict())
    return EXIT_CODES[report.verdict]


def _scan_job(args) -> ScanJob:
    t_max = args.t if args.t_max is None else args.t_max
    return ScanJob(groups=[g.spec for g in parse_group_list(args.groups)],
                   t_min=args.t, t_max=t_max, mode=args.mode,
                   goal=args.goal, seed=args.seed, samples=args.samples,
                   batch_size=args.batch_size, min_size=args.min_size,
                   max_size=args.max_size, normalize=not args.no_normalize,
                   cap=args.cap, tau_samples=args.tau_samples)


def _open_findings(args, job_hash):
    """Findings stream and resume state."""
    cursor, summary, offset = 0, {}, None
    if args.checkpoint and args.resume:
        cursor, summary, offset = load_checkpoint(args.checkpoint, job_hash)
        logger.info("Resuming at task %d", cursor)
    if args.output is None:
        return sys.stdout, cursor, summary
    path = Path(args.output)
    if cursor and path.exists():
        out = open(path, "r+")
        out.truncate(offset if offset is not None else path.stat().st_size)
        out.seek(0, os.SEEK_END)
    else:
        out = open(path, "w")
    return out, cursor, summary


def cmd_scan(args) -> int:
    job = _scan_job(args)
    job_hash = job.job_hash()
    out, start, summary = _open_findings(args, job_hash)
    total = {"tasks": 0, "pairs": 0, "instances": 0, "findings": 0}
    for key, value in summary.items():
        total[key] = total.get(key, 0) + value
    cursor = start
    try:
        for index, findings, counter in iter_scan(job, args.workers, start):
            for finding in findings:
                _emit(finding.to_dict(), out)
            for key, value in counter.items():
                total[key] = total.get(key, 0) + value
            cursor = index + 1
            if args.checkpoint:
                offset = None if out is sys.stdout else out.tell()
                save_checkpoint(args.checkpoint, job_hash, cursor, total,
                                offset=offset)
            if args.stop_after and cursor - start >= args.stop_after:
                break
    finally:
        if out is not sys.stdout:
            out.close()
    _emit({"schema": 1, "job_hash": job_hash, "cursor": cursor,
           "tasks_total": len(job.tasks()),
           "summary": dict(sorted(total.items()))})
    return EXIT_FINDING if total.get("findings.violation") else EXIT_OK


def _subgroup_arg(group, words, flag):
    if words is None:
        raise ValueError("{} is required for this family".format(flag))
    return Subgroup.from_set(_set_arg(group, words))


def _require(args, *names):
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        raise ValueError("Missing --{} for family {}".format(
            ", --".join(missing), args.family))


def cmd_construct(args) -> int:
    group = FiniteAbelianGroup.from_spec(args.group)
    H = _subgroup_arg(group, args.H, "--H")
    family = args.family
    if family == "minus_self":
        _require(args, "s", "u")
        spec = families.gen_minus_self(group, H, args.s, args.u)
    elif family == "kneser_pair":
        _require(args, "t", "nA", "nB")
        spec = families.gen_kneser_pair(group, H, args.t, args.nA, args.nB)
    elif family == "ap_cosets":
        _require(args, "s", "u", "nA", "nB")
        spec = families.gen_ap_cosets(group, H, args.s, args.u, args.nA,
                                      args.nB)
    else:
        A0 = _set_arg(group, args.A0)
        B0 = _set_arg(group, args.B0)
        if A0 is None or B0 is None:
            raise ValueError("--A0 and --B0 are required for {}"
                             .format(family))
        if family == "recursive_1":
            _require(args, "s", "u")
            spec = families.gen_recursive_1(group, H, args.s, args.u, A0, B0)
        else:
            _require(args, "t", "nA", "nB")
            spec = families.gen_recursive_2(group, H, args.t, args.nA,
                                            args.nB, A0, B0)
    findings = construction_findings(spec)
    record = spec.to_dict()
    record["schema"] = 1
    record["findings"] = [finding.to_dict() for finding in findings]
    _emit(record)
    blocking = [f for f in findings
                if f.kind in ("formula_discrepancy", "violation")]
    return EXIT_FINDING if blocking else EXIT_OK


def _tau_arg(A, text):
    if text == "identity":
        return TauMap.identity(A)
    return TauMap.from_pairs(A, parse_tau_pairs(text))


def cmd_restricted(args) -> int:
    group = FiniteAbelianGroup.from_spec(args.group)
    A = _set_arg(group, args.A)
    B = _set_arg(group, args.B)
    if not args.tau_random:
        report = check_restricted(A, B, _tau_arg(A, args.tau))
        _emit(report.to_dict())
        return EXIT_CODES[report.verdict]
    verdicts = set()
    for k in range(args.samples):
        tau = TauMap.random(A, batch_random_state(args.seed, k))
        report = check_restricted(A, B, tau, seed=args.seed)
        report.details["sample"] = k
        _emit(report.to_dict())
        verdicts.add(report.verdict)
    return _worst(verdicts)


def _add_pair_args(parser):
    parser.add_argument("--group", required=True,
                        help="group spec such as Z12 or Z2xZ4")
    parser.add_argument("--A", nargs="+", required=True,
                        help="set literal such as {0,1,4} or a hex mask")
    parser.add_argument("--B", nargs="+", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="popsumkit",
        description="Exact popular-sumset checks over finite abelian "
                    "groups.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="more diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="check one statement on one pair")
    _add_pair_args(check)
    check.add_argument("--t", type=int)
    check.add_argument("--theorem", required=True, choices=THEOREMS)
    check.add_argument("--alpha", default="0",
                       help="slack of the item check, e.g. 1/2")
    check.add_argument("--A-prime", dest="A_prime", nargs="+")
    check.add_argument("--B-prime", dest="B_prime", nargs="+")
    check.set_defaults(func=cmd_check)

    scan = sub.add_parser("scan", help="scan many pairs, JSONL findings")
    scan.add_argument("--groups", default="Z2..Z10",
                      help="comma separated specs, ranges like Z2..Z10")
    scan.add_argument("--t", type=int, default=2)
    scan.add_argument("--t-max", dest="t_max", type=int)
    scan.add_argument("--mode", choices=MODES, default="exhaustive")
    scan.add_argument("--goal", choices=GOALS, default="verify_all")
    scan.add_argument("--seed", type=int, default=0)
    scan.add_argument("--samples", type=int, default=0)
    scan.add_argument("--batch-size", dest="batch_size", type=int,
                      default=256)
    scan.add_argument("--min-size", dest="min_size", type=int, default=1)
    scan.add_argument("--max-size", dest="max_size", type=int)
    scan.add_argument("--no-normalize", dest="no_normalize",
                      action="store_true",
                      help="enumerate pairs without 0 in A and B as well")
    scan.add_argument("--cap", type=int, default=12,
                      help="largest group order in exhaustive mode")
    scan.add_argument("--tau-samples", dest="tau_samples", type=int,
                      default=200,
                      help="random maps per pair for verify_restricted")
    scan.add_argument("--workers", type=int, default=None,
                      help="processes, default from POPSUMKIT_WORKERS")
    scan.add_argument("--output", help="findings JSONL file")
    scan.add_argument("--checkpoint", help="checkpoint file")
    scan.add_argument("--resume", action="store_true")
    scan.add_argument("--stop-after", dest="stop_after", type=int,
                      help="stop after this many tasks")
    scan.set_defaults(func=cmd_scan)

    construct = sub.add_parser("construct",
                               help="generate an extremal family instance")
    construct.add_argument("--family", required=True,
                           choices=families.FAMILIES)
    construct.add_argument("--group", required=True)
    construct.add_argument("--H", "--K", dest="H", nargs="+", required=True,
                           help="subgroup literal")
    for name in ("s", "u", "t", "nA", "nB"):
        construct.add_argument("--" + name, dest=name, type=int)
    construct.add_argument("--A0", nargs="+")
    construct.add_argument("--B0", nargs="+")
    construct.set_defaults(func=cmd_construct)

    restricted = sub.add_parser("restricted",
                                help="restricted sumset bounds")
    _add_pair_args(restricted)
    restricted.add_argument("--tau", default="identity",
                            help="'identity' or JSON [[a, tau(a)], ...]")
    restricted.add_argument("--tau-random", dest="tau_random",
                            action="store_true")
    restricted.add_argument("--samples", type=int, default=1)
    restricted.add_argument("--seed", type=int, default=0)
    restricted.set_defaults(func=cmd_restricted)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code == 0 else EXIT_ERROR
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[
        min(args.verbose, 2)]
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if getattr(args, "workers", 0) is None:
            args.workers = default_worker_count()
        return args.func(args)
    except (ValueError, ResourceLimitError, OSError) as err:
        logger.error("%s", err)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

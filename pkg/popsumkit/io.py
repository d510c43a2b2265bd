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
"""I/O functionality: literals, JSON reports and scan checkpoints."""

__all__ = [
    "dumps",
    "load_checkpoint",
    "parse_group_list",
    "parse_set_literal",
    "parse_tau_pairs",
    "read_jsonl",
    "save_checkpoint",
    "write_jsonl",
]

import json
import logging
import os
import re

from pathlib import Path
from typing import (Any, Dict, Iterable, Iterator, List, Optional, Tuple,
                    Union)

from .group import FiniteAbelianGroup, GroupSet, parse_element

logger = logging.getLogger(__name__)

CHECKPOINT_SCHEMA = 1

_RANGE_RE = re.compile(r"^Z(\d+)\.\.Z(\d+)$")


def dumps(obj: Any) -> str:
    """Deterministic compact JSON: sorted keys, no spaces."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _split_top_level(text: str) -> List[str]:
    """Split on commas outside parentheses."""
    parts, depth, current = [], 0, []
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("Unbalanced parentheses in {!r}"
                                 .format(text))
        if char == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    if depth != 0:
        raise ValueError("Unbalanced parentheses in {!r}".format(text))
    parts.append("".join(current))
    return [part.strip() for part in parts if part.strip()]


def parse_set_literal(group: FiniteAbelianGroup, text: str) -> GroupSet:
    """Parse ``{0,1,4}``, ``{(1,0),(0,1)}`` or a hex mask ``0x33``.

    Braces are optional, so shells that expand ``{0,1}`` into separate
    words can be rejoined with commas by the caller.

    Raises
    ------
    ValueError
        Malformed literal or element out of range.
    """
    text = text.strip()
    if text.lower().startswith("0x"):
        try:
            mask = int(text, 16)
        except ValueError:
            raise ValueError("Malformed hex mask: {!r}".format(text))
        return GroupSet.from_mask(group, mask)
    if text.startswith("{"):
        if not text.endswith("}"):
            raise ValueError("Malformed set literal: {!r}".format(text))
        text = text[1:-1]
    try:
        elements = [parse_element(group, part)
                    for part in _split_top_level(text)]
    except ValueError as err:
        raise ValueError("Malformed set literal {!r}: {}".format(text, err))
    return GroupSet.from_elements(group, elements)


def parse_group_list(text: str) -> List[FiniteAbelianGroup]:
    """Parse comma separated group specs; ``Z2..Z10`` expands to cyclic
    groups of every order in the range."""
    groups = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        match = _RANGE_RE.match(part)
        if match:
            low, high = int(match.group(1)), int(match.group(2))
            if low > high:
                raise ValueError("Empty group range {!r}".format(part))
            groups.extend(FiniteAbelianGroup([n])
                          for n in range(low, high + 1))
        else:
            groups.append(FiniteAbelianGroup.from_spec(part))
    return groups


def parse_tau_pairs(text: str) -> List[Tuple[int, int]]:
    """Parse a JSON list of ``[a, tau(a)]`` pairs."""
    try:
        pairs = json.loads(text)
    except json.JSONDecodeError as err:
        raise ValueError("Malformed tau pairs: {}".format(err))
    if not isinstance(pairs, list) or not all(
            isinstance(pair, list) and len(pair) == 2 for pair in pairs):
        raise ValueError("tau must be a JSON list of [a, tau(a)] pairs")
    return [(int(a), int(b)) for a, b in pairs]


def write_jsonl(records: Iterable[Dict[str, Any]],
                path: Union[str, Path], append: bool = False) -> int:
    """Write one JSON object per line; returns the number written."""
    mode = "a" if append else "w"
    count = 0
    with open(path, mode) as f:
        for record in records:
            f.write(dumps(record))
            f.write("\n")
            count += 1
    return count


def read_jsonl(path: Union[str, Path]) -> Iterator[Dict[str, Any]]:
    """Iterate over the JSON objects of a JSONL file, skipping blank lines.
    """
    with open(path) as f:
        for line in f:
            if line.strip():
                yield json.loads(line)


def save_checkpoint(path: Union[str, Path], job_hash: str, cursor: int,
                    summary: Dict[str, int],
                    offset: Optional[int] = None) -> None:
    """Atomically record how many tasks of a job are complete.

    Parameters
    ----------
    path : str or Path

    job_hash : str
        Identifies the job; see `popsumkit.search.harness.ScanJob.job_hash`.

    cursor : int
        Number of leading tasks whose results have been written.

    summary : dict
        Counters accumulated over those tasks.

    offset : int, optional
        Size of the findings file once those tasks were written; a resumed
        run truncates the file back to it.
    """
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as f:
        json.dump({"schema": CHECKPOINT_SCHEMA, "job_hash": job_hash,
                   "cursor": int(cursor), "summary": dict(summary),
                   "offset": offset}, f,
                  sort_keys=True)
    os.replace(tmp, path)
    logger.debug("Checkpoint %s at cursor %d", path, cursor)


def load_checkpoint(path: Union[str, Path], job_hash: str
                    ) -> Tuple[int, Dict[str, int], Optional[int]]:
    """Read a checkpoint written by `save_checkpoint`.

    Returns
    -------
    cursor : int
        0 when the file does not exist.

    summary : dict

    offset : int or None

    Raises
    ------
    ValueError
        Unknown schema or a checkpoint of a different job.
    """
    path = Path(path)
    if not path.exists():
        return 0, {}, None
    with open(path) as f:
        data = json.load(f)
    if data.get("schema") != CHECKPOINT_SCHEMA:
        raise ValueError("Unsupported checkpoint schema in {}".format(path))
    if data.get("job_hash") != job_hash:
        raise ValueError("Checkpoint {} belongs to a different job"
                         .format(path))
    summary = {key: int(value)
               for key, value in data.get("summary", {}).items()}
    return int(data["cursor"]), summary, data.get("offset")

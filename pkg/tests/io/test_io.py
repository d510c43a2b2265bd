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

import json

from pathlib import Path

import pytest

from popsumkit import io
from popsumkit.group import FiniteAbelianGroup


@pytest.fixture
def z2z4() -> FiniteAbelianGroup:
    return FiniteAbelianGroup.from_spec("Z2xZ4")


@pytest.fixture
def checkpoint_path(tmp_path: Path) -> Path:
    return tmp_path / "scan.ckpt"


def test_parse_set_literal_forms(z2z4: FiniteAbelianGroup) -> None:
    assert io.parse_set_literal(z2z4, "{0,1,4}").to_list() == [0, 1, 4]
    assert io.parse_set_literal(z2z4, "0,1,4").to_list() == [0, 1, 4]
    assert io.parse_set_literal(z2z4, "{(1,3),(0,1)}").to_list() == [1, 7]
    assert io.parse_set_literal(z2z4, "0x13").to_list() == [0, 1, 4]
    assert io.parse_set_literal(z2z4, "{}").is_empty()


@pytest.mark.parametrize("text", ["{0,1", "{8}", "{(1,0}", "0xzz",
                                  "{a}", "0x1ff"])
def test_parse_set_literal_errors(z2z4: FiniteAbelianGroup,
                                  text: str) -> None:
    with pytest.raises(ValueError):
        io.parse_set_literal(z2z4, text)


def test_parse_group_list() -> None:
    groups = io.parse_group_list("Z2..Z5, Z2xZ2")
    assert [G.spec for G in groups] == ["Z2", "Z3", "Z4", "Z5", "Z2xZ2"]
    with pytest.raises(ValueError):
        io.parse_group_list("Z5..Z2")
    with pytest.raises(ValueError):
        io.parse_group_list("Q8")


def test_parse_tau_pairs() -> None:
    assert io.parse_tau_pairs("[[0, 1], [1, 0]]") == [(0, 1), (1, 0)]
    with pytest.raises(ValueError):
        io.parse_tau_pairs("[[0, 1, 2]]")
    with pytest.raises(ValueError):
        io.parse_tau_pairs("not json")


def test_dumps_is_canonical() -> None:
    assert io.dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


def test_jsonl(tmp_path: Path) -> None:
    path = tmp_path / "findings.jsonl"
    assert io.write_jsonl([{"x": 1}, {"x": 2}], path) == 2
    assert io.write_jsonl([{"x": 3}], path, append=True) == 1
    assert [record["x"] for record in io.read_jsonl(path)] == [1, 2, 3]


def test_checkpoint_roundtrip(checkpoint_path: Path) -> None:
    assert io.load_checkpoint(checkpoint_path, "abc") == (0, {}, None)
    io.save_checkpoint(checkpoint_path, "abc", 17, {"pairs": 40}, offset=99)
    assert io.load_checkpoint(checkpoint_path, "abc") == (17, {"pairs": 40},
                                                           99)
    assert not checkpoint_path.with_name("scan.ckpt.tmp").exists()


def test_checkpoint_rejects_other_jobs(checkpoint_path: Path) -> None:
    io.save_checkpoint(checkpoint_path, "abc", 3, {})
    with pytest.raises(ValueError):
        io.load_checkpoint(checkpoint_path, "def")
    checkpoint_path.write_text(json.dumps({"schema": 99, "job_hash": "abc",
                                           "cursor": 0}))
    with pytest.raises(ValueError):
        io.load_checkpoint(checkpoint_path, "abc")

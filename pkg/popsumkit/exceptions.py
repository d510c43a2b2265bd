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
"""Exceptions raised by several subpackages."""

__all__ = [
    "PreconditionError",
    "ResourceLimitError",
]


class PreconditionError(ValueError):
    """An operation was called on inputs outside its stated domain.

    Distinct from a "hypothesis not met" verdict: checkers report unmet
    theorem hypotheses in their reports, while this error signals that an
    operation cannot produce a meaningful result at all.
    """


class ResourceLimitError(RuntimeError):
    """A configured size cap (group order, enumeration count) was exceeded."""

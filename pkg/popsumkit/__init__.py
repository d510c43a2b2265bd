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
"""Popular Sumset Toolkit.

Exact checks of popular-sumset bounds over finite abelian groups, witness
search, extremal constructions and scanning harnesses.
"""

import sys

if sys.version_info < (3, 8):
    raise Exception(
        "Please use Python version 3.8 or higher, "
        "lower versions are not supported"
    )

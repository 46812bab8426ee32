# Copyright 2026 The finmeas Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact finite measure theory.

Rationals are returned as :class:`fractions.Fraction`; inputs may be ints,
Fractions or strings such as ``"3/4"``.
"""

from ._core import *  # noqa: F401,F403
from ._core import Error, run_cli


def cli(*args):
    """Run one ``finmeas`` command in-process; returns (exit code, stdout, stderr)."""
    return run_cli([str(a) for a in args])


__all__ = [name for name in dir() if not name.startswith("_")]

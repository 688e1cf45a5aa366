# Copyright 2026 The poncelet-lab Authors
#
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


"""Periodic billiard trajectories in an ellipse.

Thin wrappers over the compiled core; JSON documents come back as dicts.
"""

import json

from ._core import (
    Family,
    PonceletError,
    classify,
    family,
    orbit,
    sweep,
)
from . import _core

__all__ = [
    "Family",
    "PonceletError",
    "api",
    "catalog",
    "classify",
    "family",
    "orbit",
    "sweep",
    "validate_report",
    "verify",
]


def verify(configs, samples=128, ids=(), diagnostics=False, threads=1, series=False):
    """Classify catalog rows over (a, b, n) configs; returns the report document."""
    text = _core.verify_json(
        [tuple(c) for c in configs], samples, list(ids), diagnostics, threads, series
    )
    return json.loads(text)


def validate_report(doc):
    return _core.validate_report_json(json.dumps(doc))


def catalog():
    return json.loads(_core.catalog_json())


def api(path, **query):
    """Calls an HTTP endpoint in-process. Returns (status, payload)."""
    status, body = _core.api(path, {k: str(v) for k, v in query.items()})
    return status, json.loads(body)

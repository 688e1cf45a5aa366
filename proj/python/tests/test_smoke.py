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


import json
import math
import os
import pathlib

import jsonschema
import pytest

import poncelet_lab as pl

SCHEMA = pathlib.Path(
    os.environ.get(
        "PONCELET_SCHEMA",
        pathlib.Path(__file__).resolve().parents[2] / "docs" / "report.schema.json",
    )
)
S5 = math.sqrt(5.0)


def test_rhombus_family():
    f = pl.family(2.0, 1.0, 4)
    assert f.a_c == pytest.approx(4 / S5, abs=1e-10)
    assert f.b_c == pytest.approx(1 / S5, abs=1e-10)
    assert f.J == pytest.approx(1 / S5, abs=1e-10)
    assert f.L == pytest.approx(4 * S5, abs=1e-10)
    assert f.n == 4 and f.w == 1


def test_bad_config_raises_value_error():
    with pytest.raises(ValueError):
        pl.family(1.0, 2.0, 4)
    with pytest.raises(ValueError):
        pl.family(2.0, 1.0, 2)


def test_orbit_is_periodic_and_closes():
    f = pl.family(1.5, 1.0, 5)
    a = pl.orbit(f, 0.4)
    b = pl.orbit(f, 0.4 + 2 * math.pi)
    assert len(a["vertices"]) == 5
    assert a["closure_error"] < 1e-9
    for p, q in zip(a["vertices"], b["vertices"]):
        assert math.dist(p, q) < 1e-12
    # every vertex on the billiard
    for x, y in a["vertices"]:
        assert x * x / 2.25 + y * y == pytest.approx(1.0, abs=1e-12)


def test_sweep_and_classify():
    f = pl.family(2.0, 1.0, 4)
    s = pl.sweep("k101", f, samples=64)
    assert len(s["t"]) == 64 and not s["skipped"]
    assert max(abs(v[0]) for v in s["values"]) < 1e-10
    verdict, mean, dev = pl.classify(s["values"])
    assert verdict == "invariant"

    r = pl.sweep("k201", f, anchor="f1", samples=32)
    for lo, hi in r["values"]:
        assert lo == pytest.approx(4 / S5, rel=1e-10)
        assert hi == pytest.approx(4 / S5, rel=1e-10)

    with pytest.raises(KeyError):
        pl.sweep("k000", f)
    assert pl.classify([[1.0], [1.01]])[0] == "not_invariant"


def test_verify_report_matches_schema():
    doc = pl.verify([(2.0, 1.0, 5), (1.5, 1.0, 6)], samples=32, ids=["k101", "k118", "k201", "k306"])
    jsonschema.validate(doc, json.loads(SCHEMA.read_text()))
    assert pl.validate_report(doc) == []
    assert doc["summary"]["failed"] == 0
    ids = {r["id"] for r in doc["reports"]}
    assert ids == {"k101", "k118", "k201", "k306"}
    for r in doc["reports"]:
        if r["id"] == "k118":
            half = pl.family(2.0, 1.0, 5).L / 2
            assert r["mean"] == pytest.approx([half, half], rel=1e-10)


def test_flagged_report_carries_its_series():
    doc = pl.verify([(2.0, 1.0, 4)], samples=16, ids=["k806b"])
    jsonschema.validate(doc, json.loads(SCHEMA.read_text()))
    for r in doc["reports"]:
        assert "flag" in r and r["passed"]
        assert len(r["series"]) == 16


def test_catalog_and_api():
    cat = pl.catalog()
    assert cat["count"] == 96 and cat["base_ids"] == 82
    status, body = pl.api("/api/family", a=2, b=1, n=4)
    assert status == 200 and body["L"] == pytest.approx(4 * S5)
    status, body = pl.api("/api/family", a=2, n=4)
    assert status == 400 and body["param"] == "b"
    status, body = pl.api("/api/orbit", a=2, b=1, n=4, t=0, layers="outer")
    assert status == 200
    corners = sorted((round(x, 9), round(y, 9)) for x, y in body["layers"]["outer"])
    assert corners == [(-2, -1), (-2, 1), (2, -1), (2, 1)]

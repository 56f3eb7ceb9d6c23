# Copyright 2026 The slopekit Authors
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
import pathlib

import pytest

import slopekit as sk

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


@pytest.fixture
def e3():
    return sk.load_instance(DATA / "e3.json")


def test_e3_slopes(e3):
    s = sk.slopes(e3, "f")
    assert s["global"] == {"a": 0.0, "b": 1.0, "c": 2.0}
    assert s["local"] == {"a": 0.0, "b": 1.0, "c": 2.0}


def test_critical_sets(e3):
    assert sk.critical_set(e3, "f", 0.0) == ["a"]
    assert sk.critical_set(e3, "f", 1.0, mode="global") == ["a", "b"]


def test_ekeland_and_descent(e3):
    assert sk.ekeland_point(e3, "c", 1.0) == "a"
    trace = sk.descent(e3, "c")
    assert trace["points"][-1] == "a"
    assert trace["terminal"] == "reached_0crit"


def test_hypothesis_violation_raises(e3):
    with pytest.raises(sk.PreconditionError):
        sk.descent(e3, "c", g="steep")
    assert sk.check("tz", e3, "f", "steep")["exit_code"] == 1


def test_check_tz(e3):
    rep = sk.check("tz", e3, "f", "g")
    assert rep["hypothesis"] == "satisfied"
    assert rep["conclusion"] == "verified"


def test_validate_metric():
    assert sk.validate_metric([[0, 1, 2], [1, 0, 1], [2, 1, 0]])["ok"]
    assert not sk.validate_metric([[0, 1, 3], [1, 0, 1], [3, 1, 0]])["ok"]
    with pytest.raises(sk.ShapeError):
        sk.validate_metric([[0, 1], [1]])


def test_convex1d():
    f = json.loads((DATA / "abs.json").read_text())
    g = json.loads((DATA / "abs_plus5.json").read_text())
    assert sk.slope_pl(f, 2.0) == 1.0
    assert sk.subdifferential(f, 0.0) == (-1.0, 1.0)
    assert sk.mr_check(f, g)["constant"] == -5.0
    assert "mismatch_at" in sk.mr_check(f, json.loads((DATA / "abs_twice.json").read_text()))


def test_generated_instance_round_trips():
    inst = sk.gen_instance(5, 6, "grid", p_inf=0.2)
    assert len(inst["points"]) == 6
    assert set(sk.slopes(inst)["global"]) == set(inst["points"])


def test_tolerance_override():
    old = sk.tolerance()
    try:
        sk.set_tolerance(1e-6)
        assert sk.tolerance() == 1e-6
    finally:
        sk.set_tolerance(old)


def test_small_suite():
    report = sk.run_suite({"instances": 20, "seed": 3}, threads=2)
    assert report["summary"]["ok"]
    assert report["summary"]["evaluations"] > 0

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

"""Slopes, critical sets and descent on finite metric spaces."""

import json

from . import _core
from ._core import (
    DomainError,
    Error,
    FatalFinding,
    InputError,
    ParameterError,
    PreconditionError,
    ShapeError,
    set_tolerance,
    tolerance,
)

__all__ = [
    "DomainError",
    "Error",
    "FatalFinding",
    "InputError",
    "ParameterError",
    "PreconditionError",
    "ShapeError",
    "check",
    "critical_set",
    "descent",
    "ekeland_point",
    "gen_instance",
    "load_instance",
    "mr_check",
    "pasch_hausdorff",
    "run_suite",
    "set_tolerance",
    "slope_pl",
    "slopes",
    "subdifferential",
    "tolerance",
    "validate_metric",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def load_instance(path):
    """Reads an instance file and returns it as a validated dict."""
    with open(path, encoding="utf-8") as fh:
        return json.loads(_core.normalize_instance(fh.read()))


def validate_metric(dist):
    return json.loads(_core.validate_metric(dist))


def gen_instance(seed, n, kind="graph", p_inf=0.0, fields=("f", "g")):
    return json.loads(_core.gen_instance(seed, n, kind, p_inf, list(fields)))


def slopes(instance, field="f"):
    """Returns {"local": {id: slope}, "global": {id: slope}}; None off dom f."""
    return _core.slopes(_text(instance), field)


def critical_set(instance, field="f", eps=0.0, mode="local"):
    return _core.critical_set(_text(instance), field, eps, mode)


def pasch_hausdorff(instance, field="f", eps=1.0):
    return _core.pasch_hausdorff(_text(instance), field, eps)


def ekeland_point(instance, start, lam, field="f"):
    return _core.ekeland_point(_text(instance), field, start, lam)


def descent(instance, start, f="f", g="g", eps0=1.0, steps=64, mode="local"):
    return json.loads(_core.descent(_text(instance), f, g, start, eps0, steps, mode))


def check(which, instance, f="f", g="g", r=0.5, eps=1.0):
    return json.loads(_core.check(which, _text(instance), f, g, r, eps))


def slope_pl(f, x):
    return _core.slope_pl(_text(f), x)


def subdifferential(f, x):
    return _core.subdifferential(_text(f), x)


def mr_check(f, g):
    return json.loads(_core.mr_check(_text(f), _text(g)))


def run_suite(config=None, threads=0):
    return json.loads(_core.run_suite(_text(config or {}), threads))

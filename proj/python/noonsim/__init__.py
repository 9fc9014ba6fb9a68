# Copyright 2026 The noonsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the noonsim heralded NOON-state simulator.

Configs are passed as dicts (or JSON strings) using the CLI schema.
"""

import json

from . import _core
from ._core import (
    NoonsimError,
    cascade_probs,
    engine_version,
    fidelity_lower_bound,
    fit,
    fom,
    hom_dip_visibility,
    hom_scan,
    preset_names,
    subtract_triple_pair,
)

__all__ = [
    "NoonsimError",
    "cascade_probs",
    "default_config",
    "engine_version",
    "fidelity_lower_bound",
    "fit",
    "fom",
    "fringe_scan",
    "herald_probability",
    "hom_dip_visibility",
    "hom_scan",
    "hwp2_calibration_scan",
    "mc_counts",
    "preset_names",
    "subtract_triple_pair",
]


def _text(config):
    if config is None:
        return ""
    if isinstance(config, str):
        return config
    return json.dumps(config)


def default_config():
    return json.loads(_core.default_config())


def herald_probability(config=None):
    return _core.herald_probability(_text(config))


def fringe_scan(config, angles_deg):
    return _core.fringe_scan(_text(config), list(angles_deg))


def mc_counts(config, angles_deg, pulses, seed=1, workers=0):
    return _core.mc_counts(_text(config), list(angles_deg), pulses, seed, workers)


def hwp2_calibration_scan(config, angles_deg):
    return _core.hwp2_calibration_scan(_text(config), list(angles_deg))

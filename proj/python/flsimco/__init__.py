# Copyright 2026 The FLSimCo Authors
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

"""Python bindings for the FLSimCo simulator core."""

from flsimco._core import (
    ConfigError,
    DataError,
    NoSurvivorsError,
    NumericalError,
    aggregate_discard,
    aggregate_fedavg,
    aggregate_flsimco,
    apply_motion_blur,
    blur_level,
    curve_stats,
    dt_loss,
    flsimco_weights,
    info_nce,
    normalize_config,
    run,
    sample_velocities,
    summarize,
    truncated_gaussian_cdf,
    truncated_gaussian_pdf,
)

__all__ = [
    "ConfigError",
    "DataError",
    "NoSurvivorsError",
    "NumericalError",
    "aggregate_discard",
    "aggregate_fedavg",
    "aggregate_flsimco",
    "apply_motion_blur",
    "blur_level",
    "curve_stats",
    "dt_loss",
    "flsimco_weights",
    "info_nce",
    "normalize_config",
    "run",
    "sample_velocities",
    "summarize",
    "truncated_gaussian_cdf",
    "truncated_gaussian_pdf",
]

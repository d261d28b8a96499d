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

import math
from pathlib import Path

import numpy as np
import pytest

import flsimco


def test_pdf_is_zero_outside_window_and_integrates_to_one():
    assert flsimco.truncated_gaussian_pdf(10.0) == 0.0
    assert flsimco.truncated_gaussian_pdf(50.0) == 0.0
    grid = np.linspace(16.67, 41.67, 20001)
    mass = np.trapz([flsimco.truncated_gaussian_pdf(v) for v in grid], grid)
    assert mass == pytest.approx(1.0, abs=1e-6)
    assert flsimco.truncated_gaussian_cdf(41.67) == pytest.approx(1.0)


def test_samples_are_seeded_and_bounded():
    a = flsimco.sample_velocities(500, seed=3)
    assert a == flsimco.sample_velocities(500, seed=3)
    assert min(a) >= 16.67 and max(a) <= 41.67
    with pytest.raises(ValueError):
        flsimco.sample_velocities(1, sigma=-1.0)


def test_blur_level_and_constant_image():
    assert flsimco.blur_level(27.78) == pytest.approx(10.0008)
    img = np.full((8, 8, 3), 0.4)
    out = flsimco.apply_motion_blur(img, 5.0)
    assert out.shape == img.shape
    np.testing.assert_allclose(out, img, atol=1e-12)
    np.testing.assert_array_equal(flsimco.apply_motion_blur(img[:, :, 0], 0.0), img[:, :, 0])


def test_dt_loss_matches_info_nce_with_equal_temperatures():
    a, p, n = [1.0, 0.0], [0.8, 0.6], [[0.0, 1.0]]
    assert flsimco.dt_loss(a, p, n, 0.2, 0.2) == pytest.approx(flsimco.info_nce(a, p, n, 0.2), rel=1e-12)
    with pytest.raises(ValueError):
        flsimco.dt_loss([2.0, 0.0], p, n)


def test_aggregation():
    assert flsimco.flsimco_weights([1.0, 3.0]) == [0.75, 0.25]
    params, weights = flsimco.aggregate_flsimco([[4.0, 0.0], [0.0, 8.0]], [1.0, 3.0])
    assert params == [3.0, 2.0] and weights == [0.75, 0.25]
    assert flsimco.aggregate_fedavg([[1.0], [3.0]])[0] == [2.0]
    assert flsimco.aggregate_discard([[1.0], [9.0]], [20.0, 35.0])[0] == [1.0]
    with pytest.raises(flsimco.NoSurvivorsError):
        flsimco.aggregate_discard([[1.0]], [35.0])


def test_curve_stats():
    s = flsimco.curve_stats([1.0, 0.5, 0.75])
    assert s["difference_std"] == pytest.approx(0.75 / math.sqrt(2.0))
    assert s["final"] == 0.75 and s["min"] == 0.5


def test_config_errors_name_the_key():
    with pytest.raises(flsimco.ConfigError, match="tau_alpha"):
        flsimco.normalize_config("[loss]\ntau_alpha = -1\n")
    text = flsimco.normalize_config("")
    assert flsimco.normalize_config(text) == text


TINY = """
[experiment]
strategies = flsimco,fedavg
seeds = 0
[encoder]
hidden_widths = 16
embed_dim = 8
[sgd]
lr0 = 0.06
[data]
classes = 4
per_class = 20
side = 4
[partition]
n_vehicles = 8
min_per_vehicle = 8
[round]
max_rounds = 2
vehicles_per_round = 3
batch_size = 5
[probe]
k = 5
train_per_class = 10
test_per_class = 5
"""


def test_run_and_summarize(tmp_path: Path):
    series = flsimco.run(TINY, tmp_path)
    assert [s["strategy"] for s in series] == ["flsimco", "fedavg"]
    assert all(len(s["losses"]) == 2 for s in series)
    summary = (tmp_path / "summary.csv").read_bytes()
    (tmp_path / "summary.csv").unlink()
    flsimco.summarize(tmp_path)
    assert (tmp_path / "summary.csv").read_bytes() == summary
    rows = (tmp_path / "rounds.csv").read_text().splitlines()
    assert rows[0].startswith("strategy,seed,round")
    assert len(rows) == 5

// Copyright 2026 The FLSimCo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "flsimco/cli/commands.hpp"
#include "flsimco/cli/run_config.hpp"
#include "flsimco/common/errors.hpp"
#include "flsimco/common/random.hpp"
#include "flsimco/eval/curves.hpp"
#include "flsimco/federation/aggregation.hpp"
#include "flsimco/imaging/blur.hpp"
#include "flsimco/mobility/mobility.hpp"
#include "flsimco/ssl/dt_loss.hpp"

namespace py = pybind11;

namespace flsimco {
namespace {

mobility::MobilityParams Mobility(double mu, double sigma, double v_min, double v_max) {
  mobility::MobilityParams p{mu, sigma, v_min, v_max};
  p.Validate();
  return p;
}

std::vector<ssl::ParamVector> ToParams(const std::vector<std::vector<double>>& models) {
  std::vector<ssl::ParamVector> out;
  for (const auto& m : models) {
    ssl::ParamLayout layout;
    layout.Add("theta", 1, m.size());
    out.push_back({m, layout});
  }
  return out;
}

py::tuple FromResult(const federation::AggregationResult& r) {
  return py::make_tuple(r.params.values, r.weights);
}

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Accepts (H, W) or (H, W, C) arrays and returns the same shape.
Array MotionBlur(const Array& input, double level) {
  if (input.ndim() != 2 && input.ndim() != 3) throw ContractError("apply_motion_blur: expected a 2-D or 3-D array");
  const auto h = static_cast<std::size_t>(input.shape(0));
  const auto w = static_cast<std::size_t>(input.shape(1));
  const auto c = input.ndim() == 3 ? static_cast<std::size_t>(input.shape(2)) : std::size_t{1};
  imaging::Image img(w, h, c, std::vector<double>(input.data(), input.data() + input.size()));
  const auto out = imaging::ApplyMotionBlur(img, imaging::BlurLevel{level});
  Array result(std::vector<py::ssize_t>(input.shape(), input.shape() + input.ndim()));
  std::copy(out.pixels().begin(), out.pixels().end(), result.mutable_data());
  return result;
}

py::list SeriesToPython(const std::vector<eval::RunSeries>& runs) {
  py::list out;
  for (const auto& r : runs) {
    py::dict d;
    d["strategy"] = r.strategy;
    d["seed"] = r.seed;
    d["losses"] = r.losses;
    d["top1"] = r.top1;
    out.append(d);
  }
  return out;
}

}  // namespace
}  // namespace flsimco

PYBIND11_MODULE(_core, m) {
  using namespace flsimco;
  m.doc() = "FLSimCo core bindings";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<DataError>(m, "DataError", PyExc_IOError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<federation::NoSurvivorsError>(m, "NoSurvivorsError", PyExc_RuntimeError);

  m.def(
      "truncated_gaussian_pdf",
      [](double v, double mu, double sigma, double v_min, double v_max) {
        return mobility::TruncatedGaussianPdf(v, Mobility(mu, sigma, v_min, v_max));
      },
      py::arg("v"), py::arg("mu") = 29.17, py::arg("sigma") = 8.0, py::arg("v_min") = 16.67, py::arg("v_max") = 41.67);
  m.def(
      "truncated_gaussian_cdf",
      [](double v, double mu, double sigma, double v_min, double v_max) {
        return mobility::TruncatedGaussianCdf(v, Mobility(mu, sigma, v_min, v_max));
      },
      py::arg("v"), py::arg("mu") = 29.17, py::arg("sigma") = 8.0, py::arg("v_min") = 16.67, py::arg("v_max") = 41.67);
  m.def(
      "sample_velocities",
      [](std::size_t n, std::uint64_t seed, double mu, double sigma, double v_min, double v_max) {
        const auto p = Mobility(mu, sigma, v_min, v_max);
        Rng rng = MakeRng(seed, 0, 0, "velocity");
        std::vector<double> out(n);
        for (auto& v : out) v = mobility::SampleVelocity(rng, p).value;
        return out;
      },
      py::arg("n"), py::arg("seed") = 0, py::arg("mu") = 29.17, py::arg("sigma") = 8.0, py::arg("v_min") = 16.67,
      py::arg("v_max") = 41.67);

  m.def(
      "blur_level",
      [](double velocity, double exposure_time, double focal_length, double pixel_unit) {
        imaging::CameraParams camera{exposure_time, focal_length, pixel_unit};
        camera.Validate();
        return imaging::ComputeBlurLevel(mobility::Velocity{velocity}, camera).pixels;
      },
      py::arg("velocity"), py::arg("exposure_time") = 0.01, py::arg("focal_length") = 0.036,
      py::arg("pixel_unit") = 0.001);
  m.def("apply_motion_blur", &MotionBlur, py::arg("image"), py::arg("level"));

  m.def(
      "dt_loss",
      [](std::vector<double> anchor, std::vector<double> positive, std::vector<std::vector<double>> negatives,
         double tau_alpha, double tau_beta) {
        return ssl::DtLoss({std::move(anchor), std::move(positive), std::move(negatives)}, {tau_alpha, tau_beta});
      },
      py::arg("anchor"), py::arg("positive"), py::arg("negatives"), py::arg("tau_alpha") = 0.1,
      py::arg("tau_beta") = 1.0);
  m.def(
      "info_nce",
      [](std::vector<double> anchor, std::vector<double> positive, std::vector<std::vector<double>> negatives,
         double tau) { return ssl::InfoNce({std::move(anchor), std::move(positive), std::move(negatives)}, tau); },
      py::arg("anchor"), py::arg("positive"), py::arg("negatives"), py::arg("tau") = 0.1);

  m.def(
      "flsimco_weights",
      [](const std::vector<double>& blurs, bool normalize) { return federation::FlsimcoWeights(blurs, normalize); },
      py::arg("blurs"), py::arg("normalize") = true);
  m.def(
      "aggregate_flsimco",
      [](const std::vector<std::vector<double>>& models, const std::vector<double>& blurs, bool normalize) {
        return FromResult(federation::AggregateFlsimco(ToParams(models), blurs, normalize));
      },
      py::arg("models"), py::arg("blurs"), py::arg("normalize") = true);
  m.def(
      "aggregate_fedavg",
      [](const std::vector<std::vector<double>>& models) {
        return FromResult(federation::AggregateFedAvg(ToParams(models)));
      },
      py::arg("models"));
  m.def(
      "aggregate_discard",
      [](const std::vector<std::vector<double>>& models, const std::vector<double>& velocities, double threshold) {
        return FromResult(federation::AggregateDiscard(ToParams(models), velocities, threshold));
      },
      py::arg("models"), py::arg("velocities"), py::arg("threshold") = 27.78);

  m.def(
      "curve_stats",
      [](const std::vector<double>& losses) {
        const auto s = eval::ComputeCurveStats(losses);
        py::dict d;
        d["differences"] = s.differences;
        d["difference_std"] = s.difference_std;
        d["final"] = s.final_value;
        d["min"] = s.min_value;
        return d;
      },
      py::arg("losses"));

  m.def(
      "normalize_config", [](const std::string& text) { return cli::SerializeConfig(cli::ParseConfigText(text)); },
      py::arg("text"));
  m.def(
      "run",
      [](const std::string& config_text, const std::filesystem::path& out_dir) {
        const auto config = cli::ParseConfigText(config_text);
        std::vector<eval::RunSeries> runs;
        {
          py::gil_scoped_release release;
          runs = cli::RunAll(config, out_dir);
        }
        return SeriesToPython(runs);
      },
      py::arg("config_text"), py::arg("out_dir"));
  m.def(
      "summarize", [](const std::filesystem::path& dir) { cli::Summarize(dir); }, py::arg("dir"));
}

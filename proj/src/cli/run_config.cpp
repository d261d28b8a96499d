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

#include "flsimco/cli/run_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "flsimco/common/errors.hpp"
#include "flsimco/common/format.hpp"

namespace flsimco::cli {

namespace {

struct Field {
  std::string section;
  std::string name;
  std::function<std::string(const RunConfig&)> get;
  // Throws std::invalid_argument with a reason.
  std::function<void(RunConfig&, std::string_view)> set;
};

std::string QualifiedName(const Field& field) { return field.section + "." + field.name; }

double ToDouble(std::string_view text) {
  const double value = ParseDouble(text);
  if (!std::isfinite(value)) throw std::invalid_argument("expected a finite number");
  return value;
}

std::uint64_t ToUnsigned(std::string_view text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return value;
}

long long ToInteger(std::string_view text) {
  long long value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool ToBool(std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(text) + "'");
}

std::vector<std::string> ToList(std::string_view text) {
  std::vector<std::string> out;
  if (Trim(text).empty()) return out;
  for (const auto& item : Split(text, ',')) {
    const auto trimmed = Trim(item);
    if (trimmed.empty()) throw std::invalid_argument("empty list element");
    out.emplace_back(trimmed);
  }
  return out;
}

template <typename T>
std::string JoinList(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    if constexpr (std::is_same_v<T, std::string>) {
      out += values[i];
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

double Positive(double v) {
  if (!(v > 0.0)) throw std::invalid_argument("must be positive");
  return v;
}

double NonNegative(double v) {
  if (!(v >= 0.0)) throw std::invalid_argument("must be nonnegative");
  return v;
}

double UnitInterval(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("must lie in [0, 1]");
  return v;
}

long long AtLeast(long long v, long long lo) {
  if (v < lo) throw std::invalid_argument("must be at least " + std::to_string(lo));
  return v;
}

// Field helpers. `Ref` maps the RunConfig to the member being edited.
template <typename Ref>
Field RealField(std::string section, std::string name, Ref ref, double (*check)(double) = nullptr) {
  return Field{std::move(section), std::move(name),
               [ref](const RunConfig& c) { return FormatDouble(ref(c)); },
               [ref, check](RunConfig& c, std::string_view v) {
                 double value = ToDouble(v);
                 if (check != nullptr) value = check(value);
                 ref(c) = value;
               }};
}

template <typename Ref>
Field IntField(std::string section, std::string name, Ref ref, long long min) {
  return Field{std::move(section), std::move(name),
               [ref](const RunConfig& c) { return std::to_string(ref(c)); },
               [ref, min](RunConfig& c, std::string_view v) {
                 using T = std::remove_reference_t<decltype(ref(c))>;
                 ref(c) = static_cast<T>(AtLeast(ToInteger(v), min));
               }};
}

template <typename Ref>
Field BoolField(std::string section, std::string name, Ref ref) {
  return Field{std::move(section), std::move(name),
               [ref](const RunConfig& c) { return std::string(ref(c) ? "true" : "false"); },
               [ref](RunConfig& c, std::string_view v) { ref(c) = ToBool(v); }};
}

template <typename Ref>
Field TextField(std::string section, std::string name, Ref ref) {
  return Field{std::move(section), std::move(name),
               [ref](const RunConfig& c) { return ref(c); },
               [ref](RunConfig& c, std::string_view v) { ref(c) = std::string(v); }};
}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    // experiment
    f.push_back(Field{"experiment", "master_seed", [](const RunConfig& c) { return std::to_string(c.master_seed); },
                      [](RunConfig& c, std::string_view v) { c.master_seed = ToUnsigned(v); }});
    f.push_back(TextField("experiment", "output_dir", [](auto& c) -> auto& { return c.output_dir; }));
    f.push_back(Field{"experiment", "strategies", [](const RunConfig& c) { return JoinList(c.strategies); },
                      [](RunConfig& c, std::string_view v) {
                        auto list = ToList(v);
                        if (list.empty()) throw std::invalid_argument("needs at least one strategy");
                        for (const auto& s : list) federation::ParseStrategy(s);
                        c.strategies = std::move(list);
                      }});
    f.push_back(Field{"experiment", "seeds", [](const RunConfig& c) { return JoinList(c.seeds); },
                      [](RunConfig& c, std::string_view v) {
                        std::vector<std::uint64_t> seeds;
                        for (const auto& s : ToList(v)) seeds.push_back(ToUnsigned(s));
                        if (seeds.empty()) throw std::invalid_argument("needs at least one seed");
                        c.seeds = std::move(seeds);
                      }});
    // mobility
    f.push_back(RealField("mobility", "mu", [](auto& c) -> auto& { return c.experiment.mobility.mu; }));
    f.push_back(RealField("mobility", "sigma", [](auto& c) -> auto& { return c.experiment.mobility.sigma; },
                          Positive));
    f.push_back(RealField("mobility", "v_min", [](auto& c) -> auto& { return c.experiment.mobility.v_min; },
                          NonNegative));
    f.push_back(RealField("mobility", "v_max", [](auto& c) -> auto& { return c.experiment.mobility.v_max; },
                          Positive));
    // camera
    f.push_back(RealField("camera", "exposure_time",
                          [](auto& c) -> auto& { return c.experiment.camera.exposure_time; }, NonNegative));
    f.push_back(RealField("camera", "focal_length",
                          [](auto& c) -> auto& { return c.experiment.camera.focal_length; }, NonNegative));
    f.push_back(RealField("camera", "pixel_unit",
                          [](auto& c) -> auto& { return c.experiment.camera.pixel_unit; }, Positive));
    // encoder
    f.push_back(Field{"encoder", "hidden_widths",
                      [](const RunConfig& c) { return JoinList(c.experiment.hidden_widths); },
                      [](RunConfig& c, std::string_view v) {
                        std::vector<std::size_t> widths;
                        for (const auto& s : ToList(v)) widths.push_back(static_cast<std::size_t>(AtLeast(ToInteger(s), 1)));
                        c.experiment.hidden_widths = std::move(widths);
                      }});
    f.push_back(IntField("encoder", "embed_dim", [](auto& c) -> auto& { return c.experiment.embed_dim; },
                         1));
    // loss
    f.push_back(RealField("loss", "tau_alpha", [](auto& c) -> auto& { return c.experiment.loss.tau_alpha; },
                          Positive));
    f.push_back(RealField("loss", "tau_beta", [](auto& c) -> auto& { return c.experiment.loss.tau_beta; },
                          Positive));
    // sgd
    f.push_back(RealField("sgd", "lr0", [](auto& c) -> auto& { return c.experiment.sgd.lr0; }, Positive));
    f.push_back(RealField("sgd", "lr_min", [](auto& c) -> auto& { return c.experiment.sgd.lr_min; }));
    f.push_back(RealField("sgd", "momentum", [](auto& c) -> auto& { return c.experiment.sgd.momentum; },
                          UnitInterval));
    f.push_back(RealField("sgd", "weight_decay",
                          [](auto& c) -> auto& { return c.experiment.sgd.weight_decay; }, NonNegative));
    // data
    f.push_back(Field{"data", "source", [](const RunConfig& c) { return c.experiment.data.source; },
                      [](RunConfig& c, std::string_view v) {
                        if (v != "synthetic" && v != "cifar10" && v != "binary")
                          throw std::invalid_argument("expected synthetic, cifar10 or binary");
                        c.experiment.data.source = std::string(v);
                      }});
    f.push_back(TextField("data", "path", [](auto& c) -> auto& { return c.experiment.data.path; }));
    f.push_back(
        TextField("data", "probe_path", [](auto& c) -> auto& { return c.experiment.data.probe_path; }));
    f.push_back(IntField("data", "classes", [](auto& c) -> auto& { return c.experiment.data.classes; }, 2));
    f.push_back(IntField("data", "per_class", [](auto& c) -> auto& { return c.experiment.data.per_class; }, 1));
    f.push_back(IntField("data", "side", [](auto& c) -> auto& { return c.experiment.data.side; }, 1));
    f.push_back(RealField("data", "noise", [](auto& c) -> auto& { return c.experiment.data.noise; },
                          NonNegative));
    f.push_back(Field{"data", "seed", [](const RunConfig& c) { return std::to_string(c.experiment.data.seed); },
                      [](RunConfig& c, std::string_view v) { c.experiment.data.seed = ToUnsigned(v); }});
    f.push_back(BoolField("data", "redraw_shards",
                          [](auto& c) -> auto& { return c.experiment.data.redraw_shards; }));
    // partition
    f.push_back(Field{"partition", "policy",
                      [](const RunConfig& c) {
                        return std::string(data::PartitionPolicyName(c.experiment.partition.policy));
                      },
                      [](RunConfig& c, std::string_view v) {
                        c.experiment.partition.policy = data::ParsePartitionPolicy(v);
                      }});
    f.push_back(RealField("partition", "alpha", [](auto& c) -> auto& { return c.experiment.partition.alpha; },
                          Positive));
    f.push_back(IntField("partition", "n_vehicles",
                         [](auto& c) -> auto& { return c.experiment.partition.n_vehicles; }, 1));
    f.push_back(IntField("partition", "min_per_vehicle",
                         [](auto& c) -> auto& { return c.experiment.partition.min_per_vehicle; }, 1));
    // round
    f.push_back(IntField("round", "max_rounds", [](auto& c) -> auto& { return c.experiment.round.max_rounds; },
                         0));
    f.push_back(IntField("round", "vehicles_per_round",
                         [](auto& c) -> auto& { return c.experiment.round.vehicles_per_round; }, 1));
    f.push_back(IntField("round", "local_epochs",
                         [](auto& c) -> auto& { return c.experiment.round.local_epochs; }, 1));
    f.push_back(IntField("round", "batch_size",
                         [](auto& c) -> auto& { return c.experiment.round.batch_size; }, 2));
    f.push_back(RealField("round", "discard_threshold",
                          [](auto& c) -> auto& { return c.experiment.round.discard_threshold; }, NonNegative));
    f.push_back(BoolField("round", "normalize_weights",
                          [](auto& c) -> auto& { return c.experiment.round.normalize_weights; }));
    f.push_back(IntField("round", "eval_stride", [](auto& c) -> auto& { return c.experiment.round.eval_stride; },
                         1));
    // fedco
    f.push_back(IntField("fedco", "queue_capacity",
                         [](auto& c) -> auto& { return c.experiment.fedco.queue_capacity; }, 1));
    f.push_back(IntField("fedco", "upload_batch",
                         [](auto& c) -> auto& { return c.experiment.fedco.upload_batch; }, 1));
    f.push_back(RealField("fedco", "key_momentum",
                          [](auto& c) -> auto& { return c.experiment.fedco.key_momentum; }, UnitInterval));
    // probe
    f.push_back(IntField("probe", "k", [](auto& c) -> auto& { return c.experiment.probe.k; }, 1));
    f.push_back(IntField("probe", "train_per_class",
                         [](auto& c) -> auto& { return c.experiment.probe.train_per_class; }, 1));
    f.push_back(IntField("probe", "test_per_class",
                         [](auto& c) -> auto& { return c.experiment.probe.test_per_class; }, 1));
    return f;
  }();
  return fields;
}

const Field* FindField(std::string_view section, std::string_view name) {
  const Field* match = nullptr;
  for (const auto& field : Fields()) {
    if (field.name != name) continue;
    if (!section.empty()) {
      if (field.section == section) return &field;
      continue;
    }
    if (match != nullptr) return nullptr;  // ambiguous bare name
    match = &field;
  }
  return match;
}

}  // namespace

void ValidateConfig(const RunConfig& config) {
  try {
    config.experiment.Validate();
  } catch (const ContractError& e) {
    throw ConfigError("", 0, e.what());
  }
  if (config.strategies.empty()) throw ConfigError("experiment.strategies", 0, "needs at least one strategy");
  if (config.seeds.empty()) throw ConfigError("experiment.seeds", 0, "needs at least one seed");
  if (config.output_dir.empty()) throw ConfigError("experiment.output_dir", 0, "must not be empty");
}

RunConfig ParseConfigText(std::string_view text) {
  RunConfig config;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", line_number, "malformed section header");
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      bool known = false;
      for (const auto& field : Fields()) known = known || field.section == section;
      if (!known) throw ConfigError(section, line_number, "unknown section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(std::string(line), line_number, "expected key = value");
    const auto key = Trim(line.substr(0, eq));
    const auto value = Trim(line.substr(eq + 1));
    const std::string display = section.empty() ? std::string(key) : section + "." + std::string(key);
    const Field* field = FindField(section, key);
    if (field == nullptr) throw ConfigError(display, line_number, "unknown key");
    try {
      field->set(config, value);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(QualifiedName(*field), line_number, e.what());
    }
  }
  ValidateConfig(config);
  return config;
}

RunConfig ParseConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str());
}

std::string SerializeConfig(const RunConfig& config) {
  std::string out;
  std::string section;
  for (const auto& field : Fields()) {
    if (field.section != section) {
      if (!section.empty()) out += "\n";
      section = field.section;
      out += "[" + section + "]\n";
    }
    out += field.name + " = " + field.get(config) + "\n";
  }
  return out;
}

}  // namespace flsimco::cli

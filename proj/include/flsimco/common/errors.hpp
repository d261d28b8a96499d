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

#pragma once

#include <stdexcept>
#include <string>

namespace flsimco {

// Precondition violated by the caller (bad shapes, negative velocity, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A primitive produced a non-finite value or hit a singular point.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dataset loading and partition sizing failures.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& message)
      : std::runtime_error(Format(key, line, message)), key_(std::move(key)), line_(line) {}

  const std::string& key() const { return key_; }
  // 0 when the error is not tied to a line (e.g. a cross-field invariant).
  int line() const { return line_; }

 private:
  static std::string Format(const std::string& key, int line, const std::string& message) {
    std::string out = "config";
    if (line > 0) out += " line " + std::to_string(line);
    if (!key.empty()) out += " [" + key + "]";
    return out + ": " + message;
  }

  std::string key_;
  int line_;
};

}  // namespace flsimco

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

#include "flsimco/common/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace flsimco {

namespace {

std::mutex log_mutex;

bool Quiet() {
  const char* env = std::getenv("FLSIMCO_QUIET");
  return env != nullptr && std::string(env) != "0";
}

void Emit(std::string_view level, std::string_view message) {
  if (Quiet()) return;
  std::lock_guard<std::mutex> lock(log_mutex);
  std::cerr << "[flsimco] " << level << ": " << message << '\n';
}

}  // namespace

void LogWarning(std::string_view message) { Emit("warning", message); }
void LogInfo(std::string_view message) { Emit("info", message); }

}  // namespace flsimco

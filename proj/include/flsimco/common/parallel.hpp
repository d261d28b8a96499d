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

#include <cstddef>
#include <functional>

namespace flsimco {

// FLSIMCO_WORKERS if set and positive, otherwise hardware concurrency (>= 1).
std::size_t WorkerCountFromEnv();

// Runs fn(0) .. fn(count - 1) on up to `workers` threads and returns after
// all have finished. If any call throws, the exception from the lowest
// index is rethrown.
void ParallelFor(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace flsimco

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

#include <string>
#include <string_view>
#include <vector>

namespace flsimco {

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

// Inverse of FormatDouble; accepts "nan", "inf", "-inf". Throws
// std::invalid_argument on malformed text.
double ParseDouble(std::string_view text);

std::string JoinDoubles(const std::vector<double>& values, char separator);
std::vector<double> SplitDoubles(std::string_view text, char separator);

std::vector<std::string> Split(std::string_view text, char separator);
std::string_view Trim(std::string_view text);

}  // namespace flsimco

// Copyright 2026 The btcheck Authors.
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

// JSON reports. Reports carry no timestamps, so identical inputs, flags and
// seed give byte-identical output.

#ifndef BTCHECK_REPORT_HPP_
#define BTCHECK_REPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "btcheck/balance.hpp"
#include "btcheck/repair.hpp"
#include "btcheck/tester.hpp"

namespace btcheck {

inline constexpr std::string_view kToolName = "btcheck";
inline constexpr std::string_view kToolVersion = "0.1.0";

// {"tool", "version", "command", "config": config}
nlohmann::json MakeReport(std::string_view command, nlohmann::json config);

// Triangles render as [x, y, z], labelled when labels are given.
nlohmann::json TriangleJson(const Triangle& tri,
                            const std::vector<std::string>& labels = {});
nlohmann::json VerdictJson(const TestVerdict& v,
                           const std::vector<std::string>& labels = {});
nlohmann::json RepairJson(const RepairReport& r,
                          const std::vector<std::string>& labels = {});
nlohmann::json DistanceJson(const DistanceBounds& d);

// Pretty-printed with a trailing newline.
std::string Dump(const nlohmann::json& report);

}  // namespace btcheck

#endif  // BTCHECK_REPORT_HPP_

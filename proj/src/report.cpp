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

#include "btcheck/report.hpp"

namespace btcheck {

namespace {

nlohmann::json VertexJson(Vertex v, const std::vector<std::string>& labels) {
  if (labels.empty()) return v;
  return labels[static_cast<std::size_t>(v)];
}

}  // namespace

nlohmann::json MakeReport(std::string_view command, nlohmann::json config) {
  nlohmann::json report;
  report["tool"] = kToolName;
  report["version"] = kToolVersion;
  report["command"] = command;
  report["config"] = std::move(config);
  return report;
}

nlohmann::json TriangleJson(const Triangle& tri,
                            const std::vector<std::string>& labels) {
  return nlohmann::json::array({VertexJson(tri.x, labels),
                                VertexJson(tri.y, labels),
                                VertexJson(tri.z, labels)});
}

nlohmann::json VerdictJson(const TestVerdict& v,
                           const std::vector<std::string>& labels) {
  nlohmann::json out;
  out["outcome"] = v.outcome == Outcome::kAccept ? "accept" : "reject";
  out["witness"] = v.witness ? TriangleJson(*v.witness, labels)
                             : nlohmann::json(nullptr);
  out["samples_requested"] = v.samples_requested;
  out["samples_used"] = v.samples_used;
  out["queries"] = v.queries;
  return out;
}

nlohmann::json RepairJson(const RepairReport& r,
                          const std::vector<std::string>& labels) {
  nlohmann::json out;
  out["root"] = VertexJson(r.root, labels);
  out["total_change"] = r.total_change;
  out["per_edge_bound_ok"] = r.per_edge_bound_ok;
  out["clamped"] = r.clamped;
  nlohmann::json edits = nlohmann::json::array();
  for (const EdgeEdit& e : r.edits) {
    edits.push_back({{"from", VertexJson(e.before.from, labels)},
                     {"to", VertexJson(e.before.to, labels)},
                     {"old", e.before.p},
                     {"new", e.after},
                     {"triangle", TriangleJson(e.triangle, labels)},
                     {"disc", e.discrepancy},
                     {"clamped", e.clamped}});
  }
  out["edits"] = std::move(edits);
  return out;
}

nlohmann::json DistanceJson(const DistanceBounds& d) {
  return {{"upper", d.upper},
          {"lower", d.lower},
          {"repair_upper", d.repair_upper},
          {"repair_root", d.repair_root},
          {"descent_upper", d.descent_upper},
          {"sweeps", d.sweeps}};
}

std::string Dump(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace btcheck

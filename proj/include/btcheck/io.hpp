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

// Text edge-list format shared by tournament and tree files.
//
//   # comments and blank lines are ignored
//   n=3 version=1 labels=alice,bob,carol
//   0 1 0.75
//   bob carol 0.5
//   2 0 0.125
//
// The header needs `n`; `version` (only 1 exists) and `labels` are
// optional. Each record `x y p` is the directed edge x -> y with p = p_xy;
// vertices are ids or, when labels are declared, labels. A tournament file
// has one record per unordered pair; a tree file has n - 1 records forming a
// spanning tree. Probabilities are written in the shortest decimal form that
// reads back to the same double.

#ifndef BTCHECK_IO_HPP_
#define BTCHECK_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "btcheck/repair.hpp"
#include "btcheck/tournament.hpp"

namespace btcheck {

inline constexpr int kFormatVersion = 1;

struct TournamentFile {
  StochasticTournament tournament;
  std::vector<std::string> labels;  // empty when the file declares none
};

struct TreeFile {
  TreeWeights tree;
  std::vector<std::string> labels;
};

// Throws Error; record-level failures carry the 1-based line.
TournamentFile ParseTournament(std::istream& in, double floor = kDefaultFloor);
TournamentFile ReadTournamentFile(const std::filesystem::path& path,
                                  double floor = kDefaultFloor);

std::string SerializeTournament(const StochasticTournament& t,
                                const std::vector<std::string>& labels = {});
void WriteTournamentFile(const std::filesystem::path& path,
                         const StochasticTournament& t,
                         const std::vector<std::string>& labels = {});

TreeFile ParseTree(std::istream& in, double floor = kDefaultFloor);
TreeFile ReadTreeFile(const std::filesystem::path& path,
                      double floor = kDefaultFloor);
std::string SerializeTree(const TreeWeights& tree,
                          const std::vector<std::string>& labels = {});

// Shortest decimal that round-trips to `v`.
std::string FormatProbability(double v);

}  // namespace btcheck

#endif  // BTCHECK_IO_HPP_

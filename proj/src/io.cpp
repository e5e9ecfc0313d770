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

#include "btcheck/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "btcheck/error.hpp"

namespace btcheck {

namespace {

struct Record {
  Edge edge;
  std::size_t line = 0;
};

struct EdgeList {
  int n = 0;
  std::vector<std::string> labels;
  std::vector<Record> records;
};

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

void ParseHeader(std::string_view line, std::size_t line_no, EdgeList& list) {
  bool have_n = false;
  for (std::string_view token : SplitWhitespace(line)) {
    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParseError,
                  "expected key=value in header, got '" + std::string(token) +
                      "'",
                  line_no);
    }
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    if (key == "n") {
      if (!ParseNumber(value, list.n)) {
        throw Error(ErrorCode::kParseError, "bad vertex count", line_no);
      }
      if (list.n < 2) {
        throw Error(ErrorCode::kTooFewVertices,
                    "n=" + std::string(value), line_no);
      }
      have_n = true;
    } else if (key == "version") {
      int version = 0;
      if (!ParseNumber(value, version) || version != kFormatVersion) {
        throw Error(ErrorCode::kParseError,
                    "unsupported version '" + std::string(value) + "'",
                    line_no);
      }
    } else if (key == "labels") {
      std::string_view rest = value;
      while (true) {
        const std::size_t comma = rest.find(',');
        list.labels.emplace_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    } else {
      throw Error(ErrorCode::kParseError,
                  "unknown header key '" + std::string(key) + "'", line_no);
    }
  }
  if (!have_n) {
    throw Error(ErrorCode::kParseError, "header must declare n", line_no);
  }
  if (!list.labels.empty()) {
    if (list.labels.size() != static_cast<std::size_t>(list.n)) {
      throw Error(ErrorCode::kParseError,
                  std::to_string(list.labels.size()) + " labels for n=" +
                      std::to_string(list.n),
                  line_no);
    }
    std::set<std::string> unique;
    for (const std::string& label : list.labels) {
      if (label.empty() || !unique.insert(label).second) {
        throw Error(ErrorCode::kParseError,
                    "labels must be non-empty and unique", line_no);
      }
    }
  }
}

EdgeList ParseEdgeList(std::istream& in, double floor) {
  EdgeList list;
  std::map<std::string, Vertex, std::less<>> ids;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;

  auto vertex = [&](std::string_view token) -> Vertex {
    if (auto it = ids.find(token); it != ids.end()) return it->second;
    Vertex v = 0;
    if (!ParseNumber(token, v)) {
      throw Error(ErrorCode::kParseError,
                  "unknown vertex '" + std::string(token) + "'", line_no);
    }
    if (v < 0 || v >= list.n) {
      throw Error(ErrorCode::kVertexOutOfRange,
                  "vertex " + std::string(token), line_no);
    }
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const std::size_t hash = view.find('#'); hash != std::string_view::npos)
      view = view.substr(0, hash);
    const auto tokens = SplitWhitespace(view);
    if (tokens.empty()) continue;
    if (!have_header) {
      ParseHeader(view, line_no, list);
      for (std::size_t i = 0; i < list.labels.size(); ++i) {
        ids.emplace(list.labels[i], static_cast<Vertex>(i));
      }
      have_header = true;
      continue;
    }
    if (tokens.size() != 3) {
      throw Error(ErrorCode::kParseError,
                  "expected 'x y p', got " + std::to_string(tokens.size()) +
                      " fields",
                  line_no);
    }
    Record rec;
    rec.line = line_no;
    rec.edge.from = vertex(tokens[0]);
    rec.edge.to = vertex(tokens[1]);
    if (!ParseNumber(tokens[2], rec.edge.p)) {
      throw Error(ErrorCode::kParseError,
                  "bad probability '" + std::string(tokens[2]) + "'", line_no);
    }
    if (rec.edge.from == rec.edge.to) {
      throw Error(ErrorCode::kSelfLoop, "vertex " + std::string(tokens[0]),
                  line_no);
    }
    if (!(std::isfinite(rec.edge.p) && rec.edge.p >= floor &&
          rec.edge.p <= 1.0 - floor)) {
      throw Error(ErrorCode::kOutOfRangeProbability,
                  "p = " + std::string(tokens[2]), line_no);
    }
    list.records.push_back(rec);
  }
  if (!have_header) {
    throw Error(ErrorCode::kParseError, "missing header", line_no + 1);
  }
  return list;
}

std::string Name(Vertex v, const std::vector<std::string>& labels) {
  return labels.empty() ? std::to_string(v)
                        : labels[static_cast<std::size_t>(v)];
}

std::string Header(int n, const std::vector<std::string>& labels) {
  std::string out = "n=" + std::to_string(n) +
                    " version=" + std::to_string(kFormatVersion);
  if (!labels.empty()) {
    out += " labels=";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) out += ',';
      out += labels[i];
    }
  }
  return out + "\n";
}

void CheckLabels(int n, const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(labels.size()) + " labels for " +
                    std::to_string(n) + " vertices");
  }
}

std::ifstream OpenOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  }
  return in;
}

}  // namespace

std::string FormatProbability(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

TournamentFile ParseTournament(std::istream& in, double floor) {
  EdgeList list = ParseEdgeList(in, floor);
  const auto n = static_cast<std::size_t>(list.n);
  std::vector<std::size_t> seen(n * n, 0);
  std::vector<Edge> entries;
  entries.reserve(list.records.size());
  for (const Record& rec : list.records) {
    const auto lo = static_cast<std::size_t>(std::min(rec.edge.from, rec.edge.to));
    const auto hi = static_cast<std::size_t>(std::max(rec.edge.from, rec.edge.to));
    auto& first = seen[lo * n + hi];
    if (first) {
      throw Error(ErrorCode::kDuplicatePair,
                  "pair already given at line " + std::to_string(first),
                  rec.line);
    }
    first = rec.line;
    entries.push_back(rec.edge);
  }
  return TournamentFile{
      StochasticTournament::FromEntries(list.n, entries, floor),
      std::move(list.labels)};
}

TournamentFile ReadTournamentFile(const std::filesystem::path& path,
                                  double floor) {
  std::ifstream in = OpenOrThrow(path);
  return ParseTournament(in, floor);
}

std::string SerializeTournament(const StochasticTournament& t,
                                const std::vector<std::string>& labels) {
  CheckLabels(t.size(), labels);
  std::string out = Header(t.size(), labels);
  for (const Edge& e : t.Edges()) {
    out += Name(e.from, labels) + ' ' + Name(e.to, labels) + ' ' +
           FormatProbability(e.p) + '\n';
  }
  return out;
}

void WriteTournamentFile(const std::filesystem::path& path,
                         const StochasticTournament& t,
                         const std::vector<std::string>& labels) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path.string());
  out << SerializeTournament(t, labels);
}

TreeFile ParseTree(std::istream& in, double floor) {
  EdgeList list = ParseEdgeList(in, floor);
  TreeFile file;
  file.tree.n = list.n;
  for (const Record& rec : list.records) file.tree.edges.push_back(rec.edge);
  file.labels = std::move(list.labels);
  return file;
}

TreeFile ReadTreeFile(const std::filesystem::path& path, double floor) {
  std::ifstream in = OpenOrThrow(path);
  return ParseTree(in, floor);
}

std::string SerializeTree(const TreeWeights& tree,
                          const std::vector<std::string>& labels) {
  CheckLabels(tree.n, labels);
  std::string out = Header(tree.n, labels);
  for (const Edge& e : tree.edges) {
    out += Name(e.from, labels) + ' ' + Name(e.to, labels) + ' ' +
           FormatProbability(e.p) + '\n';
  }
  return out;
}

}  // namespace btcheck

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

#include "btcheck/balance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <string>
#include <thread>

#include "btcheck/error.hpp"

namespace btcheck {

namespace {

// Neumaier's variant of compensated summation.
class CompensatedSum {
 public:
  void Add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double Value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void CheckVertex(const StochasticTournament& t, Vertex v) {
  if (v < 0 || v >= t.size()) {
    throw Error(ErrorCode::kVertexOutOfRange,
                "vertex " + std::to_string(v) + " not in [0, " +
                    std::to_string(t.size()) + ")");
  }
}

void CheckTriangle(const StochasticTournament& t, const Triangle& tri) {
  CheckVertex(t, tri.x);
  CheckVertex(t, tri.y);
  CheckVertex(t, tri.z);
  if (!(tri.x < tri.y && tri.y < tri.z)) {
    throw Error(ErrorCode::kDegenerateCycle, "triangle is not canonical");
  }
}

// Runs job(i) for i in [0, count) on up to `threads` workers. Each index is
// processed exactly once; callers write results into per-index slots.
template <typename Job>
void RunChunks(int count, int threads, Job&& job) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += threads) job(i);
    });
  }
}

}  // namespace

Triangle Triangle::Of(Vertex a, Vertex b, Vertex c) {
  if (a == b || b == c || a == c) {
    throw Error(ErrorCode::kDegenerateCycle, "triangle vertices must differ");
  }
  std::array<Vertex, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  return Triangle{v[0], v[1], v[2]};
}

std::uint64_t TriangleCount(int n) {
  if (n < 3) return 0;
  const auto m = static_cast<std::uint64_t>(n);
  return m * (m - 1) * (m - 2) / 6;
}

double TriangleRatio(const StochasticTournament& t, const Triangle& tri) {
  CheckTriangle(t, tri);
  const auto [x, y, z] = tri;
  const double cw = t.ProbUnchecked(x, y) * t.ProbUnchecked(y, z) *
                    t.ProbUnchecked(z, x);
  const double ccw = t.ProbUnchecked(y, x) * t.ProbUnchecked(z, y) *
                     t.ProbUnchecked(x, z);
  return cw / ccw;
}

double LogTriangleRatio(const StochasticTournament& t, const Triangle& tri) {
  return std::log(TriangleRatio(t, tri));
}

bool IsBalanced(const StochasticTournament& t, const Triangle& tri,
                double tol) {
  return std::abs(LogTriangleRatio(t, tri)) <= tol;
}

bool IsEpsBalanced(const StochasticTournament& t, const Triangle& tri,
                   double eps, double tol) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::kOutOfRange, "eps must be >= 0");
  return std::abs(LogTriangleRatio(t, tri)) <= std::log1p(eps) + tol;
}

double BalanceViolation(const StochasticTournament& t, const Triangle& tri) {
  return std::expm1(std::abs(LogTriangleRatio(t, tri)));
}

double BalancingProb(const StochasticTournament& t, Vertex u, Vertex v,
                     Vertex w) {
  const double a = t.ProbUnchecked(u, w) * t.ProbUnchecked(w, v);
  const double b = t.ProbUnchecked(v, w) * t.ProbUnchecked(w, u);
  return a / (a + b);
}

Discrepancy ComputeDiscrepancy(const StochasticTournament& t,
                               const Triangle& tri) {
  CheckTriangle(t, tri);
  const auto [x, y, z] = tri;
  Discrepancy d;
  d.alpha = t.ProbUnchecked(x, y) - BalancingProb(t, x, y, z);
  d.beta = t.ProbUnchecked(y, z) - BalancingProb(t, y, z, x);
  d.gamma = t.ProbUnchecked(z, x) - BalancingProb(t, z, x, y);
  d.value = std::max({std::abs(d.alpha), std::abs(d.beta), std::abs(d.gamma)});
  return d;
}

double RootDiscrepancy(const StochasticTournament& t, Vertex r) {
  CheckVertex(t, r);
  CompensatedSum sum;
  const int n = t.size();
  for (Vertex y = 0; y < n; ++y) {
    if (y == r) continue;
    for (Vertex z = y + 1; z < n; ++z) {
      if (z == r) continue;
      sum.Add(ComputeDiscrepancy(t, Triangle::Of(r, y, z)).value);
    }
  }
  return sum.Value();
}

DiscrepancyTotals TotalDiscrepancy(const StochasticTournament& t,
                                   int threads) {
  const int n = t.size();
  // One chunk per leading vertex x for the total, one per root for the
  // per-root sums.
  std::vector<double> chunk(static_cast<std::size_t>(n), 0.0);
  DiscrepancyTotals out;
  out.per_root.assign(static_cast<std::size_t>(n), 0.0);
  RunChunks(2 * n, threads, [&](int job) {
    if (job < n) {
      const Vertex x = job;
      CompensatedSum sum;
      for (Vertex y = x + 1; y < n; ++y) {
        for (Vertex z = y + 1; z < n; ++z) {
          sum.Add(ComputeDiscrepancy(t, Triangle{x, y, z}).value);
        }
      }
      chunk[static_cast<std::size_t>(x)] = sum.Value();
    } else {
      const Vertex r = job - n;
      out.per_root[static_cast<std::size_t>(r)] = RootDiscrepancy(t, r);
    }
  });
  CompensatedSum total;
  for (double v : chunk) total.Add(v);
  out.total = total.Value();
  return out;
}

DirectedCycle::DirectedCycle(std::vector<Vertex> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw Error(ErrorCode::kDegenerateCycle,
                "a cycle needs at least 3 vertices");
  }
  std::vector<Vertex> sorted = vertices_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kDegenerateCycle, "repeated vertex in cycle");
  }
}

DirectedCycle DirectedCycle::Reversed() const {
  return DirectedCycle(
      std::vector<Vertex>(vertices_.rbegin(), vertices_.rend()));
}

double LogCycleRatio(const StochasticTournament& t, const DirectedCycle& c) {
  const auto& v = c.vertices();
  for (Vertex u : v) CheckVertex(t, u);
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vertex a = v[i];
    const Vertex b = v[(i + 1) % v.size()];
    sum += std::log(t.ProbUnchecked(a, b)) - std::log(t.ProbUnchecked(b, a));
  }
  return sum;
}

double CycleRatio(const StochasticTournament& t, const DirectedCycle& c) {
  return std::exp(LogCycleRatio(t, c));
}

bool IsCycleBalanced(const StochasticTournament& t, const DirectedCycle& c,
                     double tol) {
  return std::abs(LogCycleRatio(t, c)) <= tol;
}

CycleVector::CycleVector(const DirectedCycle& c) {
  const auto& v = c.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vertex a = v[i];
    const Vertex b = v[(i + 1) % v.size()];
    if (a < b) {
      coeff_[{a, b}] += 1;
    } else {
      coeff_[{b, a}] -= 1;
    }
  }
}

CycleVector& CycleVector::operator+=(const CycleVector& other) {
  for (const auto& [edge, c] : other.coeff_) {
    auto it = coeff_.find(edge);
    if (it == coeff_.end()) {
      coeff_.emplace(edge, c);
    } else if ((it->second += c) == 0) {
      coeff_.erase(it);
    }
  }
  return *this;
}

CycleVector CycleVector::operator-() const {
  CycleVector out = *this;
  for (auto& entry : out.coeff_) entry.second = -entry.second;
  return out;
}

bool CycleVector::IsClosed() const {
  std::map<Vertex, std::int64_t> flow;
  for (const auto& [edge, c] : coeff_) {
    flow[edge.first] -= c;
    flow[edge.second] += c;
  }
  return std::all_of(flow.begin(), flow.end(),
                     [](const auto& f) { return f.second == 0; });
}

double CycleVector::LogRatio(const StochasticTournament& t) const {
  double sum = 0.0;
  for (const auto& [edge, c] : coeff_) {
    const auto [a, b] = edge;
    CheckVertex(t, a);
    CheckVertex(t, b);
    sum += static_cast<double>(c) *
           (std::log(t.ProbUnchecked(a, b)) - std::log(t.ProbUnchecked(b, a)));
  }
  return sum;
}

SpanningTree SpanningTree::FromEdges(
    int n, std::span<const std::pair<Vertex, Vertex>> edges) {
  if (n < 1) throw Error(ErrorCode::kNotASpanningTree, "empty vertex set");
  if (edges.size() != static_cast<std::size_t>(n - 1)) {
    throw Error(ErrorCode::kNotASpanningTree,
                "expected " + std::to_string(n - 1) + " edges, got " +
                    std::to_string(edges.size()));
  }
  SpanningTree tree;
  tree.n_ = n;
  tree.adjacent_.resize(static_cast<std::size_t>(n));
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
      throw Error(ErrorCode::kNotASpanningTree,
                  "bad edge (" + std::to_string(a) + ", " + std::to_string(b) +
                      ")");
    }
    tree.edges_.emplace_back(a, b);
    tree.adjacent_[static_cast<std::size_t>(a)].push_back(b);
    tree.adjacent_[static_cast<std::size_t>(b)].push_back(a);
  }
  tree.parent_.assign(static_cast<std::size_t>(n), -1);
  tree.depth_.assign(static_cast<std::size_t>(n), -1);
  std::deque<Vertex> queue{0};
  tree.depth_[0] = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    tree.order_.push_back(v);
    for (Vertex u : tree.adjacent_[static_cast<std::size_t>(v)]) {
      auto& d = tree.depth_[static_cast<std::size_t>(u)];
      if (d >= 0) continue;
      d = tree.Depth(v) + 1;
      tree.parent_[static_cast<std::size_t>(u)] = v;
      queue.push_back(u);
    }
  }
  // n - 1 edges and connected implies acyclic.
  if (tree.order_.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kNotASpanningTree, "edges do not connect all vertices");
  }
  return tree;
}

SpanningTree SpanningTree::Star(int n, Vertex center) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < n; ++v) {
    if (v != center) edges.emplace_back(center, v);
  }
  return FromEdges(n, edges);
}

bool SpanningTree::HasEdge(Vertex x, Vertex y) const {
  return parent_[static_cast<std::size_t>(x)] == y ||
         parent_[static_cast<std::size_t>(y)] == x;
}

std::vector<Vertex> SpanningTree::Path(Vertex from, Vertex to) const {
  std::vector<Vertex> up_from{from};
  std::vector<Vertex> up_to{to};
  Vertex a = from;
  Vertex b = to;
  while (Depth(a) > Depth(b)) up_from.push_back(a = Parent(a));
  while (Depth(b) > Depth(a)) up_to.push_back(b = Parent(b));
  while (a != b) {
    up_from.push_back(a = Parent(a));
    up_to.push_back(b = Parent(b));
  }
  // Both lists end at the meeting vertex.
  up_to.pop_back();
  up_from.insert(up_from.end(), up_to.rbegin(), up_to.rend());
  return up_from;
}

std::vector<DirectedCycle> FundamentalCycles(const SpanningTree& tree) {
  std::vector<DirectedCycle> cycles;
  const int n = tree.size();
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      if (tree.HasEdge(x, y)) continue;
      std::vector<Vertex> path = tree.Path(y, x);
      path.pop_back();
      path.insert(path.begin(), x);
      cycles.emplace_back(std::move(path));
    }
  }
  return cycles;
}

bool CheckFundamentalCycles(const StochasticTournament& t,
                            const SpanningTree& tree, double tol) {
  if (tree.size() != t.size()) {
    throw Error(ErrorCode::kNotASpanningTree,
                "tree spans " + std::to_string(tree.size()) +
                    " vertices, tournament has " + std::to_string(t.size()));
  }
  for (const DirectedCycle& c : FundamentalCycles(tree)) {
    if (!IsCycleBalanced(t, c, tol)) return false;
  }
  return true;
}

bool CheckFundamentalCycles(const StochasticTournament& t,
                            std::span<const std::pair<Vertex, Vertex>> tree,
                            double tol) {
  return CheckFundamentalCycles(t, SpanningTree::FromEdges(t.size(), tree),
                                tol);
}

bool AllTrianglesBalanced(const StochasticTournament& t, double tol) {
  return CountUnbalanced(t, tol) == 0;
}

bool RootTrianglesBalanced(const StochasticTournament& t, Vertex r,
                           double tol) {
  CheckVertex(t, r);
  const int n = t.size();
  for (Vertex y = 0; y < n; ++y) {
    if (y == r) continue;
    for (Vertex z = y + 1; z < n; ++z) {
      if (z == r) continue;
      if (!IsBalanced(t, Triangle::Of(r, y, z), tol)) return false;
    }
  }
  return true;
}

std::uint64_t CountUnbalanced(const StochasticTournament& t, double tol) {
  std::uint64_t count = 0;
  ForEachTriangle(t.size(), [&](const Triangle& tri) {
    if (!IsBalanced(t, tri, tol)) ++count;
  });
  return count;
}

}  // namespace btcheck

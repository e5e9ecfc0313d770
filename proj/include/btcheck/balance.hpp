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

// Balance of triangles and cycles. A directed cycle v0 -> v1 -> ... -> v0 has
// ratio lambda = prod p(v_i, v_{i+1}) / p(v_{i+1}, v_i); it is balanced when
// lambda == 1. A tournament is Bradley-Terry iff every triangle is balanced.

#ifndef BTCHECK_BALANCE_HPP_
#define BTCHECK_BALANCE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "btcheck/tournament.hpp"

namespace btcheck {

// Three distinct vertices with x < y < z. The canonical orientation is
// x -> y -> z -> x.
struct Triangle {
  Vertex x = 0;
  Vertex y = 1;
  Vertex z = 2;

  // Sorts the vertices; throws kDegenerateCycle on repeats.
  static Triangle Of(Vertex a, Vertex b, Vertex c);

  bool Contains(Vertex v) const { return v == x || v == y || v == z; }

  friend bool operator==(const Triangle&, const Triangle&) = default;
  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

// C(n, 3).
std::uint64_t TriangleCount(int n);

// Calls f(Triangle) for every triangle in lexicographic order.
template <typename F>
void ForEachTriangle(int n, F&& f) {
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y)
      for (Vertex z = y + 1; z < n; ++z) f(Triangle{x, y, z});
}

// lambda for the canonical orientation; the reverse orientation gives
// 1 / lambda.
double TriangleRatio(const StochasticTournament& t, const Triangle& tri);
double LogTriangleRatio(const StochasticTournament& t, const Triangle& tri);

// |log lambda| <= tol.
bool IsBalanced(const StochasticTournament& t, const Triangle& tri,
                double tol = kDefaultTol);

// 1/(1+eps) <= lambda <= 1+eps, with `tol` slack on the log scale.
bool IsEpsBalanced(const StochasticTournament& t, const Triangle& tri,
                   double eps, double tol = kDefaultTol);

// Smallest eps for which the triangle is eps-balanced: exp(|log lambda|) - 1.
double BalanceViolation(const StochasticTournament& t, const Triangle& tri);

// Signed single-edge edits that balance a triangle:
//   alpha = p_xy - (balancing p_xy), beta on yz, gamma on zx.
// value = max(|alpha|, |beta|, |gamma|).
struct Discrepancy {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double value = 0.0;
};

Discrepancy ComputeDiscrepancy(const StochasticTournament& t,
                               const Triangle& tri);

// The value of p_uv (u, v two vertices of the triangle through `w`) that
// makes triangle {u, v, w} exactly balanced with the other two edges fixed.
double BalancingProb(const StochasticTournament& t, Vertex u, Vertex v,
                     Vertex w);

struct DiscrepancyTotals {
  double total = 0.0;            // sum over all triangles
  std::vector<double> per_root;  // per_root[r]: sum over triangles through r
};

// O(n^3). Work is split into fixed chunks and reduced in a fixed order, so
// the result does not depend on `threads`.
DiscrepancyTotals TotalDiscrepancy(const StochasticTournament& t,
                                   int threads = 1);

// Sum of disc(T) over the triangles through r.
double RootDiscrepancy(const StochasticTournament& t, Vertex r);

// At least 3 distinct vertices, traversed cyclically.
class DirectedCycle {
 public:
  // Throws kDegenerateCycle.
  explicit DirectedCycle(std::vector<Vertex> vertices);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  DirectedCycle Reversed() const;

 private:
  std::vector<Vertex> vertices_;
};

double CycleRatio(const StochasticTournament& t, const DirectedCycle& c);
double LogCycleRatio(const StochasticTournament& t, const DirectedCycle& c);
bool IsCycleBalanced(const StochasticTournament& t, const DirectedCycle& c,
                     double tol = kDefaultTol);

// Element of the integer cycle space: coefficient per pair, measured along
// the lo -> hi direction.
class CycleVector {
 public:
  CycleVector() = default;
  explicit CycleVector(const DirectedCycle& c);

  CycleVector& operator+=(const CycleVector& other);
  friend CycleVector operator+(CycleVector a, const CycleVector& b) {
    a += b;
    return a;
  }
  CycleVector operator-() const;

  // Vertex balance: the net flow through every vertex is zero.
  bool IsClosed() const;

  const std::map<std::pair<Vertex, Vertex>, std::int64_t>& coefficients()
      const {
    return coeff_;
  }

  // log lambda = sum c_e * log(p_lo,hi / p_hi,lo).
  double LogRatio(const StochasticTournament& t) const;

 private:
  std::map<std::pair<Vertex, Vertex>, std::int64_t> coeff_;
};

// Spanning tree of the complete graph on n vertices, rooted at vertex 0.
class SpanningTree {
 public:
  // Throws kNotASpanningTree unless the edges form a tree over 0..n-1.
  static SpanningTree FromEdges(int n,
                                std::span<const std::pair<Vertex, Vertex>> edges);

  // Star centred at `center`.
  static SpanningTree Star(int n, Vertex center);

  int size() const { return n_; }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  bool HasEdge(Vertex x, Vertex y) const;
  Vertex Parent(Vertex v) const { return parent_[static_cast<std::size_t>(v)]; }
  int Depth(Vertex v) const { return depth_[static_cast<std::size_t>(v)]; }
  // Vertices in breadth-first order from the root.
  const std::vector<Vertex>& Order() const { return order_; }

  // Tree path from `from` to `to`, both ends included.
  std::vector<Vertex> Path(Vertex from, Vertex to) const;

 private:
  int n_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adjacent_;
  std::vector<Vertex> parent_;
  std::vector<int> depth_;
  std::vector<Vertex> order_;
};

// One cycle per chord {x, y} (x < y, lexicographic): x -> y, then the tree
// path back to x.
std::vector<DirectedCycle> FundamentalCycles(const SpanningTree& tree);

bool CheckFundamentalCycles(const StochasticTournament& t,
                            const SpanningTree& tree, double tol = kDefaultTol);
bool CheckFundamentalCycles(const StochasticTournament& t,
                            std::span<const std::pair<Vertex, Vertex>> tree,
                            double tol = kDefaultTol);

// Exhaustive Kolmogorov check over all C(n,3) triangles.
bool AllTrianglesBalanced(const StochasticTournament& t,
                          double tol = kDefaultTol);

// Triangles through r only.
bool RootTrianglesBalanced(const StochasticTournament& t, Vertex r,
                           double tol = kDefaultTol);

// Exhaustive count of triangles that fail IsBalanced.
std::uint64_t CountUnbalanced(const StochasticTournament& t,
                              double tol = kDefaultTol);

}  // namespace btcheck

#endif  // BTCHECK_BALANCE_HPP_

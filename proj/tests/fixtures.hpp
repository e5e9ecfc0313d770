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

// Test-only generators and brute-force oracles. Nothing here calls the
// library routine it is used to check.

#ifndef BTCHECK_TESTS_FIXTURES_HPP_
#define BTCHECK_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "btcheck/rng.hpp"
#include "btcheck/tournament.hpp"

namespace btcheck::testing {

// Scores log-uniform on [lo, hi].
inline ScoreVector RandomScores(int n, Rng& rng, double lo = 0.1,
                                double hi = 10.0) {
  std::vector<double> a;
  for (int i = 0; i < n; ++i) {
    a.push_back(std::exp(rng.Uniform(std::log(lo), std::log(hi))));
  }
  return ScoreVector(std::move(a));
}

// p from log-odds, kept away from 0 and 1.
inline double FromLogOdds(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Direct product form of the triangle condition for the orientation
// a -> b -> c -> a, written independently of the balance module.
inline double BruteCycleProduct(const StochasticTournament& t,
                                const std::vector<Vertex>& cycle) {
  double num = 1.0;
  double den = 1.0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Vertex a = cycle[i];
    const Vertex b = cycle[(i + 1) % cycle.size()];
    num *= t.Prob(a, b);
    den *= t.Prob(b, a);
  }
  return num / den;
}

inline bool BruteBalanced(const StochasticTournament& t, Vertex a, Vertex b,
                          Vertex c, double tol = kDefaultTol) {
  return std::abs(std::log(BruteCycleProduct(t, {a, b, c}))) <= tol;
}

inline std::uint64_t BruteUnbalancedCount(const StochasticTournament& t,
                                          double tol = kDefaultTol) {
  std::uint64_t bad = 0;
  const int n = t.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (a < b && b < c && !BruteBalanced(t, a, b, c, tol)) ++bad;
  return bad;
}

// Undirected graph on n vertices with exactly `triangles` triangles: a
// clique on the first m vertices plus pendant vertices each joined to a
// prefix of the clique. Returns adjacency, or nullopt if n is too small.
inline std::optional<std::vector<std::vector<bool>>> GraphWithTriangles(
    int n, std::uint64_t triangles) {
  auto choose3 = [](std::uint64_t m) { return m * (m - 1) * (m - 2) / 6; };
  auto choose2 = [](std::uint64_t m) { return m * (m - 1) / 2; };
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n),
                                     std::vector<bool>(static_cast<std::size_t>(n), false));
  std::uint64_t m = 0;
  while (m + 1 <= static_cast<std::uint64_t>(n) && choose3(m + 1) <= triangles) ++m;
  for (std::uint64_t i = 0; i < m; ++i)
    for (std::uint64_t j = i + 1; j < m; ++j) adj[i][j] = adj[j][i] = true;
  std::uint64_t rest = triangles - (m >= 3 ? choose3(m) : 0);
  std::uint64_t next = m;
  while (rest > 0) {
    if (next >= static_cast<std::uint64_t>(n)) return std::nullopt;
    std::uint64_t d = 0;
    while (d + 1 <= m && choose2(d + 1) <= rest) ++d;
    if (d < 2) return std::nullopt;
    for (std::uint64_t j = 0; j < d; ++j) adj[next][j] = adj[j][next] = true;
    rest -= choose2(d);
    ++next;
  }
  return adj;
}

// A tournament on n vertices with exactly k unbalanced triangles. Start
// from a random Bradley-Terry tournament and multiply the odds of every
// edge outside a graph H with C(n,3) - k triangles by a random factor; a
// triangle then stays balanced iff all three of its edges lie in H.
inline std::optional<StochasticTournament> TournamentWithUnbalanced(
    int n, std::uint64_t k, std::uint64_t seed) {
  const std::uint64_t all =
      static_cast<std::uint64_t>(n) * (n - 1) * (n - 2) / 6;
  if (k > all) return std::nullopt;
  const auto h = GraphWithTriangles(n, all - k);
  if (!h) return std::nullopt;
  Rng rng(seed);
  std::vector<Vertex> relabel(static_cast<std::size_t>(n));
  std::iota(relabel.begin(), relabel.end(), 0);
  for (std::size_t i = relabel.size(); i > 1; --i) {
    std::swap(relabel[i - 1], relabel[rng.Below(i)]);
  }
  const ScoreVector a = RandomScores(n, rng);
  std::vector<Edge> entries;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      double log_odds = std::log(a[static_cast<std::size_t>(x)]) -
                        std::log(a[static_cast<std::size_t>(y)]);
      const auto rx = static_cast<std::size_t>(relabel[static_cast<std::size_t>(x)]);
      const auto ry = static_cast<std::size_t>(relabel[static_cast<std::size_t>(y)]);
      if (!(*h)[rx][ry]) {
        const double shift = rng.Uniform(0.3, 1.0);
        log_odds += rng.Below(2) ? shift : -shift;
      }
      entries.push_back({x, y, FromLogOdds(log_odds)});
    }
  }
  auto t = StochasticTournament::FromEntries(n, entries);
  if (BruteUnbalancedCount(t) != k) return std::nullopt;
  return t;
}

// Bradley-Terry odds times independent factors in [1/(1+eps), 1+eps].
inline StochasticTournament ApproximateBradleyTerry(int n, double eps,
                                                    Rng& rng) {
  const ScoreVector a = RandomScores(n, rng);
  const double spread = std::log1p(eps);
  std::vector<Edge> entries;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      const double log_odds = std::log(a[static_cast<std::size_t>(x)]) -
                              std::log(a[static_cast<std::size_t>(y)]) +
                              rng.Uniform(-spread, spread);
      entries.push_back({x, y, FromLogOdds(log_odds)});
    }
  }
  return StochasticTournament::FromEntries(n, entries);
}

// Random spanning tree (random attachment over a shuffled vertex order).
inline std::vector<std::pair<Vertex, Vertex>> RandomTree(int n, Rng& rng) {
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.Below(i)]);
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 1; i < order.size(); ++i) {
    edges.emplace_back(order[rng.Below(i)], order[i]);
  }
  return edges;
}

}  // namespace btcheck::testing

#endif  // BTCHECK_TESTS_FIXTURES_HPP_

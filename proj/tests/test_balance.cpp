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


#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "doctest.h"

#include "btcheck/balance.hpp"
#include "btcheck/error.hpp"
#include "btcheck/repair.hpp"
#include "btcheck/rng.hpp"
#include "btcheck/tournament.hpp"
#include "fixtures.hpp"

namespace btcheck {
namespace {

constexpr double kCyclicDisc = 0.8878048780487805;  // 0.9 - 0.01 / 0.82

StochasticTournament WithProb(const StochasticTournament& t, Vertex x,
                              Vertex y, double p) {
  std::vector<Edge> entries;
  for (Edge e : t.Edges()) {
    if (e.from == x && e.to == y) e.p = p;
    if (e.from == y && e.to == x) e.p = 1.0 - p;
    entries.push_back(e);
  }
  return StochasticTournament::FromEntries(t.size(), entries, t.floor());
}

Triangle SampleTriangleFor(Rng& rng, int n = 5) {
  Vertex a = 0, b = 0, c = 0;
  while (a == b || b == c || a == c) {
    a = static_cast<Vertex>(rng.Below(static_cast<std::uint64_t>(n)));
    b = static_cast<Vertex>(rng.Below(static_cast<std::uint64_t>(n)));
    c = static_cast<Vertex>(rng.Below(static_cast<std::uint64_t>(n)));
  }
  return Triangle::Of(a, b, c);
}

StochasticTournament ThreeWithOdds(double odds_20) {
  const std::vector<Edge> e = {
      {0, 1, 0.5}, {1, 2, 0.5}, {2, 0, odds_20 / (1.0 + odds_20)}};
  return StochasticTournament::FromEntries(3, e);
}

TEST_CASE("triangle construction") {
  const Triangle t = Triangle::Of(4, 1, 2);
  CHECK(t == Triangle{1, 2, 4});
  CHECK(t.Contains(4));
  CHECK_FALSE(t.Contains(3));
  CHECK_THROWS_AS(Triangle::Of(1, 1, 2), Error);
}

TEST_CASE("triangle ratio examples") {
  const std::vector<Edge> fair = {{0, 1, 0.5}, {0, 2, 0.5}, {1, 2, 0.5}};
  CHECK(TriangleRatio(StochasticTournament::FromEntries(3, fair),
                      {0, 1, 2}) == 1.0);
  const auto c = GenerateCyclic(3, 0.9);
  CHECK(TriangleRatio(c, {0, 1, 2}) == doctest::Approx(729.0).epsilon(1e-12));
  const auto bt = GenerateBradleyTerry(ScoreVector({1.0, 2.0, 4.0}));
  CHECK(std::abs(LogTriangleRatio(bt, {0, 1, 2})) <= kDefaultTol);
  CHECK(IsBalanced(bt, {0, 1, 2}));
  CHECK_FALSE(IsBalanced(c, {0, 1, 2}));
}

TEST_CASE("eps balanced predicate") {
  const auto c = GenerateCyclic(3, 0.9);
  CHECK_FALSE(IsEpsBalanced(c, {0, 1, 2}, 1.0));
  const auto t = ThreeWithOdds(1.05);
  CHECK(TriangleRatio(t, {0, 1, 2}) == doctest::Approx(1.05).epsilon(1e-14));
  CHECK(IsEpsBalanced(t, {0, 1, 2}, 0.1));
  CHECK_FALSE(IsEpsBalanced(t, {0, 1, 2}, 0.04));
  const auto inv = ThreeWithOdds(1.0 / 1.05);
  CHECK(IsEpsBalanced(inv, {0, 1, 2}, 0.1));
  CHECK_FALSE(IsEpsBalanced(inv, {0, 1, 2}, 0.04));
  CHECK(BalanceViolation(t, {0, 1, 2}) ==
        doctest::Approx(0.05).epsilon(1e-12));
  CHECK(BalanceViolation(inv, {0, 1, 2}) ==
        doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("orientation symmetry") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = GenerateRandom(6, seed);
    ForEachTriangle(6, [&](const Triangle& tri) {
      const DirectedCycle fwd({tri.x, tri.y, tri.z});
      const double lf = LogCycleRatio(t, fwd);
      CHECK(LogCycleRatio(t, fwd.Reversed()) ==
            doctest::Approx(-lf).epsilon(1e-12));
      CHECK(lf == doctest::Approx(LogTriangleRatio(t, tri)).epsilon(1e-12));
      CHECK(std::log(testing::BruteCycleProduct(t, {tri.x, tri.y, tri.z})) ==
            doctest::Approx(lf).epsilon(1e-9));
      // Rotations of the same directed cycle agree.
      CHECK(LogCycleRatio(t, DirectedCycle({tri.y, tri.z, tri.x})) ==
            doctest::Approx(lf).epsilon(1e-12));
      const Triangle same = Triangle::Of(tri.z, tri.x, tri.y);
      CHECK(IsBalanced(t, same) == IsBalanced(t, tri));
      CHECK(IsEpsBalanced(t, same, 0.3) == IsEpsBalanced(t, tri, 0.3));
    });
  }
}

TEST_CASE("cyclic discrepancy") {
  const auto c = GenerateCyclic(3, 0.9);
  const Discrepancy d = ComputeDiscrepancy(c, {0, 1, 2});
  CHECK(d.alpha == doctest::Approx(kCyclicDisc).epsilon(1e-12));
  CHECK(d.beta == doctest::Approx(kCyclicDisc).epsilon(1e-12));
  CHECK(d.gamma == doctest::Approx(kCyclicDisc).epsilon(1e-12));
  CHECK(std::abs(d.value - kCyclicDisc) <= 1e-12);
  CHECK(BalancingProb(c, 0, 1, 2) ==
        doctest::Approx(0.01 / 0.82).epsilon(1e-12));
}

TEST_CASE("balanced triangle has zero discrepancy") {
  const auto bt = GenerateBradleyTerry(ScoreVector({1.0, 2.0, 4.0}));
  CHECK(ComputeDiscrepancy(bt, {0, 1, 2}).value <= kDefaultTol);
}

TEST_CASE("each discrepancy edit balances its triangle") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = GenerateRandom(5, rng.NextU64());
    const Triangle tri = SampleTriangleFor(rng);
    const Discrepancy d = ComputeDiscrepancy(t, tri);
    CHECK(d.value >= 0.0);
    CHECK(d.value <= 1.0);
    CHECK(d.value == std::max({std::abs(d.alpha), std::abs(d.beta),
                               std::abs(d.gamma)}));
    const auto ta = WithProb(t, tri.x, tri.y, t.Prob(tri.x, tri.y) - d.alpha);
    const auto tb = WithProb(t, tri.y, tri.z, t.Prob(tri.y, tri.z) - d.beta);
    const auto tg = WithProb(t, tri.z, tri.x, t.Prob(tri.z, tri.x) - d.gamma);
    CHECK(std::abs(LogTriangleRatio(ta, tri)) <= kDefaultTol);
    CHECK(std::abs(LogTriangleRatio(tb, tri)) <= kDefaultTol);
    CHECK(std::abs(LogTriangleRatio(tg, tri)) <= kDefaultTol);
  }
}

TEST_CASE("total discrepancy on the cyclic triangle") {
  const auto totals = TotalDiscrepancy(GenerateCyclic(3, 0.9));
  CHECK(std::abs(totals.total - kCyclicDisc) <= 1e-12);
  REQUIRE(totals.per_root.size() == 3);
  for (double s : totals.per_root) CHECK(std::abs(s - kCyclicDisc) <= 1e-12);
}

TEST_CASE("bradley-terry totals vanish") {
  Rng rng(5);
  const auto t = GenerateBradleyTerry(testing::RandomScores(12, rng));
  const auto totals = TotalDiscrepancy(t);
  CHECK(totals.total <= 12.0 * 12 * 12 * kDefaultTol);
}

TEST_CASE("per-root sums match a brute-force recount") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 7;
    const auto t = GenerateRandom(n, seed);
    std::vector<double> brute(n, 0.0);
    double total = 0.0;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        for (Vertex c = b + 1; c < n; ++c) {
          const double v = ComputeDiscrepancy(t, {a, b, c}).value;
          total += v;
          brute[a] += v;
          brute[b] += v;
          brute[c] += v;
        }
    const auto totals = TotalDiscrepancy(t);
    CHECK(totals.total == doctest::Approx(total).epsilon(1e-12));
    double sum_roots = 0.0;
    for (Vertex r = 0; r < n; ++r) {
      CHECK(totals.per_root[r] == doctest::Approx(brute[r]).epsilon(1e-12));
      CHECK(RootDiscrepancy(t, r) == doctest::Approx(brute[r]).epsilon(1e-12));
      sum_roots += totals.per_root[r];
    }
    CHECK(std::abs(sum_roots - 3.0 * totals.total) <= 1e-9);
  }
}

TEST_CASE("total discrepancy is independent of the thread count") {
  const auto t = GenerateRandom(40, 3);
  const auto one = TotalDiscrepancy(t, 1);
  for (int threads : {2, 3, 8}) {
    const auto many = TotalDiscrepancy(t, threads);
    CHECK(many.total == one.total);
    CHECK(many.per_root == one.per_root);
  }
}

TEST_CASE("triangle counting identities") {
  for (int n = 3; n <= 12; ++n) {
    std::uint64_t seen = 0;
    std::vector<std::uint64_t> through(static_cast<std::size_t>(n), 0);
    ForEachTriangle(n, [&](const Triangle& tri) {
      ++seen;
      ++through[tri.x];
      ++through[tri.y];
      ++through[tri.z];
    });
    const auto un = static_cast<std::uint64_t>(n);
    CHECK(seen == TriangleCount(n));
    CHECK(seen == un * (un - 1) * (un - 2) / 6);
    std::uint64_t sum = 0;
    for (auto c : through) {
      CHECK(c == (un - 1) * (un - 2) / 2);
      sum += c;
    }
    CHECK(sum == 3 * seen);
  }
}

TEST_CASE("directed cycles") {
  CHECK_THROWS_AS(DirectedCycle({0, 1}), Error);
  CHECK_THROWS_AS(DirectedCycle({0, 1, 0}), Error);
  const auto c = GenerateCyclic(3, 0.9);
  CHECK(CycleRatio(c, DirectedCycle({0, 1, 2})) ==
        doctest::Approx(TriangleRatio(c, {0, 1, 2})).epsilon(1e-12));
  Rng rng(2);
  const auto bt = GenerateBradleyTerry(testing::RandomScores(6, rng));
  CHECK(IsCycleBalanced(bt, DirectedCycle({0, 3, 1, 5})));
  CHECK(std::abs(LogCycleRatio(bt, DirectedCycle({4, 2, 0, 1, 5}))) <=
        kDefaultTol);
}

TEST_CASE("symmetric difference of cycles sharing an edge") {
  const auto t = GenerateRandom(5, 2024);
  // C uses 0->2 and D uses 2->0; their sum is the 4-cycle 0->1->2->3->0.
  const DirectedCycle c({0, 1, 2});
  const DirectedCycle d({0, 2, 3});
  const CycleVector sum = CycleVector(c) + CycleVector(d);
  CHECK(sum.IsClosed());
  CHECK(sum.coefficients().size() == 4);
  const double joined =
      std::log(testing::BruteCycleProduct(t, {0, 1, 2, 3}));
  CHECK(std::log(CycleRatio(t, c) * CycleRatio(t, d)) ==
        doctest::Approx(joined).epsilon(1e-12));
  CHECK(sum.LogRatio(t) == doctest::Approx(joined).epsilon(1e-12));
  const CycleVector zero = CycleVector(c) + -CycleVector(c);
  CHECK(zero.coefficients().empty());
  CHECK(zero.LogRatio(t) == 0.0);
}

TEST_CASE("spanning trees") {
  const std::vector<std::pair<Vertex, Vertex>> path = {{0, 1}, {1, 2}, {2, 3}};
  const auto tree = SpanningTree::FromEdges(4, path);
  CHECK(tree.HasEdge(2, 1));
  CHECK_FALSE(tree.HasEdge(0, 2));
  CHECK(tree.Path(3, 0) == std::vector<Vertex>{3, 2, 1, 0});
  CHECK(tree.Depth(3) == 3);
  CHECK(tree.Parent(2) == 1);
  const std::vector<std::pair<Vertex, Vertex>> loop = {{0, 1}, {1, 2}, {2, 0}};
  CHECK_THROWS_AS(SpanningTree::FromEdges(4, loop), Error);
  const std::vector<std::pair<Vertex, Vertex>> split = {{0, 1}, {2, 3}};
  CHECK_THROWS_AS(SpanningTree::FromEdges(4, split), Error);
  const std::vector<std::pair<Vertex, Vertex>> dup = {{0, 1}, {1, 0}, {2, 3}};
  CHECK_THROWS_AS(SpanningTree::FromEdges(4, dup), Error);
  const auto star = SpanningTree::Star(5, 2);
  CHECK(star.edges().size() == 4);
  CHECK(star.HasEdge(2, 4));
  const auto cycles = FundamentalCycles(star);
  CHECK(cycles.size() == 6);
  for (const auto& cyc : cycles) CHECK(cyc.size() == 3);
}

TEST_CASE("fundamental cycles") {
  Rng rng(8);
  const auto bt = GenerateBradleyTerry(testing::RandomScores(7, rng));
  CHECK(CheckFundamentalCycles(bt, SpanningTree::Star(7, 0)));
  const auto c = GenerateCyclic(3, 0.9);
  const std::vector<std::pair<Vertex, Vertex>> t1 = {{0, 1}, {1, 2}};
  const std::vector<std::pair<Vertex, Vertex>> t2 = {{2, 0}, {0, 1}};
  CHECK_FALSE(CheckFundamentalCycles(c, t1));
  CHECK_FALSE(CheckFundamentalCycles(c, t2));
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.Below(6));
    const auto repaired =
        Repair(GenerateRandom(n, rng.NextU64())).tournament;
    const auto edges = testing::RandomTree(n, rng);
    const auto tree = SpanningTree::FromEdges(n, edges);
    CHECK(FundamentalCycles(tree).size() ==
          static_cast<std::size_t>(n * (n - 1) / 2 - (n - 1)));
    CHECK(CheckFundamentalCycles(repaired, tree, 1e-8));
  }
}

TEST_CASE("balance checks agree with the brute-force count") {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng.Below(6));
    const auto t = trial % 2 == 0
                       ? GenerateRandom(n, rng.NextU64())
                       : GenerateBradleyTerry(testing::RandomScores(n, rng));
    const auto brute = testing::BruteUnbalancedCount(t);
    CHECK(CountUnbalanced(t) == brute);
    CHECK(AllTrianglesBalanced(t) == (brute == 0));
    CHECK(RootTrianglesBalanced(t, 0) == (brute == 0));
  }
  CHECK(CountUnbalanced(GenerateCyclic(9, 0.9)) ==
        testing::BruteUnbalancedCount(GenerateCyclic(9, 0.9)));
}

}  // namespace
}  // namespace btcheck

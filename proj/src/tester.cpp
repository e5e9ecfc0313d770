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

#include "btcheck/tester.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "btcheck/error.hpp"

namespace btcheck {

namespace {

// Each sampled triangle reads the three stored pair weights; the reverse
// probabilities are complements of the same reads.
constexpr std::uint64_t kQueriesPerTriangle = 3;

bool InOpenUnit(double v) { return v > 0.0 && v < 1.0; }

struct BlockResult {
  std::uint64_t evaluated = 0;
  std::optional<std::pair<std::uint64_t, Triangle>> failure;
};

class SampleEvaluator {
 public:
  SampleEvaluator(const StochasticTournament& t, const TesterConfig& cfg)
      : t_(t), cfg_(cfg) {}

  bool Balanced(const Triangle& tri) const {
    if (cfg_.predicate == BalancePredicate::kEpsBalanced) {
      return IsEpsBalanced(t_, tri, cfg_.eps_balance, cfg_.tol);
    }
    return IsBalanced(t_, tri, cfg_.tol);
  }

  // Evaluates samples [first, last) of block `block`; stops at the first
  // unbalanced triangle.
  BlockResult RunBlock(std::uint64_t block, std::uint64_t total) const {
    Rng rng(MixSeed(cfg_.seed, block));
    const std::uint64_t first = block * kSampleBlock;
    const std::uint64_t last = std::min(total, first + kSampleBlock);
    BlockResult result;
    for (std::uint64_t i = first; i < last; ++i) {
      const Triangle tri = SampleTriangle(t_.size(), rng);
      ++result.evaluated;
      if (!Balanced(tri)) {
        result.failure.emplace(i, tri);
        break;
      }
    }
    return result;
  }

 private:
  const StochasticTournament& t_;
  const TesterConfig& cfg_;
};

}  // namespace

void TesterConfig::Validate() const {
  if (!InOpenUnit(eps)) {
    throw Error(ErrorCode::kOutOfRange, "eps must lie in (0, 1)");
  }
  if (!InOpenUnit(delta)) {
    throw Error(ErrorCode::kOutOfRange, "delta must lie in (0, 1)");
  }
  if (!(tol >= 0.0)) throw Error(ErrorCode::kOutOfRange, "tol must be >= 0");
  if (predicate == BalancePredicate::kEpsBalanced && !(eps_balance > 0.0)) {
    throw Error(ErrorCode::kOutOfRange, "eps_balance must be > 0");
  }
  if (threads < 1) throw Error(ErrorCode::kOutOfRange, "threads must be >= 1");
}

std::uint64_t SampleSize(double eps, double delta) {
  if (!InOpenUnit(eps) || !InOpenUnit(delta)) {
    throw Error(ErrorCode::kOutOfRange, "eps and delta must lie in (0, 1)");
  }
  const double k = std::ceil(-std::log(delta) / -std::log1p(-eps));
  if (!(k < 1e18)) throw Error(ErrorCode::kOutOfRange, "sample size overflow");
  auto size = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(k));
  // Guard against the ceiling landing one short after rounding.
  while (std::pow(1.0 - eps, static_cast<double>(size)) > delta) ++size;
  return size;
}

Triangle SampleTriangle(int n, Rng& rng) {
  // Virtual identity array; only the first three slots and the slots they
  // were swapped with ever differ from the identity.
  std::array<std::pair<Vertex, Vertex>, 3> moved{};
  int moved_count = 0;
  auto at = [&](Vertex i) {
    for (int k = moved_count - 1; k >= 0; --k) {
      if (moved[static_cast<std::size_t>(k)].first == i) {
        return moved[static_cast<std::size_t>(k)].second;
      }
    }
    return i;
  };
  std::array<Vertex, 3> picked{};
  for (Vertex k = 0; k < 3; ++k) {
    const auto j = k + static_cast<Vertex>(
                           rng.Below(static_cast<std::uint64_t>(n - k)));
    const Vertex vk = at(k);
    const Vertex vj = at(j);
    picked[static_cast<std::size_t>(k)] = vj;
    // Slot k is never read again; record the value displaced into slot j.
    moved[static_cast<std::size_t>(moved_count++)] = {j, vk};
  }
  return Triangle::Of(picked[0], picked[1], picked[2]);
}

TestVerdict TestBradleyTerry(const StochasticTournament& t,
                             const TesterConfig& cfg) {
  cfg.Validate();
  if (t.size() < 3) {
    throw Error(ErrorCode::kTooFewVertices,
                "the tester needs at least 3 vertices");
  }
  const std::uint64_t total = SampleSize(cfg.eps, cfg.delta);
  const std::uint64_t blocks = (total + kSampleBlock - 1) / kSampleBlock;
  const SampleEvaluator eval(t, cfg);

  TestVerdict verdict;
  verdict.samples_requested = total;
  std::uint64_t evaluated = 0;
  std::optional<std::pair<std::uint64_t, Triangle>> failure;

  const int threads = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.threads), blocks));
  if (threads <= 1) {
    for (std::uint64_t b = 0; b < blocks && !failure; ++b) {
      const BlockResult r = eval.RunBlock(b, total);
      evaluated += r.evaluated;
      failure = r.failure;
    }
  } else {
    // Workers skip blocks past the lowest failing block seen so far; the
    // witness is the failure with the lowest sample index.
    std::atomic<std::uint64_t> first_bad_block{
        std::numeric_limits<std::uint64_t>::max()};
    std::vector<BlockResult> results(blocks);
    {
      std::vector<std::jthread> pool;
      for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          for (std::uint64_t b = static_cast<std::uint64_t>(w); b < blocks;
               b += static_cast<std::uint64_t>(threads)) {
            if (b > first_bad_block.load()) break;
            results[b] = eval.RunBlock(b, total);
            if (results[b].failure) {
              std::uint64_t cur = first_bad_block.load();
              while (b < cur && !first_bad_block.compare_exchange_weak(cur, b)) {
              }
            }
          }
        });
      }
    }
    for (const BlockResult& r : results) {
      evaluated += r.evaluated;
      if (r.failure && (!failure || r.failure->first < failure->first)) {
        failure = r.failure;
      }
    }
  }

  verdict.queries = kQueriesPerTriangle * evaluated;
  if (failure) {
    verdict.outcome = Outcome::kReject;
    verdict.witness = failure->second;
    verdict.samples_used = failure->first + 1;
  } else {
    verdict.outcome = Outcome::kAccept;
    verdict.samples_used = total;
  }
  return verdict;
}

double EstimateUnbalancedFraction(const StochasticTournament& t,
                                  std::uint64_t samples, std::uint64_t seed,
                                  double tol) {
  if (samples < 1) throw Error(ErrorCode::kOutOfRange, "samples must be >= 1");
  if (t.size() < 3) {
    throw Error(ErrorCode::kTooFewVertices,
                "sampling triangles needs at least 3 vertices");
  }
  Rng rng(seed);
  std::uint64_t bad = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    if (!IsBalanced(t, SampleTriangle(t.size(), rng), tol)) ++bad;
  }
  return static_cast<double>(bad) / static_cast<double>(samples);
}

}  // namespace btcheck

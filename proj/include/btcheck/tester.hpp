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

// One-sided property tester for the Bradley-Terry condition.
//
// The tester samples sample_size(eps, delta) triangles independently and
// uniformly and accepts iff all of them are balanced. A Bradley-Terry input
// is always accepted. If the input is eps-far in L1 from every Bradley-Terry
// tournament then at least eps * C(n,3) triangles are unbalanced, so all
// samples miss them with probability at most (1 - eps)^k <= delta.
// The number of probability queries is 3 * k, independent of n.

#ifndef BTCHECK_TESTER_HPP_
#define BTCHECK_TESTER_HPP_

#include <cstdint>
#include <optional>

#include "btcheck/balance.hpp"
#include "btcheck/rng.hpp"
#include "btcheck/tournament.hpp"

namespace btcheck {

enum class Outcome { kAccept, kReject };

enum class BalancePredicate {
  kExact,        // |log lambda| <= tol
  kEpsBalanced,  // lambda within [1/(1+eps_balance), 1+eps_balance]
};

struct TesterConfig {
  double eps = 0.1;          // farness, in (0, 1)
  double delta = 1.0 / 3.0;  // failure probability, in (0, 1)
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  BalancePredicate predicate = BalancePredicate::kExact;
  double eps_balance = 0.0;  // used by kEpsBalanced
  int threads = 1;

  // Throws kOutOfRange.
  void Validate() const;
};

struct TestVerdict {
  Outcome outcome = Outcome::kAccept;
  std::optional<Triangle> witness;  // set iff kReject
  std::uint64_t samples_requested = 0;
  std::uint64_t samples_used = 0;
  std::uint64_t queries = 0;
};

// ceil(ln(1/delta) / -ln(1 - eps)); the smallest k with (1-eps)^k <= delta.
// Throws kOutOfRange unless eps and delta lie in (0, 1).
std::uint64_t SampleSize(double eps, double delta = 1.0 / 3.0);

// Uniform over the C(n,3) triangles: three steps of a Fisher-Yates shuffle
// on 0..n-1.
Triangle SampleTriangle(int n, Rng& rng);

// Samples are drawn in fixed blocks of kSampleBlock, block b from its own
// stream MixSeed(seed, b), so the verdict is independent of cfg.threads.
inline constexpr std::uint64_t kSampleBlock = 64;

// Throws kTooFewVertices for n < 3 and kOutOfRange on a bad config.
TestVerdict TestBradleyTerry(const StochasticTournament& t,
                             const TesterConfig& cfg);

// Fraction of `samples` uniform triangles that fail IsBalanced(tol).
double EstimateUnbalancedFraction(const StochasticTournament& t,
                                  std::uint64_t samples, std::uint64_t seed,
                                  double tol = kDefaultTol);

}  // namespace btcheck

#endif  // BTCHECK_TESTER_HPP_

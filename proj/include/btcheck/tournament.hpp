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

// Stochastic tournaments: a complete graph on n vertices where every pair
// {x, y} carries one directed edge x->y with weight w(xy) = p_xy, the
// probability that x beats y. The reverse probability p_yx = 1 - p_xy is
// always derived, never stored.

#ifndef BTCHECK_TOURNAMENT_HPP_
#define BTCHECK_TOURNAMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace btcheck {

using Vertex = int;

// Weights must lie in [floor, 1 - floor]; every ratio p_xy / p_yx used by the
// library is then finite and positive.
inline constexpr double kDefaultFloor = 1e-12;

// Default tolerance on |log ratio| for "exactly balanced" and on the
// relative gap in detailed balance.
inline constexpr double kDefaultTol = 1e-9;

// A directed edge `from -> to` with p = p_{from,to}.
struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  double p = 0.5;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class StochasticTournament {
 public:
  // Builds a tournament from one entry per unordered pair. Entry direction
  // fixes the orientation of the stored edge.
  //
  // Throws Error with kTooFewVertices, kSelfLoop, kVertexOutOfRange,
  // kDuplicatePair, kMissingPair or kOutOfRangeProbability.
  static StochasticTournament FromEntries(int n, std::span<const Edge> entries,
                                          double floor = kDefaultFloor);

  int size() const { return n_; }
  double floor() const { return floor_; }
  std::size_t pair_count() const { return weights_.size(); }

  // p_xy. Throws kSelfLoop or kVertexOutOfRange.
  double Prob(Vertex x, Vertex y) const;

  // p_xy without argument validation; x != y and both in range.
  double ProbUnchecked(Vertex x, Vertex y) const {
    if (x < y) {
      const std::size_t i = PairIndex(x, y);
      return forward_[i] ? weights_[i] : 1.0 - weights_[i];
    }
    const std::size_t i = PairIndex(y, x);
    return forward_[i] ? 1.0 - weights_[i] : weights_[i];
  }

  // True iff the stored orientation of {x, y} is x -> y.
  bool HasEdge(Vertex from, Vertex to) const;

  // The stored edge of the pair {x, y}, with its weight.
  Edge StoredEdge(Vertex x, Vertex y) const;

  // Replaces w(from -> to). The pair must currently be oriented from -> to
  // (kPreconditionFailed otherwise) and w must respect the floor.
  void SetWeight(Vertex from, Vertex to, double w);

  // Stored edges, pairs in lexicographic order of (min, max).
  std::vector<Edge> Edges() const;

  friend bool operator==(const StochasticTournament&,
                         const StochasticTournament&) = default;

 private:
  StochasticTournament(int n, double floor);

  std::size_t PairIndex(Vertex lo, Vertex hi) const {
    const auto x = static_cast<std::size_t>(lo);
    const auto nn = static_cast<std::size_t>(n_);
    return x * nn - x * (x + 1) / 2 + static_cast<std::size_t>(hi - lo - 1);
  }
  void CheckPair(Vertex x, Vertex y) const;

  int n_ = 0;
  double floor_ = kDefaultFloor;
  std::vector<double> weights_;      // one per unordered pair
  std::vector<std::uint8_t> forward_;  // 1 iff stored as lo -> hi
};

// Row-stochastic transition matrix of the walk that picks an opponent
// uniformly and moves to it with the probability of winning that game.
class MarkovMatrix {
 public:
  explicit MarkovMatrix(int n)
      : n_(n), q_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

  int size() const { return n_; }
  double operator()(Vertex x, Vertex y) const { return q_[Index(x, y)]; }
  double& operator()(Vertex x, Vertex y) { return q_[Index(x, y)]; }

 private:
  std::size_t Index(Vertex x, Vertex y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(y);
  }

  int n_;
  std::vector<double> q_;
};

// Positive probability vector.
class StationaryDistribution {
 public:
  // Validates positivity, finiteness and unit sum (within 1e-12).
  explicit StationaryDistribution(std::vector<double> pi);

  // Scales positive masses to unit sum.
  static StationaryDistribution Normalized(std::span<const double> mass);

  std::size_t size() const { return pi_.size(); }
  double operator[](std::size_t i) const { return pi_[i]; }
  const std::vector<double>& values() const { return pi_; }

 private:
  std::vector<double> pi_;
};

// Strictly positive, finite strengths a(x).
class ScoreVector {
 public:
  explicit ScoreVector(std::vector<double> a);

  std::size_t size() const { return a_.size(); }
  double operator[](std::size_t i) const { return a_[i]; }
  const std::vector<double>& values() const { return a_; }

 private:
  std::vector<double> a_;
};

MarkovMatrix ToMarkovMatrix(const StochasticTournament& t);

// eps == 0: exact detailed balance, |pi_x p_xy - pi_y p_yx| relative to the
// larger side at most `tol`. eps > 0: every ratio pi_x p_xy / (pi_y p_yx)
// lies in [1/(1+eps), 1+eps], with `tol` slack on the log scale.
bool CheckReversible(const StochasticTournament& t,
                     const StationaryDistribution& pi, double eps,
                     double tol = kDefaultTol);

// p_xy = a(x) / (a(x) + a(y)), oriented lo -> hi.
StochasticTournament GenerateBradleyTerry(const ScoreVector& scores,
                                          double floor = kDefaultFloor);

// x_i beats x_{i+1 mod n} with probability p; all other pairs are fair.
StochasticTournament GenerateCyclic(int n, double p,
                                    double floor = kDefaultFloor);

// Adds uniform noise in [-noise, noise] to each stored weight and clamps
// into [floor, 1 - floor]. Orientation is preserved.
StochasticTournament GeneratePerturbed(const StochasticTournament& base,
                                       double noise, std::uint64_t seed);

// Each weight uniform on [floor, 1 - floor], oriented lo -> hi.
StochasticTournament GenerateRandom(int n, std::uint64_t seed,
                                    double floor = kDefaultFloor);

}  // namespace btcheck

#endif  // BTCHECK_TOURNAMENT_HPP_

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

#include "btcheck/tournament.hpp"

#include <algorithm>
#include <utility>
#include <cmath>
#include <string>

#include "btcheck/error.hpp"
#include "btcheck/rng.hpp"

namespace btcheck {

namespace {

std::string PairName(Vertex x, Vertex y) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

bool InRange(double p, double floor) {
  return std::isfinite(p) && p >= floor && p <= 1.0 - floor;
}

}  // namespace

StochasticTournament::StochasticTournament(int n, double floor)
    : n_(n), floor_(floor) {
  const auto nn = static_cast<std::size_t>(n);
  weights_.assign(nn * (nn - 1) / 2, 0.5);
  forward_.assign(weights_.size(), 1);
}

StochasticTournament StochasticTournament::FromEntries(
    int n, std::span<const Edge> entries, double floor) {
  if (n < 2) {
    throw Error(ErrorCode::kTooFewVertices,
                "a tournament needs at least 2 vertices, got " +
                    std::to_string(n));
  }
  if (!(floor > 0.0 && floor < 0.5)) {
    throw Error(ErrorCode::kOutOfRange, "floor must lie in (0, 0.5)");
  }
  StochasticTournament t(n, floor);
  std::vector<std::uint8_t> seen(t.weights_.size(), 0);
  for (const Edge& e : entries) {
    if (e.from == e.to) {
      throw Error(ErrorCode::kSelfLoop, "vertex " + std::to_string(e.from));
    }
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      throw Error(ErrorCode::kVertexOutOfRange, PairName(e.from, e.to));
    }
    if (!InRange(e.p, floor)) {
      throw Error(ErrorCode::kOutOfRangeProbability,
                  "p = " + std::to_string(e.p) + " on " +
                      PairName(e.from, e.to));
    }
    const Vertex lo = std::min(e.from, e.to);
    const Vertex hi = std::max(e.from, e.to);
    const std::size_t i = t.PairIndex(lo, hi);
    if (seen[i]) {
      throw Error(ErrorCode::kDuplicatePair, PairName(lo, hi));
    }
    seen[i] = 1;
    t.weights_[i] = e.p;
    t.forward_[i] = e.from == lo ? 1 : 0;
  }
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      if (!seen[t.PairIndex(x, y)]) {
        throw Error(ErrorCode::kMissingPair, PairName(x, y));
      }
    }
  }
  return t;
}

void StochasticTournament::CheckPair(Vertex x, Vertex y) const {
  if (x < 0 || x >= n_ || y < 0 || y >= n_) {
    throw Error(ErrorCode::kVertexOutOfRange, PairName(x, y));
  }
  if (x == y) throw Error(ErrorCode::kSelfLoop, "vertex " + std::to_string(x));
}

double StochasticTournament::Prob(Vertex x, Vertex y) const {
  CheckPair(x, y);
  return ProbUnchecked(x, y);
}

bool StochasticTournament::HasEdge(Vertex from, Vertex to) const {
  CheckPair(from, to);
  if (from < to) return forward_[PairIndex(from, to)] != 0;
  return forward_[PairIndex(to, from)] == 0;
}

Edge StochasticTournament::StoredEdge(Vertex x, Vertex y) const {
  CheckPair(x, y);
  const Vertex lo = std::min(x, y);
  const Vertex hi = std::max(x, y);
  const std::size_t i = PairIndex(lo, hi);
  return forward_[i] ? Edge{lo, hi, weights_[i]} : Edge{hi, lo, weights_[i]};
}

void StochasticTournament::SetWeight(Vertex from, Vertex to, double w) {
  if (!HasEdge(from, to)) {
    throw Error(ErrorCode::kPreconditionFailed,
                "edge " + PairName(from, to) + " is stored reversed");
  }
  if (!InRange(w, floor_)) {
    throw Error(ErrorCode::kOutOfRangeProbability,
                "w = " + std::to_string(w) + " on " + PairName(from, to));
  }
  weights_[PairIndex(std::min(from, to), std::max(from, to))] = w;
}

std::vector<Edge> StochasticTournament::Edges() const {
  std::vector<Edge> out;
  out.reserve(weights_.size());
  for (Vertex x = 0; x < n_; ++x) {
    for (Vertex y = x + 1; y < n_; ++y) {
      const std::size_t i = PairIndex(x, y);
      out.push_back(forward_[i] ? Edge{x, y, weights_[i]}
                                : Edge{y, x, weights_[i]});
    }
  }
  return out;
}

StationaryDistribution::StationaryDistribution(std::vector<double> pi)
    : pi_(std::move(pi)) {
  double sum = 0.0;
  for (double v : pi_) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw Error(ErrorCode::kOutOfRange,
                  "stationary mass must be positive and finite");
    }
    sum += v;
  }
  if (pi_.empty() || std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::kOutOfRange, "stationary masses must sum to 1");
  }
}

StationaryDistribution StationaryDistribution::Normalized(
    std::span<const double> mass) {
  double sum = 0.0;
  for (double v : mass) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw Error(ErrorCode::kOutOfRange,
                  "stationary mass must be positive and finite");
    }
    sum += v;
  }
  std::vector<double> pi(mass.begin(), mass.end());
  for (double& v : pi) v /= sum;
  return StationaryDistribution(std::move(pi));
}

ScoreVector::ScoreVector(std::vector<double> a) : a_(std::move(a)) {
  for (double v : a_) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw Error(ErrorCode::kOutOfRange,
                  "scores must be positive and finite");
    }
  }
}

MarkovMatrix ToMarkovMatrix(const StochasticTournament& t) {
  const int n = t.size();
  const double inv_n = 1.0 / n;
  MarkovMatrix q(n);
  for (Vertex x = 0; x < n; ++x) {
    double out = 0.0;
    for (Vertex y = 0; y < n; ++y) {
      if (y == x) continue;
      const double p = t.ProbUnchecked(x, y);
      q(x, y) = p * inv_n;
      out += p;
    }
    q(x, x) = 1.0 - out * inv_n;
  }
  return q;
}

bool CheckReversible(const StochasticTournament& t,
                     const StationaryDistribution& pi, double eps,
                     double tol) {
  if (pi.size() != static_cast<std::size_t>(t.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "distribution has " + std::to_string(pi.size()) +
                    " entries, tournament has " + std::to_string(t.size()) +
                    " vertices");
  }
  if (!(eps >= 0.0) || !(tol >= 0.0)) {
    throw Error(ErrorCode::kOutOfRange, "eps and tol must be non-negative");
  }
  const double bound = std::log1p(eps) + tol;
  const int n = t.size();
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      const double forward = pi[x] * t.ProbUnchecked(x, y);
      const double backward = pi[y] * t.ProbUnchecked(y, x);
      if (eps == 0.0) {
        if (std::abs(forward - backward) > tol * std::max(forward, backward)) {
          return false;
        }
      } else if (std::abs(std::log(forward / backward)) > bound) {
        return false;
      }
    }
  }
  return true;
}

StochasticTournament GenerateBradleyTerry(const ScoreVector& scores,
                                          double floor) {
  const int n = static_cast<int>(scores.size());
  std::vector<Edge> entries;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      entries.push_back({x, y, scores[x] / (scores[x] + scores[y])});
    }
  }
  return StochasticTournament::FromEntries(n, entries, floor);
}

StochasticTournament GenerateCyclic(int n, double p, double floor) {
  if (n < 3) {
    throw Error(ErrorCode::kTooFewVertices,
                "a cyclic tournament needs at least 3 vertices");
  }
  std::vector<Edge> entries;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      if (y == x + 1) {
        entries.push_back({x, y, p});
      } else if (x == 0 && y == n - 1) {
        entries.push_back({y, x, p});
      } else {
        entries.push_back({x, y, 0.5});
      }
    }
  }
  return StochasticTournament::FromEntries(n, entries, floor);
}

StochasticTournament GeneratePerturbed(const StochasticTournament& base,
                                       double noise, std::uint64_t seed) {
  if (!(noise >= 0.0 && noise < 0.5)) {
    throw Error(ErrorCode::kOutOfRange, "noise must lie in [0, 0.5)");
  }
  Rng rng(seed);
  const double lo = base.floor();
  const double hi = 1.0 - base.floor();
  std::vector<Edge> entries = base.Edges();
  for (Edge& e : entries) {
    const double shift = rng.Uniform(-noise, noise);
    if (noise > 0.0) e.p = std::clamp(e.p + shift, lo, hi);
  }
  return StochasticTournament::FromEntries(base.size(), entries, base.floor());
}

StochasticTournament GenerateRandom(int n, std::uint64_t seed, double floor) {
  if (n < 2) {
    throw Error(ErrorCode::kTooFewVertices,
                "a tournament needs at least 2 vertices");
  }
  Rng rng(seed);
  std::vector<Edge> entries;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      entries.push_back(
          {x, y, std::min(rng.Uniform(floor, 1.0 - floor), 1.0 - floor)});
    }
  }
  return StochasticTournament::FromEntries(n, entries, floor);
}

}  // namespace btcheck

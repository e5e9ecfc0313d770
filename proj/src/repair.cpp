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

#include "btcheck/repair.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "btcheck/error.hpp"

namespace btcheck {

namespace {

void CheckVertex(const StochasticTournament& t, Vertex v) {
  if (v < 0 || v >= t.size()) {
    throw Error(ErrorCode::kVertexOutOfRange,
                "vertex " + std::to_string(v) + " not in [0, " +
                    std::to_string(t.size()) + ")");
  }
}

void CheckDimension(const StochasticTournament& t, std::size_t size) {
  if (size != static_cast<std::size_t>(t.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(size) + " entries for " +
                    std::to_string(t.size()) + " vertices");
  }
}

double Logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double LogOdds(const StochasticTournament& t, Vertex x, Vertex y) {
  return std::log(t.ProbUnchecked(x, y)) - std::log(t.ProbUnchecked(y, x));
}

double L1ToLogScores(const StochasticTournament& t, std::span<const double> u) {
  double sum = 0.0;
  const int n = t.size();
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      sum += std::abs(t.ProbUnchecked(x, y) -
                      Logistic(u[static_cast<std::size_t>(x)] -
                               u[static_cast<std::size_t>(y)]));
    }
  }
  return sum;
}

}  // namespace

RepairResult RepairWithRoot(const StochasticTournament& t, Vertex r,
                            double tol) {
  CheckVertex(t, r);
  if (t.size() < 3) {
    throw Error(ErrorCode::kTooFewVertices, "repair needs at least 3 vertices");
  }
  RepairResult out{t, {}};
  RepairReport& report = out.report;
  report.root = r;
  const double lo = t.floor();
  const double hi = 1.0 - t.floor();
  double total = 0.0;
  const int n = t.size();
  for (Vertex y = 0; y < n; ++y) {
    if (y == r) continue;
    for (Vertex z = y + 1; z < n; ++z) {
      if (z == r) continue;
      const Triangle tri = Triangle::Of(r, y, z);
      if (IsBalanced(t, tri, tol)) continue;
      // Edges through r are never edited, so reading the input is the same
      // as reading the partially repaired tournament.
      const Edge before = t.StoredEdge(y, z);
      EdgeEdit edit;
      edit.before = before;
      edit.triangle = tri;
      edit.discrepancy = ComputeDiscrepancy(t, tri).value;
      const double balancing = BalancingProb(t, before.from, before.to, r);
      edit.after = std::clamp(balancing, lo, hi);
      edit.clamped = edit.after != balancing;
      const double change = std::abs(edit.after - before.p);
      report.per_edge_bound_ok =
          report.per_edge_bound_ok && change <= edit.discrepancy + tol;
      report.clamped = report.clamped || edit.clamped;
      total += change;
      out.tournament.SetWeight(before.from, before.to, edit.after);
      report.edits.push_back(edit);
    }
  }
  report.total_change = total;
  return out;
}

Vertex BestRoot(const StochasticTournament& t, int threads, double tol) {
  if (t.size() < 3) {
    throw Error(ErrorCode::kTooFewVertices,
                "root selection needs at least 3 vertices");
  }
  const std::vector<double> sums = TotalDiscrepancy(t, threads).per_root;
  const double best = *std::min_element(sums.begin(), sums.end());
  const auto it = std::find_if(sums.begin(), sums.end(),
                               [&](double s) { return s <= best + tol; });
  return static_cast<Vertex>(it - sums.begin());
}

RepairResult Repair(const StochasticTournament& t, int threads, double tol) {
  return RepairWithRoot(t, BestRoot(t, threads, tol), tol);
}

ScoreVector ScoresFromRoot(const StochasticTournament& t, Vertex r) {
  CheckVertex(t, r);
  std::vector<double> a(static_cast<std::size_t>(t.size()), 1.0);
  for (Vertex y = 0; y < t.size(); ++y) {
    if (y != r) {
      a[static_cast<std::size_t>(y)] =
          t.ProbUnchecked(y, r) / t.ProbUnchecked(r, y);
    }
  }
  return ScoreVector(std::move(a));
}

bool VerifyApproxBradleyTerry(const StochasticTournament& t,
                              const ScoreVector& a, double eps, double tol) {
  CheckDimension(t, a.size());
  if (!(eps >= 0.0) || !(tol >= 0.0)) {
    throw Error(ErrorCode::kOutOfRange, "eps and tol must be non-negative");
  }
  const double bound = std::log1p(eps) + tol;
  const int n = t.size();
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (x == y) continue;
      const double ax = a[static_cast<std::size_t>(x)];
      const double ay = a[static_cast<std::size_t>(y)];
      const double model = ax / (ax + ay);
      if (std::abs(std::log(t.ProbUnchecked(x, y) / model)) > bound) {
        return false;
      }
    }
  }
  return true;
}

double ApproxBradleyTerryEps(const StochasticTournament& t,
                             const ScoreVector& a, double resolution) {
  CheckDimension(t, a.size());
  if (!(resolution > 0.0)) {
    throw Error(ErrorCode::kOutOfRange, "resolution must be positive");
  }
  if (VerifyApproxBradleyTerry(t, a, 0.0, 0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (!VerifyApproxBradleyTerry(t, a, hi, 0.0)) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw Error(ErrorCode::kOutOfRange, "no finite eps fits these scores");
    }
  }
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (VerifyApproxBradleyTerry(t, a, mid, 0.0) ? hi : lo) = mid;
  }
  return hi;
}

StationaryDistribution ScoresToStationary(const ScoreVector& a) {
  std::vector<double> inverse;
  inverse.reserve(a.size());
  for (double v : a.values()) inverse.push_back(1.0 / v);
  return StationaryDistribution::Normalized(inverse);
}

bool CheckSevenEps(const StochasticTournament& t,
                   const StationaryDistribution& pi, double eps, double tol) {
  if (!CheckReversible(t, pi, eps, tol)) {
    throw Error(ErrorCode::kPreconditionFailed,
                "distribution is not eps-reversible for this tournament");
  }
  bool ok = true;
  ForEachTriangle(t.size(), [&](const Triangle& tri) {
    ok = ok && IsEpsBalanced(t, tri, 7.0 * eps, 3.0 * tol);
  });
  return ok;
}

TreeExtension ExtendTree(const TreeWeights& tw, double floor) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(tw.edges.size());
  for (const Edge& e : tw.edges) pairs.emplace_back(e.from, e.to);
  const SpanningTree tree = SpanningTree::FromEdges(tw.n, pairs);
  if (tw.n < 2) {
    throw Error(ErrorCode::kTooFewVertices, "a tournament needs 2 vertices");
  }

  // log(p_uv / p_vu) for tree edges, keyed by the parent -> child direction.
  const auto n = static_cast<std::size_t>(tw.n);
  std::vector<double> child_log_odds(n, 0.0);
  for (const Edge& e : tw.edges) {
    if (!(e.p >= floor && e.p <= 1.0 - floor)) {
      throw Error(ErrorCode::kOutOfRangeProbability,
                  "tree weight " + std::to_string(e.p));
    }
    const double forward = std::log(e.p) - std::log1p(-e.p);
    if (tree.Parent(e.to) == e.from) {
      child_log_odds[static_cast<std::size_t>(e.to)] = forward;
    } else {
      child_log_odds[static_cast<std::size_t>(e.from)] = -forward;
    }
  }

  // pi(child) = pi(parent) * p(parent, child) / p(child, parent).
  std::vector<double> log_pi(n, 0.0);
  for (Vertex v : tree.Order()) {
    if (v == 0) continue;
    const auto i = static_cast<std::size_t>(v);
    log_pi[i] = log_pi[static_cast<std::size_t>(tree.Parent(v))] +
                child_log_odds[i];
  }

  std::vector<Edge> entries = tw.edges;
  std::vector<std::pair<Vertex, Vertex>> clamped_chords;
  for (Vertex x = 0; x < tw.n; ++x) {
    for (Vertex y = x + 1; y < tw.n; ++y) {
      if (tree.HasEdge(x, y)) continue;
      // w(x -> y) / (1 - w(x -> y)) = pi(y) / pi(x)
      const double w = Logistic(log_pi[static_cast<std::size_t>(y)] -
                                log_pi[static_cast<std::size_t>(x)]);
      const double clamped = std::clamp(w, floor, 1.0 - floor);
      if (clamped != w) clamped_chords.emplace_back(x, y);
      entries.push_back({x, y, clamped});
    }
  }
  return TreeExtension{StochasticTournament::FromEntries(tw.n, entries, floor),
                       std::move(log_pi), std::move(clamped_chords)};
}

ScoreVector FitScoresLeastSquares(const StochasticTournament& t) {
  const int n = t.size();
  std::vector<double> u(static_cast<std::size_t>(n), 0.0);
  for (Vertex x = 0; x < n; ++x) {
    double b = 0.0;
    for (Vertex y = 0; y < n; ++y) {
      if (y != x) b += LogOdds(t, x, y);
    }
    u[static_cast<std::size_t>(x)] = b / n;
  }
  std::vector<double> a;
  a.reserve(u.size());
  for (double v : u) a.push_back(std::exp(v - u[0]));
  return ScoreVector(std::move(a));
}

double LeastSquaresObjective(const StochasticTournament& t,
                             std::span<const double> log_scores) {
  CheckDimension(t, log_scores.size());
  double sum = 0.0;
  const int n = t.size();
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      const double r = LogOdds(t, x, y) -
                       (log_scores[static_cast<std::size_t>(x)] -
                        log_scores[static_cast<std::size_t>(y)]);
      sum += r * r;
    }
  }
  return sum;
}

double L1DistanceToScores(const StochasticTournament& t, const ScoreVector& a) {
  CheckDimension(t, a.size());
  std::vector<double> u;
  u.reserve(a.size());
  for (double v : a.values()) u.push_back(std::log(v));
  return L1ToLogScores(t, u);
}

double TriangleRepairLowerBound(const StochasticTournament& t,
                                const Triangle& tri, double tol,
                                int resolution) {
  if (resolution < 1) {
    throw Error(ErrorCode::kOutOfRange, "resolution must be positive");
  }
  const auto [x, y, z] = tri;
  std::array<double, 3> p = {t.Prob(x, y), t.Prob(y, z), t.Prob(z, x)};
  std::array<double, 3> logit{};
  double excess = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    logit[i] = std::log(p[i]) - std::log1p(-p[i]);
    excess += logit[i];
  }
  if (std::abs(excess) <= tol) return 0.0;
  if (excess < 0.0) {
    // Work with the reverse orientation so the log-odds must come down.
    for (std::size_t i = 0; i < 3; ++i) {
      p[i] = 1.0 - p[i];
      logit[i] = -logit[i];
    }
    excess = -excess;
  }
  // Lowering edge i's log-odds by d >= 0 costs p_i - logistic(logit_i - d),
  // increasing in d. Any balancing edit lowers them by d1 + d2 + d3 = excess.
  auto cost = [&](std::size_t i, double d) {
    return p[i] - Logistic(logit[i] - d);
  };
  const double h = excess / resolution;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; i + j <= resolution && j < resolution; ++j) {
      // Cell [ih, (i+1)h] x [jh, (j+1)h]; d3 is at least excess - (i+j+2)h.
      const double d3 = std::max(0.0, excess - (i + j + 2) * h);
      best = std::min(best, cost(0, i * h) + cost(1, j * h) + cost(2, d3));
    }
  }
  return std::max(0.0, best);
}

DistanceBounds L1DistanceOracle(const StochasticTournament& t, int budget,
                                double tol) {
  const int n = t.size();
  if (n > kDeskScale) {
    throw Error(ErrorCode::kTooLarge,
                std::to_string(n) + " vertices; the oracle handles at most " +
                    std::to_string(kDeskScale));
  }
  if (budget < 0) throw Error(ErrorCode::kOutOfRange, "budget must be >= 0");
  DistanceBounds out;
  if (n < 3) return out;  // every 2-vertex tournament is Bradley-Terry

  out.repair_upper = std::numeric_limits<double>::infinity();
  std::vector<double> repaired_u;
  for (Vertex r = 0; r < n; ++r) {
    // A clamped repair is not reversible; cost the unclamped one instead,
    // which is the Bradley-Terry tournament of the root's scores.
    const RepairResult fixed = RepairWithRoot(t, r, tol);
    const ScoreVector a = ScoresFromRoot(fixed.tournament, r);
    const double change = fixed.report.clamped ? L1DistanceToScores(t, a)
                                               : fixed.report.total_change;
    if (change < out.repair_upper) {
      out.repair_upper = change;
      out.repair_root = r;
      repaired_u.clear();
      for (double v : a.values()) repaired_u.push_back(std::log(v / a[0]));
    }
  }

  // Coordinate descent on u = log a with u_0 pinned, started from the better
  // of the least-squares fit and the best repair. Each coordinate tries
  // the kinks u_y + logit(p_xy) of its terms and a pattern step of size
  // `step`; the step halves after a sweep without progress.
  std::vector<double> u;
  const ScoreVector fit = FitScoresLeastSquares(t);
  for (double v : fit.values()) u.push_back(std::log(v));
  double value = L1ToLogScores(t, u);
  if (const double v = L1ToLogScores(t, repaired_u); v < value) {
    value = v;
    u = repaired_u;
  }
  double step = 1.0;
  for (; out.sweeps < budget && step > 1e-12; ++out.sweeps) {
    bool improved = false;
    for (Vertex x = 1; x < n; ++x) {
      auto& ux = u[static_cast<std::size_t>(x)];
      const double start = ux;
      std::vector<double> candidates{start - step, start + step};
      for (Vertex y = 0; y < n; ++y) {
        if (y != x) {
          candidates.push_back(u[static_cast<std::size_t>(y)] +
                               LogOdds(t, x, y));
        }
      }
      double best_u = start;
      for (double c : candidates) {
        ux = c;
        const double v = L1ToLogScores(t, u);
        if (v < value) {
          value = v;
          best_u = c;
          improved = true;
        }
      }
      ux = best_u;
    }
    if (!improved) step *= 0.5;
  }
  out.descent_upper = value;
  out.upper = std::min(out.repair_upper, out.descent_upper);

  ForEachTriangle(n, [&](const Triangle& tri) {
    out.lower = std::max(out.lower, TriangleRepairLowerBound(t, tri, tol));
  });
  return out;
}

}  // namespace btcheck

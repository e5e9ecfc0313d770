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

// Repairing tournaments into reversible ones, recovering Bradley-Terry
// scores, and bounding the L1 distance to the Bradley-Terry family.

#ifndef BTCHECK_REPAIR_HPP_
#define BTCHECK_REPAIR_HPP_

#include <span>
#include <utility>
#include <vector>

#include "btcheck/balance.hpp"
#include "btcheck/tournament.hpp"

namespace btcheck {

// One re-weighted edge. `before` is the stored edge; the edit keeps its
// orientation.
struct EdgeEdit {
  Edge before;
  double after = 0.0;
  Triangle triangle;        // the triangle through the root it balances
  double discrepancy = 0.0; // disc of that triangle in the input
  bool clamped = false;     // balancing value fell outside the floor
};

struct RepairReport {
  Vertex root = 0;
  std::vector<EdgeEdit> edits;
  double total_change = 0.0;
  bool per_edge_bound_ok = true;  // |after - before| <= disc (+ tol)
  bool clamped = false;
};

struct RepairResult {
  StochasticTournament tournament;
  RepairReport report;
};

// Balances every triangle through r by re-weighting the edge opposite r.
// Triangles already balanced within `tol` are left alone. Edges incident to
// r are never touched. Throws kVertexOutOfRange, kTooFewVertices.
RepairResult RepairWithRoot(const StochasticTournament& t, Vertex r,
                            double tol = kDefaultTol);

// The root whose triangles carry the least total discrepancy. Sums within
// `tol` of the minimum count as ties; ties go to the lowest id.
Vertex BestRoot(const StochasticTournament& t, int threads = 1,
                double tol = kDefaultTol);

// RepairWithRoot at BestRoot. The total change is at most
// (3/n) * sum over all triangles of disc.
RepairResult Repair(const StochasticTournament& t, int threads = 1,
                    double tol = kDefaultTol);

// a(r) = 1 and a(y) = p_yr / p_ry.
ScoreVector ScoresFromRoot(const StochasticTournament& t, Vertex r);

// For every ordered pair, p_xy within a factor (1+eps) of a(x)/(a(x)+a(y)),
// with `tol` slack on the log scale. Throws kDimensionMismatch.
bool VerifyApproxBradleyTerry(const StochasticTournament& t,
                              const ScoreVector& a, double eps,
                              double tol = kDefaultTol);

// Smallest eps accepted by VerifyApproxBradleyTerry (with zero slack),
// located by bisection to within `resolution`.
double ApproxBradleyTerryEps(const StochasticTournament& t,
                             const ScoreVector& a, double resolution = 1e-6);

// pi_x = (1/a(x)) / sum_z 1/a(z).
StationaryDistribution ScoresToStationary(const ScoreVector& a);

// Every triangle 7eps-balanced. Throws kPreconditionFailed unless
// CheckReversible(t, pi, eps, tol) holds. A triangle ratio is a product of
// three detailed-balance ratios, so its slack is 3 * tol.
bool CheckSevenEps(const StochasticTournament& t,
                   const StationaryDistribution& pi, double eps,
                   double tol = kDefaultTol);

// Weighted spanning tree; each edge carries its orientation in the output
// tournament and its weight w(from -> to).
struct TreeWeights {
  int n = 0;
  std::vector<Edge> edges;
};

struct TreeExtension {
  StochasticTournament tournament;
  std::vector<double> log_pi;  // unnormalised, log_pi[lowest id] == 0
  std::vector<std::pair<Vertex, Vertex>> clamped_chords;
};

// Extends tree weights to a reversible tournament. The stationary masses
// are propagated from the lowest-id vertex along tree edges; each chord
// x -> y then gets w = c / (1 + c) with c = pi(y) / pi(x). Tree edges keep
// their input weights bit for bit. Throws kNotASpanningTree,
// kOutOfRangeProbability.
TreeExtension ExtendTree(const TreeWeights& tw, double floor = kDefaultFloor);

// Potential fit on log-odds: minimises
//   sum_{x<y} (log(p_xy/p_yx) - (u_x - u_y))^2
// and returns a = exp(u) normalised to a(0) = 1. On the complete graph the
// normal equations reduce to u_x = (1/n) sum_y log(p_xy/p_yx).
ScoreVector FitScoresLeastSquares(const StochasticTournament& t);

// The objective above at log-scores u.
double LeastSquaresObjective(const StochasticTournament& t,
                             std::span<const double> log_scores);

// sum_{x<y} |p_xy - a(x)/(a(x)+a(y))|: the L1 cost of moving t to the
// Bradley-Terry tournament with scores a.
double L1DistanceToScores(const StochasticTournament& t, const ScoreVector& a);

inline constexpr int kDeskScale = 8;

struct DistanceBounds {
  double upper = 0.0;
  double lower = 0.0;
  double repair_upper = 0.0;   // best single-root repair
  Vertex repair_root = 0;
  double descent_upper = 0.0;  // coordinate descent over scores
  int sweeps = 0;
};

// Bounds on the L1 distance from t to the nearest Bradley-Terry tournament.
// Upper: the cheaper of the best root repair and a budget-limited coordinate
// descent on log-scores started from the least-squares fit. Lower: the
// largest, over triangles, of a certified lower bound on the L1 cost of
// balancing that triangle alone. Triangles balanced within `tol` count as
// balanced. Throws kTooLarge above kDeskScale vertices.
DistanceBounds L1DistanceOracle(const StochasticTournament& t,
                                int budget = 200, double tol = kDefaultTol);

// Certified lower bound on the cheapest L1 change to the three edges of
// `tri` that balances it, evaluated on a grid with `resolution` cells per
// axis. Zero when the triangle is balanced within `tol`.
double TriangleRepairLowerBound(const StochasticTournament& t,
                                const Triangle& tri, double tol = kDefaultTol,
                                int resolution = 256);

}  // namespace btcheck

#endif  // BTCHECK_REPAIR_HPP_

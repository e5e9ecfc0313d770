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

// btcheck: command-line front end.
//
// Exit codes: 0 success / property holds, 1 property rejected (validate,
// test), 2 usage or input error.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "btcheck/balance.hpp"
#include "btcheck/error.hpp"
#include "btcheck/io.hpp"
#include "btcheck/repair.hpp"
#include "btcheck/report.hpp"
#include "btcheck/rng.hpp"
#include "btcheck/tester.hpp"
#include "btcheck/tournament.hpp"

namespace {

using btcheck::Error;
using btcheck::ErrorCode;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitError = 2;

struct Options {
  double tol = btcheck::kDefaultTol;
  int threads = 1;

  std::string file;
  std::string out;

  // test
  double eps = 0.0;
  double delta = 1.0 / 3.0;
  std::uint64_t seed = 0;
  std::optional<double> eps_balance;

  // disc
  bool per_root = false;

  // repair / fit
  std::optional<int> root;
  bool lsq = false;

  // gen
  std::vector<double> scores;
  int n = 0;
  double p = 0.0;

  // distance
  int budget = 200;
};

// BT_DEFAULT_TOL replaces the built-in tolerance; --tol wins over both.
double DefaultTol() {
  const char* env = std::getenv("BT_DEFAULT_TOL");
  if (env == nullptr) return btcheck::kDefaultTol;
  const std::string_view s(env);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !(v >= 0.0)) {
    throw Error(ErrorCode::kOutOfRange,
                "BT_DEFAULT_TOL must be a non-negative number");
  }
  return v;
}

void Print(const json& report) { std::cout << btcheck::Dump(report); }

json LabelsJson(const std::vector<std::string>& labels) {
  return labels.empty() ? json(nullptr) : json(labels);
}

int RunValidate(const Options& o) {
  json config = {{"file", o.file}};
  json report = btcheck::MakeReport("validate", config);
  try {
    const auto file = btcheck::ReadTournamentFile(o.file);
    report["result"] = {{"valid", true},
                        {"n", file.tournament.size()},
                        {"pairs", file.tournament.pair_count()},
                        {"labels", LabelsJson(file.labels)}};
    Print(report);
    return kExitOk;
  } catch (const Error& e) {
    report["result"] = {{"valid", false},
                        {"error", btcheck::ErrorCodeName(e.code())},
                        {"line", e.line() ? json(*e.line()) : json(nullptr)},
                        {"message", e.what()}};
    Print(report);
    return kExitRejected;
  }
}

int RunTest(const Options& o) {
  const auto file = btcheck::ReadTournamentFile(o.file);
  btcheck::TesterConfig cfg;
  cfg.eps = o.eps;
  cfg.delta = o.delta;
  cfg.tol = o.tol;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  if (o.eps_balance) {
    cfg.predicate = btcheck::BalancePredicate::kEpsBalanced;
    cfg.eps_balance = *o.eps_balance;
  }
  const btcheck::TestVerdict verdict = btcheck::TestBradleyTerry(file.tournament, cfg);
  json config = {{"file", o.file},
                 {"eps", cfg.eps},
                 {"delta", cfg.delta},
                 {"tol", cfg.tol},
                 {"seed", cfg.seed},
                 {"rng", btcheck::Rng::kAlgorithm},
                 {"predicate", o.eps_balance ? "eps-balanced" : "exact"},
                 {"eps_balance", o.eps_balance ? json(*o.eps_balance)
                                               : json(nullptr)},
                 {"threads", cfg.threads}};
  json report = btcheck::MakeReport("test", config);
  report["result"] = btcheck::VerdictJson(verdict, file.labels);
  Print(report);
  return verdict.outcome == btcheck::Outcome::kAccept ? kExitOk
                                                      : kExitRejected;
}

int RunDisc(const Options& o) {
  const auto file = btcheck::ReadTournamentFile(o.file);
  const auto& t = file.tournament;
  const auto totals = btcheck::TotalDiscrepancy(t, o.threads);
  json result = {{"triangles", btcheck::TriangleCount(t.size())},
                 {"total", totals.total},
                 {"unbalanced", btcheck::CountUnbalanced(t, o.tol)}};
  if (o.per_root) result["per_root"] = totals.per_root;
  json report = btcheck::MakeReport(
      "disc", {{"file", o.file}, {"tol", o.tol}, {"per_root", o.per_root}});
  report["result"] = std::move(result);
  Print(report);
  return kExitOk;
}

int RunRepair(const Options& o) {
  const auto file = btcheck::ReadTournamentFile(o.file);
  const auto& t = file.tournament;
  const btcheck::RepairResult repaired =
      o.root ? btcheck::RepairWithRoot(t, *o.root, o.tol)
             : btcheck::Repair(t, o.threads, o.tol);
  btcheck::WriteTournamentFile(o.out, repaired.tournament, file.labels);
  json report = btcheck::MakeReport(
      "repair", {{"file", o.file},
                 {"out", o.out},
                 {"tol", o.tol},
                 {"root", o.root ? json(*o.root) : json("best")}});
  report["result"] = btcheck::RepairJson(repaired.report, file.labels);
  report["result"]["reversible"] =
      btcheck::AllTrianglesBalanced(repaired.tournament, o.tol);
  Print(report);
  return kExitOk;
}

int RunFit(const Options& o) {
  const auto file = btcheck::ReadTournamentFile(o.file);
  const auto& t = file.tournament;
  json result;
  std::optional<btcheck::ScoreVector> scores;
  if (o.lsq) {
    scores = btcheck::FitScoresLeastSquares(t);
    std::vector<double> u;
    for (double a : scores->values()) u.push_back(std::log(a));
    result["method"] = "lsq";
    result["objective"] = btcheck::LeastSquaresObjective(t, u);
  } else {
    const btcheck::Vertex r =
        o.root ? *o.root
               : (t.size() >= 3 ? btcheck::BestRoot(t, o.threads, o.tol) : 0);
    scores = btcheck::ScoresFromRoot(t, r);
    result["method"] = "root";
    result["root"] = r;
  }
  result["scores"] = scores->values();
  result["labels"] = LabelsJson(file.labels);
  result["verification_eps"] = btcheck::ApproxBradleyTerryEps(t, *scores);
  json report = btcheck::MakeReport(
      "fit", {{"file", o.file},
              {"method", o.lsq ? "lsq" : "root"},
              {"root", o.root ? json(*o.root) : json(nullptr)},
              {"tol", o.tol}});
  report["result"] = std::move(result);
  Print(report);
  return kExitOk;
}

int WriteGenerated(const std::string& kind, const json& config,
                   const btcheck::StochasticTournament& t,
                   const std::string& out) {
  btcheck::WriteTournamentFile(out, t);
  json report = btcheck::MakeReport("gen " + kind, config);
  report["result"] = {{"n", t.size()}, {"out", out}};
  Print(report);
  return kExitOk;
}

int RunExtendTree(const Options& o) {
  const auto file = btcheck::ReadTreeFile(o.file);
  const btcheck::TreeExtension ext = btcheck::ExtendTree(file.tree);
  btcheck::WriteTournamentFile(o.out, ext.tournament, file.labels);
  json clamped = json::array();
  for (const auto& [x, y] : ext.clamped_chords) clamped.push_back({x, y});
  json report = btcheck::MakeReport(
      "extend-tree", {{"file", o.file}, {"out", o.out}, {"tol", o.tol}});
  report["result"] = {
      {"n", ext.tournament.size()},
      {"clamped_chords", std::move(clamped)},
      {"reversible", btcheck::AllTrianglesBalanced(ext.tournament, o.tol)}};
  Print(report);
  return kExitOk;
}

int RunDistance(const Options& o) {
  const auto file = btcheck::ReadTournamentFile(o.file);
  const auto bounds =
      btcheck::L1DistanceOracle(file.tournament, o.budget, o.tol);
  json report = btcheck::MakeReport(
      "distance", {{"file", o.file}, {"budget", o.budget}, {"tol", o.tol}});
  report["result"] = btcheck::DistanceJson(bounds);
  Print(report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  try {
    o.tol = DefaultTol();
  } catch (const Error& e) {
    std::cerr << "btcheck: " << e.what() << "\n";
    return kExitError;
  }

  CLI::App app{"Test, repair and fit Bradley-Terry tournaments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", o.tol,
                 "balance tolerance on |log ratio| (env BT_DEFAULT_TOL)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--threads", o.threads, "worker threads for library calls")
      ->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "check a tournament file");
  validate->add_option("FILE", o.file)->required();

  auto* test = app.add_subcommand("test", "run the randomized tester");
  test->add_option("FILE", o.file)->required();
  test->add_option("--eps", o.eps, "farness parameter in (0,1)")->required();
  test->add_option("--delta", o.delta, "failure probability in (0,1)");
  test->add_option("--seed", o.seed, "RNG seed");
  test->add_option("--eps-balance", o.eps_balance,
                   "accept eps-balanced triangles instead of exact balance");

  auto* disc = app.add_subcommand("disc", "triangle discrepancy sums");
  disc->add_option("FILE", o.file)->required();
  disc->add_flag("--per-root", o.per_root, "also report per-root sums");

  auto* repair = app.add_subcommand("repair", "repair into a reversible tournament");
  repair->add_option("FILE", o.file)->required();
  repair->add_option("--root", o.root, "root vertex (default: best root)");
  repair->add_option("-o,--out", o.out, "output file")->required();

  auto* fit = app.add_subcommand("fit", "fit Bradley-Terry scores");
  fit->add_option("FILE", o.file)->required();
  auto* fit_root = fit->add_option("--root", o.root, "scores from this root");
  auto* fit_lsq = fit->add_flag("--lsq", o.lsq, "least squares on log-odds");
  fit_root->excludes(fit_lsq);

  auto* gen = app.add_subcommand("gen", "generate a tournament file");
  gen->require_subcommand(1);
  auto* gen_bt = gen->add_subcommand("bt", "Bradley-Terry from scores");
  gen_bt->add_option("--scores", o.scores, "comma-separated positive scores")
      ->required()
      ->delimiter(',');
  gen_bt->add_option("-o,--out", o.out)->required();
  auto* gen_cyclic = gen->add_subcommand("cyclic", "cyclic tournament");
  gen_cyclic->add_option("--n", o.n)->required();
  gen_cyclic->add_option("--p", o.p)->required();
  gen_cyclic->add_option("-o,--out", o.out)->required();
  auto* gen_random = gen->add_subcommand("random", "uniform random weights");
  gen_random->add_option("--n", o.n)->required();
  gen_random->add_option("--seed", o.seed)->required();
  gen_random->add_option("-o,--out", o.out)->required();

  auto* extend = app.add_subcommand("extend-tree",
                                    "extend spanning-tree weights to a reversible tournament");
  extend->add_option("TREEFILE", o.file)->required();
  extend->add_option("-o,--out", o.out)->required();

  auto* distance = app.add_subcommand("distance", "L1 distance bounds (n <= 8)");
  distance->add_option("FILE", o.file)->required();
  distance->add_option("--budget", o.budget, "coordinate descent sweeps")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*validate) return RunValidate(o);
    if (*test) return RunTest(o);
    if (*disc) return RunDisc(o);
    if (*repair) return RunRepair(o);
    if (*fit) return RunFit(o);
    if (*gen_bt) {
      return WriteGenerated(
          "bt", {{"scores", o.scores}, {"out", o.out}},
          btcheck::GenerateBradleyTerry(btcheck::ScoreVector(o.scores)), o.out);
    }
    if (*gen_cyclic) {
      return WriteGenerated("cyclic", {{"n", o.n}, {"p", o.p}, {"out", o.out}},
                            btcheck::GenerateCyclic(o.n, o.p), o.out);
    }
    if (*gen_random) {
      return WriteGenerated("random",
                            {{"n", o.n},
                             {"seed", o.seed},
                             {"rng", btcheck::Rng::kAlgorithm},
                             {"out", o.out}},
                            btcheck::GenerateRandom(o.n, o.seed), o.out);
    }
    if (*extend) return RunExtendTree(o);
    if (*distance) return RunDistance(o);
  } catch (const Error& e) {
    std::cerr << "btcheck: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "btcheck: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

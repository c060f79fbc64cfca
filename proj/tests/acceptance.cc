// Copyright 2026 The pcnhijack Authors
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

// Acceptance checks. `pcnhijack_acceptance N` runs criterion N and prints
// one PASS/FAIL line for it; without arguments every criterion runs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "pcnhijack/analysis.h"
#include "pcnhijack/attack.h"
#include "pcnhijack/game.h"
#include "pcnhijack/synthetic.h"
#include "support/oracles.h"

namespace pcnhijack {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Tolerances and sizes.
constexpr int kSubmodularInstances = 500;
constexpr int kGreedyGraphs = 100;
constexpr double kGreedyRatio = 0.75;
constexpr int kOracleInstances = 100;
constexpr double kFuzzBound = 0.05;
constexpr int kFuzzTrials = 20;
constexpr double kGameEps = 1e-9;
constexpr double kGameValueRel = 1e-12;
constexpr int kGameGridMin = 1000;
constexpr double kScaleMinutes = 30;
constexpr int kScaleSeeds = 5;
constexpr int kScaleK = 10;

struct Result {
  bool pass = false;
  std::string detail;
};

std::string Fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::vector<NodeIndex> Prefixed(const ChannelGraph& g, char prefix) {
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (g.node_id(v)[0] == prefix) out.push_back(v);
  }
  return out;
}

Result FeeArithmetic() {
  const ChannelPolicy p{100, 1, 144, true};
  const Msat a = ChannelFee(p, 1'000'000);
  const Msat b = ChannelFee(p, 2'000'000);
  return {a == 101 && b == 102,
          "fee(1000000)=" + std::to_string(a) +
              " fee(2000000)=" + std::to_string(b)};
}

Result BridgeScenario() {
  const ChannelGraph base = testing::LoadFixture("bridge.json");
  const auto left = Prefixed(base, 'l');
  const auto right = Prefixed(base, 'r');
  PairSample pairs = PairSample::Between(left, right, 1'000'000);
  const PairSample back = PairSample::Between(right, left, 1'000'000);
  pairs.pairs.insert(pairs.pairs.end(), back.pairs.begin(), back.pairs.end());
  AttackConfig config;
  const std::vector<std::string> peers = {"l0", "r0"};
  const ChannelGraph g = ApplyPeers(base, peers, pairs.amount, config);
  const NodeIndex attacker = g.node(config.attacker_id);
  bool pass = true;
  std::string detail;
  for (const RoutingPolicy& policy : testing::DeterministicPolicies()) {
    // Implementation path and an independent per-pair recount.
    const HijackOutcome o = EvaluatePeers(base, policy, peers, pairs, 1, config);
    std::size_t recount = 0, bridge_before = 0;
    const EdgeWeigher w = testing::CoreWeigher(g, policy);
    const EdgeWeigher w0 = testing::CoreWeigher(base, policy);
    for (const auto& [s, t] : pairs.pairs) {
      const auto brute = testing::BruteForceRoutes(g, w, s, t, pairs.amount);
      if (!brute.empty() && brute[0].HasInteriorNode(attacker)) ++recount;
      const auto before = FindBestRoute(base, w0, s, t, pairs.amount);
      if (before && before->HasInteriorNode(base.node("m"))) ++bridge_before;
    }
    const bool ok = o.fraction == 1.0 && recount == pairs.size() &&
                    bridge_before == pairs.size();
    pass = pass && ok;
    detail += std::string(policy.name()) + "=" + Fmt(o.fraction) + " ";
  }
  return {pass, detail + "over " + std::to_string(pairs.size()) + " pairs"};
}

Result Submodularity() {
  int violations = 0;
  for (int i = 0; i < kSubmodularInstances; ++i) {
    testing::SmallGraphOptions opts;
    opts.nodes = 5 + i % 8;
    const ChannelGraph g = testing::RandomSmallGraph(1000 + i, opts);
    const RoutingPolicy policy = testing::DeterministicPolicies()[i % 4];
    const PairSample pairs = PairSample::All(g, 100'000);
    Rng rng(7000 + i);
    std::vector<ChannelIndex> a, b, both, either;
    for (ChannelIndex c = 0; c < g.channel_count(); ++c) {
      const bool in_a = UniformReal(rng) < 0.35;
      const bool in_b = UniformReal(rng) < 0.35;
      if (in_a) a.push_back(c);
      if (in_b) b.push_back(c);
      if (in_a && in_b) both.push_back(c);
      if (in_a || in_b) either.push_back(c);
    }
    const auto hits = [&](std::vector<ChannelIndex> s) -> long {
      // C of the empty set is 0; the library rejects empty target sets.
      if (s.empty()) return 0;
      return static_cast<long>(
          ComputeCentrality(g, policy, TargetSet::Channels(std::move(s)), pairs,
                            1)
              .hits);
    };
    if (hits(a) + hits(b) < hits(either) + hits(both)) ++violations;
  }
  return {violations == 0, std::to_string(kSubmodularInstances) +
                               " instances, " + std::to_string(violations) +
                               " violations"};
}

Result GreedyApproximation() {
  int violations = 0;
  double worst = 1;
  for (int i = 0; i < kGreedyGraphs; ++i) {
    testing::SmallGraphOptions opts;
    opts.nodes = 12;
    const ChannelGraph g = testing::RandomSmallGraph(2000 + i, opts);
    const RoutingPolicy policy = testing::DeterministicPolicies()[i % 4];
    const PairSample pairs = PairSample::All(g, 100'000);
    const auto best = testing::BruteForceBestPair(g, policy, pairs);
    const AttackPlan plan = GreedyAttack(g, policy, 2, pairs, 1);
    const std::size_t greedy =
        testing::HijackCount(g, policy, plan.Peers(), pairs);
    if (static_cast<double>(greedy) <
        kGreedyRatio * static_cast<double>(best.hijacked)) {
      ++violations;
    }
    if (best.hijacked > 0) {
      worst = std::min(worst, static_cast<double>(greedy) /
                                  static_cast<double>(best.hijacked));
    }
  }
  return {violations == 0, std::to_string(kGreedyGraphs) + " graphs, " +
                               std::to_string(violations) +
                               " violations, worst ratio " + Fmt(worst)};
}

Result OracleEquivalence() {
  int mismatches = 0;
  int selections = 0;
  for (int i = 0; i < kOracleInstances; ++i) {
    testing::SmallGraphOptions opts;
    opts.nodes = 15;
    const ChannelGraph g = testing::RandomSmallGraph(3000 + i, opts);
    const PairSample pairs = PairSample::All(g, 100'000);
    DistanceOracle oracle(g, testing::DeterministicPolicies()[i % 4], pairs);
    oracle.Commit(static_cast<NodeIndex>(i % g.node_count()));
    oracle.Commit(static_cast<NodeIndex>((i + 7) % g.node_count()));
    for (int step = 0; step < 4; ++step) {
      const auto attacked = oracle.AttackedPairs();
      const auto already = static_cast<std::size_t>(
          std::count(attacked.begin(), attacked.end(), 1));
      const NextPeer naive = FindNextNaive(oracle);
      const NextPeer fast = FindNextOptimized(oracle, attacked);
      ++selections;
      if (naive.peer != fast.peer || naive.count != already + fast.count) {
        ++mismatches;
      }
      oracle.Commit(fast.peer);
    }
  }
  return {mismatches == 0, std::to_string(selections) + " selections on " +
                               std::to_string(kOracleInstances) +
                               " instances, " + std::to_string(mismatches) +
                               " mismatches"};
}

Result EclairMetrics() {
  const ChannelGraph toy = testing::LoadFixture("top3.json");
  PairSample pairs;
  pairs.pairs = {{toy.node("s1"), toy.node("t1")},
                 {toy.node("s2"), toy.node("t2")}};
  const std::vector<NodeIndex> attacker = {toy.node("A")};
  const EclairHijackMetrics m = ComputeEclairHijackMetrics(toy, attacker, pairs);
  bool pass = m.best_route_fraction == 0.5 && m.all_top_fraction == 0.0 &&
              std::abs(m.expected_fraction - 2.0 / 3.0) < 1e-15;
  std::string detail = "toy best=" + Fmt(m.best_route_fraction) +
                       " all3=" + Fmt(m.all_top_fraction) +
                       " expected=" + Fmt(m.expected_fraction);
  int violations = 0;
  for (int i = 0; i < 60; ++i) {
    const ChannelGraph g = testing::RandomSmallGraph(4000 + i);
    const std::vector<NodeIndex> set = {
        static_cast<NodeIndex>(i % g.node_count()),
        static_cast<NodeIndex>((i * 3 + 1) % g.node_count())};
    const auto r =
        ComputeEclairHijackMetrics(g, set, PairSample::All(g, 100'000));
    if (r.all_top_fraction > r.best_route_fraction ||
        r.all_top_fraction > r.expected_fraction) {
      ++violations;
    }
  }
  pass = pass && violations == 0;
  return {pass, detail + "; 60 random instances, " +
                    std::to_string(violations) + " ordering violations"};
}

Result FuzzRobustnessCheck() {
  SyntheticSpec spec;
  spec.node_count = 50;
  spec.attachment = 2;
  spec.seed = 11;
  const ChannelGraph g = GenerateSynthetic(spec);
  const PairSample pairs = PairSample::All(g, 1'000'000);
  const AttackPlan plan = GreedyAttack(
      g, RoutingPolicy::CLightning().DeterministicCore(), 5, pairs, 1);
  const std::vector<double> rates = {0.0, 0.05};
  const auto points = FuzzRobustness(g, plan, rates, kFuzzTrials, pairs, 1);
  const double gap = std::abs(points[1].mean_fraction - points[0].mean_fraction);
  return {gap <= kFuzzBound,
          "fuzz 0: " + Fmt(points[0].mean_fraction) +
              ", fuzz 0.05: " + Fmt(points[1].mean_fraction) + " (sd " +
              Fmt(points[1].stddev) + "), gap " + Fmt(gap)};
}

Result DelaySweepShape() {
  SyntheticSpec spec;
  spec.node_count = 100;
  spec.attachment = 2;
  spec.seed = 12;
  spec.sampler.default_delay_fraction = 1.0;
  const ChannelGraph g = GenerateSynthetic(spec);
  const PairSample pairs = PairSample::Sample(g, 1'000'000, 4000, 12);
  const RoutingPolicy policy = RoutingPolicy::CLightning().DeterministicCore();
  const AttackPlan plan = GreedyAttack(g, policy, 5, pairs, 1);
  const std::vector<Blocks> delays = {9, 40, 80, 144, 200, 400};
  const auto sweep = DelaySweep(g, policy, plan, delays, pairs, 1);
  bool monotone = true;
  std::size_t largest = 0;
  double largest_drop = -1;
  std::string detail;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    detail += std::to_string(sweep[i].delay) + ":" +
              Fmt(sweep[i].outcome.fraction) + " ";
    if (i == 0) continue;
    const double drop =
        sweep[i - 1].outcome.fraction - sweep[i].outcome.fraction;
    if (drop < 0) monotone = false;
    if (drop > largest_drop) {
      largest_drop = drop;
      largest = i;
    }
  }
  // The step from 144 to 200 is the first where the attack is slower than
  // every channel it competes with.
  const bool at_144 = sweep[largest - 1].delay == 144;
  return {monotone && at_144,
          detail + "; largest drop " + std::to_string(sweep[largest - 1].delay) +
              "->" + std::to_string(sweep[largest].delay)};
}

std::vector<GameParams> GameGrid() {
  std::vector<GameParams> grid;
  for (int V = 3; V <= 60; V += 3) {
    for (int k = 1; k <= V - 2; k += std::max(1, (V - 2) / 5)) {
      for (double H : {0.1, 1.0, 7.5, 1000.0}) {
        for (double I : {0.0, 0.001, 0.05, 0.3, 2.0}) grid.push_back({H, I, V, k});
      }
    }
  }
  return grid;
}

Result CliqueGame() {
  const auto grid = GameGrid();
  int not_equilibrium = 0;
  int value_mismatch = 0;
  double max_defender_regret = 0;
  for (const GameParams& g : grid) {
    const GameMatrices m = CliqueGameMatrices(g);
    const GameSolution s = CliqueGameSolve(g);
    const EquilibriumCheck check = CheckEquilibrium(m, s.profile, kGameEps);
    if (!check.ok) ++not_equilibrium;
    max_defender_regret = std::max(max_defender_regret, check.defender_regret);
    const double formula = g.k * (g.H / (g.V - 1) - g.I);
    // The attacker's realized payoff at the profile, from the matrices.
    const double realized = AttackerPayoff(m, s.profile);
    const double scale = std::max({std::abs(formula), g.H, g.I * g.k});
    if (std::abs(s.attacker_value - formula) > kGameValueRel * scale ||
        std::abs(realized - formula) > kGameValueRel * scale * 10) {
      ++value_mismatch;
    }
  }
  const bool pass = static_cast<int>(grid.size()) >= kGameGridMin &&
                    not_equilibrium == 0 && value_mismatch == 0;
  return {pass, std::to_string(grid.size()) + " tuples; " +
                    std::to_string(not_equilibrium) +
                    " fail the equilibrium check (max defender regret " +
                    Fmt(max_defender_regret) + "); " +
                    std::to_string(value_mismatch) + " value mismatches"};
}

std::string ReadFile(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> ReadCsv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(ReadFile(p));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

int RunCli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::Run(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pcnhijack_acc_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Result MainnetScale() {
  const fs::path dir = ScratchDir("scale");
  bool pass = true;
  std::string detail;
  std::vector<int> ties_at;
  for (int seed = 1; seed <= kScaleSeeds; ++seed) {
    const std::string synthetic =
        "nodes=4000,m=4,seed=" + std::to_string(seed);
    const std::string k = std::to_string(kScaleK);
    const auto started = Clock::now();
    const fs::path cen = dir / ("centrality" + std::to_string(seed) + ".csv");
    const fs::path att = dir / ("attack" + std::to_string(seed) + ".csv");
    if (RunCli({"centrality", "--synthetic", synthetic, "--pairs",
                "sample:10000", "--k", k, "--seed", std::to_string(seed),
                "--out", cen.string()}) != 0) {
      return {false, "centrality failed for seed " + std::to_string(seed)};
    }
    const double cen_s = Seconds(started);
    const auto attack_started = Clock::now();
    if (RunCli({"attack", "--synthetic", synthetic, "--pairs", "sample:10000",
                "--k", k, "--trials", "1", "--seed", std::to_string(seed),
                "--out", att.string()}) != 0) {
      return {false, "attack failed for seed " + std::to_string(seed)};
    }
    const double att_s = Seconds(attack_started);

    const auto cen_rows = ReadCsv(cen);
    const auto att_rows = ReadCsv(att);
    bool nondecreasing = true;
    double last = -1;
    for (std::size_t i = 1; i < cen_rows.size(); ++i) {
      const double f = std::stod(cen_rows[i][2]);
      if (f < last) nondecreasing = false;
      last = f;
    }
    last = -1;
    std::string greedy_curve;
    for (std::size_t i = 1; i < att_rows.size(); ++i) {
      const int step = std::stoi(att_rows[i][0]);
      const double greedy = std::stod(att_rows[i][6]);
      const double baseline = std::stod(att_rows[i][7]);
      if (greedy < last) nondecreasing = false;
      last = greedy;
      if (!(greedy > baseline)) {
        pass = false;
        ties_at.push_back(step);
      }
      greedy_curve += Fmt(greedy) + "/" + Fmt(baseline) + " ";
    }
    const bool fast = cen_s + att_s < kScaleMinutes * 60;
    pass = pass && nondecreasing && fast &&
           static_cast<int>(att_rows.size()) == kScaleK + 1;
    detail += "seed " + std::to_string(seed) + ": centrality " + Fmt(cen_s) +
              "s attack " + Fmt(att_s) + "s, greedy/baseline " + greedy_curve +
              (nondecreasing ? "" : "(curve decreases) ") + "| ";
  }
  fs::remove_all(dir);
  if (!ties_at.empty()) {
    std::sort(ties_at.begin(), ties_at.end());
    ties_at.erase(std::unique(ties_at.begin(), ties_at.end()), ties_at.end());
    detail += "greedy not strictly above baseline at k =";
    for (int k : ties_at) detail += " " + std::to_string(k);
  }
  return {pass, detail};
}

Result Determinism() {
  const fs::path dir = ScratchDir("determinism");
  const std::string graph = "nodes=120,m=2,seed=5";
  const std::vector<std::vector<std::string>> commands = {
      {"stats", "--synthetic", graph},
      {"routes", "--synthetic", graph, "--policy", "eclair", "--pairs",
       "sample:800"},
      {"centrality", "--synthetic", graph, "--policy", "suggested", "--pairs",
       "sample:800", "--k", "5"},
      {"attack", "--synthetic", graph, "--policy", "clightning", "--pairs",
       "sample:800", "--k", "4", "--trials", "2"},
      {"fuzz", "--synthetic", graph, "--pairs", "sample:800", "--k", "3",
       "--trials", "3"},
      {"delay", "--synthetic", graph, "--policy", "lnd", "--pairs",
       "sample:800", "--k", "3"},
      {"suggested", "--synthetic", graph, "--pairs", "sample:500", "--k", "3"},
      {"game", "--H", "3", "--I", "0.1", "--V", "5", "--k", "2"},
  };
  int differing = 0;
  std::string names;
  for (const auto& base : commands) {
    std::vector<std::string> texts;
    for (int run = 0; run < 2; ++run) {
      const fs::path out = dir / (base[0] + ".csv");
      std::vector<std::string> args = base;
      if (base[0] != "stats" && base[0] != "game") {
        args.insert(args.end(), {"--seed", "3"});
      }
      args.insert(args.end(), {"--out", out.string()});
      if (RunCli(args) != 0) return {false, base[0] + " failed"};
      std::string all;
      for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind(base[0] + ".csv", 0) == 0) {
          all += name + "\n" + ReadFile(entry.path());
        }
      }
      texts.push_back(all);
      for (const auto& entry : fs::directory_iterator(dir)) {
        fs::remove(entry.path());
      }
    }
    if (texts[0] != texts[1] || texts[0].empty()) {
      ++differing;
      names += " " + base[0];
    }
  }
  fs::remove_all(dir);
  return {differing == 0,
          std::to_string(commands.size()) + " subcommands, " +
              std::to_string(differing) + " differ" + names};
}

struct Criterion {
  int number;
  const char* name;
  std::function<Result()> run;
};

const std::vector<Criterion>& Criteria() {
  static const std::vector<Criterion> criteria = {
      {1, "fee arithmetic", FeeArithmetic},
      {2, "two-cluster bridge", BridgeScenario},
      {3, "submodularity", Submodularity},
      {4, "greedy approximation", GreedyApproximation},
      {5, "naive/optimized equivalence", OracleEquivalence},
      {6, "eclair metrics", EclairMetrics},
      {7, "fuzz robustness", FuzzRobustnessCheck},
      {8, "delay sweep", DelaySweepShape},
      {9, "clique game", CliqueGame},
      {10, "4000-node scale", MainnetScale},
      {11, "determinism", Determinism},
  };
  return criteria;
}

}  // namespace
}  // namespace pcnhijack

int main(int argc, char** argv) {
  using pcnhijack::Criteria;
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  bool all_pass = true;
  for (const auto& c : Criteria()) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.number) ==
            selected.end()) {
      continue;
    }
    const auto started = pcnhijack::Clock::now();
    pcnhijack::Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && r.pass;
    std::printf("criterion %d (%s): %s [%.1fs] %s\n", c.number, c.name,
                r.pass ? "PASS" : "FAIL", pcnhijack::Seconds(started),
                r.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}

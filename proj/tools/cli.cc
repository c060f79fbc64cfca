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

#include "cli.h"

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcnhijack/analysis.h"
#include "pcnhijack/attack.h"
#include "pcnhijack/game.h"
#include "pcnhijack/graph.h"
#include "pcnhijack/routing.h"
#include "pcnhijack/serialization.h"
#include "pcnhijack/snapshot.h"
#include "pcnhijack/stats.h"
#include "pcnhijack/synthetic.h"
#include "pcnhijack/weights.h"

namespace pcnhijack::cli {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph_path;
  std::string synthetic;
  std::string policy = "lnd";
  Msat amount = 1'000'000;
  std::string pairs = "all";
  std::uint64_t seed = 1;
  std::string out;
  int k = 10;
  int trials = 5;
  std::string delays = "9,20,40,80,144,200,400,1000,2016";
  std::string fuzz_rates = "0,0.01,0.05,0.1";
  std::string plan_path;
  std::string attacker_id = "attacker";
  int lookahead = 64;

  // Policy knobs.
  std::optional<double> fuzz;
  std::optional<double> sigma;
  double interest_ratio = 0;
  std::string eclair_capacity = "descending";

  // Game.
  double H = 1;
  double I = 0;
  int V = 3;
  int game_k = 1;
};

// Shortest representation that round-trips; identical on every run.
std::string Num(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

std::string Num(std::int64_t x) { return std::to_string(x); }
std::string Num(std::uint64_t x) { return std::to_string(x); }
std::string Num(int x) { return std::to_string(x); }

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) { Row(header); }

  void Row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text_ += ',';
      text_ += CsvField(fields[i]);
    }
    text_ += "\r\n";
  }

  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

std::uint64_t Fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string Hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(x));
  return buf;
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path);
}

std::string ReadFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

template <typename T>
std::vector<T> ParseList(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    T v{};
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size()) {
      throw UsageError(std::string("bad ") + what + " value '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

ChannelGraph LoadGraph(const Options& o) {
  if (o.graph_path.empty() == o.synthetic.empty()) {
    throw UsageError("exactly one of --graph or --synthetic is required");
  }
  if (!o.graph_path.empty()) return LoadSnapshot(o.graph_path);
  return GenerateSynthetic(ParseSyntheticSpec(o.synthetic));
}

Json GraphConfig(const Options& o) {
  if (!o.graph_path.empty()) return Json{{"snapshot", o.graph_path}};
  return Json{
      {"synthetic", FormatSyntheticSpec(ParseSyntheticSpec(o.synthetic))}};
}

RoutingPolicy MakePolicy(const std::string& name, const Options& o) {
  RoutingPolicy policy = RoutingPolicy::FromName(name);
  if (auto* p = std::get_if<CLightningParams>(&policy.params)) {
    if (o.fuzz) p->fuzz = *o.fuzz;
  } else if (auto* p = std::get_if<SuggestedParams>(&policy.params)) {
    if (o.sigma) p->sigma = *o.sigma;
    p->interest_ratio = o.interest_ratio;
  } else if (auto* p = std::get_if<EclairParams>(&policy.params)) {
    if (o.eclair_capacity != "descending" &&
        o.eclair_capacity != "ascending") {
      throw UsageError("--eclair-capacity must be ascending or descending");
    }
    p->capacity.descending = o.eclair_capacity == "descending";
  }
  policy.Validate();
  return policy;
}

Json NormJson(const Normalization& n) {
  return {{"lower", n.lower}, {"upper", n.upper}, {"descending", n.descending}};
}

Json PolicyJson(const RoutingPolicy& policy) {
  Json j = {{"name", std::string(policy.name())}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LndParams>) {
          j["risk_factor"] = p.risk_factor;
          j["probability_penalty"] = p.probability_penalty;
          j["apriori_probability"] = p.apriori_probability;
        } else if constexpr (std::is_same_v<T, CLightningParams>) {
          j["fuzz"] = p.fuzz;
          j["risk_factor"] = p.risk_factor;
        } else if constexpr (std::is_same_v<T, EclairParams>) {
          j["delay_ratio"] = p.delay_ratio;
          j["capacity_ratio"] = p.capacity_ratio;
          j["age_ratio"] = p.age_ratio;
          j["delay"] = NormJson(p.delay);
          j["capacity"] = NormJson(p.capacity);
          j["age"] = NormJson(p.age);
          j["top_k"] = p.top_k;
        } else {
          j["sigma"] = p.sigma;
          j["delay_ratio"] = p.delay_ratio;
          j["age_ratio"] = p.age_ratio;
          j["capacity_ratio"] = p.capacity_ratio;
          j["fee_ratio"] = p.fee_ratio;
          j["interest_ratio"] = p.interest_ratio;
        }
      },
      policy.params);
  return j;
}

PairSample MakePairs(const ChannelGraph& g, const Options& o) {
  if (o.amount <= 0) throw UsageError("--amount must be positive");
  if (o.pairs == "all") return PairSample::All(g, o.amount);
  if (o.pairs.rfind("sample:", 0) == 0) {
    const auto n = ParseList<std::uint64_t>(o.pairs.substr(7), "sample size");
    return PairSample::Sample(g, o.amount, n.front(), o.seed);
  }
  if (o.pairs.rfind("file:", 0) == 0) {
    // One "source,target" line per pair; blank lines and '#' comments skipped.
    PairSample sample;
    sample.amount = o.amount;
    std::stringstream ss(ReadFile(o.pairs.substr(5)));
    std::string line;
    while (std::getline(ss, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) {
        throw UsageError("pairs file line without a comma: " + line);
      }
      const NodeIndex s = g.node(line.substr(0, comma));
      const NodeIndex t = g.node(line.substr(comma + 1));
      if (s == t) throw UsageError("pairs file has a self pair: " + line);
      sample.pairs.push_back({s, t});
    }
    return sample;
  }
  throw UsageError("--pairs must be all, sample:<n> or file:<path>");
}

AttackConfig MakeAttackConfig(const Options& o) {
  AttackConfig c;
  c.attacker_id = o.attacker_id;
  c.lookahead_candidates = o.lookahead;
  return c;
}

// Collects one command's CSV and sidecar and emits them.
class Output {
 public:
  Output(const std::string& command, const Options& o, std::ostream& out)
      : options_(o), out_(out) {
    config_["command"] = command;
  }

  Json& config() { return config_; }
  Json& summary() { return summary_; }
  void AddFile(const std::string& suffix, const std::string& text) {
    extra_.push_back({suffix, text});
  }

  void Finish(const Csv& csv) {
    if (options_.out.empty()) {
      out_ << csv.text();
      return;
    }
    Json side;
    side["config"] = config_;
    side["config_hash"] = Hex(Fnv1a(config_.dump()));
    side["seed"] = options_.seed;
    if (config_.contains("policy")) side["policy"] = config_["policy"];
    side["summary"] = summary_;
    Json files = Json::array();
    for (const auto& [suffix, text] : extra_) {
      WriteFile(options_.out + suffix, text);
      files.push_back(options_.out + suffix);
    }
    side["extra_files"] = files;
    WriteFile(options_.out, csv.text());
    WriteFile(options_.out + ".json", side.dump(2) + "\n");
  }

 private:
  const Options& options_;
  std::ostream& out_;
  Json config_;
  Json summary_ = Json::object();
  std::vector<std::pair<std::string, std::string>> extra_;
};

void RecordCommon(Output& output, const Options& o, const PairSample& pairs,
                  const RoutingPolicy* policy) {
  Json& c = output.config();
  c["graph"] = GraphConfig(o);
  if (policy) c["policy"] = PolicyJson(*policy);
  c["amount_msat"] = pairs.amount;
  c["pairs"] = o.pairs;
  c["pair_count"] = pairs.size();
  c["seed"] = o.seed;
}

AttackPlan LoadOrTrainPlan(const ChannelGraph& g, const RoutingPolicy& policy,
                           const PairSample& pairs, const Options& o,
                           const AttackConfig& config, Output& output) {
  if (!o.plan_path.empty()) {
    output.config()["plan"] = o.plan_path;
    return PlanFromJson(ReadFile(o.plan_path));
  }
  output.config()["plan"] = Json{{"trained_with", std::string(policy.name())},
                                 {"k", o.k}};
  return GreedyAttack(g, policy, o.k, pairs, o.seed, config);
}

void RunStats(const Options& o, std::ostream& out) {
  const ChannelGraph g = LoadGraph(o);
  const NetworkStats s = ComputeStats(g);
  Output output("stats", o, out);
  output.config()["graph"] = GraphConfig(o);
  output.summary() = {{"node_count", s.node_count},
                      {"channel_count", s.channel_count},
                      {"mean_channel_capacity_msat", s.mean_channel_capacity},
                      {"mean_node_capacity_msat", s.mean_node_capacity}};
  Csv csv({"histogram", "value", "count"});
  const std::pair<const char*, const Histogram*> hists[] = {
      {"base_fee_msat", &s.base_fees}, {"prop_fee_ppm", &s.prop_fees},
      {"delay_blocks", &s.delays},     {"capacity_sat", &s.capacities},
      {"degree", &s.degrees}};
  for (const auto& [name, h] : hists) {
    for (const auto& [value, count] : *h) {
      csv.Row({name, Num(value), Num(count)});
    }
  }
  output.Finish(csv);
}

void RunRoutes(const Options& o, std::ostream& out) {
  const ChannelGraph g = LoadGraph(o);
  const RoutingPolicy policy = MakePolicy(o.policy, o);
  const PairSample pairs = MakePairs(g, o);
  Output output("routes", o, out);
  RecordCommon(output, o, pairs, &policy);
  const auto routes = RoutePairs(g, policy, pairs, o.seed);
  const RouteDistribution lengths = PathLengthDistribution(routes);
  const RouteDistribution fees = FeeDistribution(routes);
  output.summary() = {{"routable", routes.size() - lengths.unroutable},
                      {"unroutable", lengths.unroutable}};
  Csv csv({"distribution", "value", "count"});
  for (const auto& [v, c] : lengths.histogram) {
    csv.Row({"hop_count", Num(v), Num(c)});
  }
  for (const auto& [v, c] : fees.histogram) {
    csv.Row({"total_fee_msat", Num(v), Num(c)});
  }
  output.Finish(csv);
}

void RunCentrality(const Options& o, std::ostream& out) {
  if (o.k < 1) throw UsageError("--k must be >= 1");
  const ChannelGraph g = LoadGraph(o);
  const RoutingPolicy policy = MakePolicy(o.policy, o);
  const PairSample pairs = MakePairs(g, o);
  Output output("centrality", o, out);
  RecordCommon(output, o, pairs, &policy);
  output.config()["k"] = o.k;
  const auto routes = RoutePairs(g, policy, pairs, o.seed);
  const auto curve = TopCentralNodesFromRoutes(g.node_count(), o.k, routes);
  const auto* eclair = std::get_if<EclairParams>(&policy.params);
  std::vector<std::string> header = {"k", "node", "fraction"};
  if (eclair) {
    header.insert(header.end(),
                  {"best_route_fraction", "all_top_fraction",
                   "expected_fraction"});
  }
  Csv csv(header);
  std::size_t routable = 0;
  for (const auto& r : routes) routable += r ? 1 : 0;
  output.summary() = {{"routable", routable},
                      {"unroutable", routes.size() - routable}};
  for (const CurvePoint& p : curve) {
    std::vector<std::string> row = {Num(p.k), g.node_id(p.nodes.back()),
                                    Num(p.fraction)};
    if (eclair) {
      const EclairHijackMetrics m =
          ComputeEclairHijackMetrics(g, p.nodes, pairs, *eclair);
      row.insert(row.end(), {Num(m.best_route_fraction),
                             Num(m.all_top_fraction),
                             Num(m.expected_fraction)});
    }
    csv.Row(row);
  }
  output.Finish(csv);
}

void RunAttack(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.k < 0) throw UsageError("--k must be >= 0");
  if (o.trials < 0) throw UsageError("--trials must be >= 0");
  const ChannelGraph g = LoadGraph(o);
  const RoutingPolicy policy = MakePolicy(o.policy, o);
  const PairSample pairs = MakePairs(g, o);
  const AttackConfig config = MakeAttackConfig(o);
  Output output("attack", o, out);
  RecordCommon(output, o, pairs, &policy);
  output.config()["k"] = o.k;
  output.config()["baseline_trials"] = o.trials;
  output.config()["attacker_id"] = o.attacker_id;
  output.config()["lookahead_candidates"] = o.lookahead;

  const auto start = std::chrono::steady_clock::now();
  const AttackPlan plan = GreedyAttack(g, policy, o.k, pairs, o.seed, config);
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  err << "greedy plan of " << plan.steps.size() << " channels in " << elapsed
      << " s\n";

  Csv csv({"k", "peer", "oracle_gain", "hijacked", "routable",
           "newly_routable", "fraction", "baseline_fraction"});
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const AttackStep& s = plan.steps[i];
    std::string baseline;
    if (o.trials > 0) {
      baseline = Num(RandomBaseline(g, policy, static_cast<int>(i + 1),
                                    o.trials, pairs, o.seed, config)
                         .mean_fraction);
    }
    csv.Row({Num(static_cast<std::uint64_t>(i + 1)), s.peer,
             Num(static_cast<std::uint64_t>(s.oracle_gain)),
             Num(static_cast<std::uint64_t>(s.outcome.hijacked)),
             Num(static_cast<std::uint64_t>(s.outcome.routable)),
             Num(static_cast<std::uint64_t>(s.outcome.newly_routable)),
             Num(s.outcome.fraction), baseline});
  }
  output.summary() = {
      {"final_fraction",
       plan.steps.empty() ? 0.0 : plan.steps.back().outcome.fraction}};
  output.AddFile(".plan.json", PlanToJson(plan));
  output.Finish(csv);
}

void RunFuzz(const Options& o, std::ostream& out) {
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  const ChannelGraph g = LoadGraph(o);
  CLightningParams params;
  params.fuzz = 0;
  const RoutingPolicy train = RoutingPolicy::CLightning(params);
  const PairSample pairs = MakePairs(g, o);
  const AttackConfig config = MakeAttackConfig(o);
  const auto rates = ParseList<double>(o.fuzz_rates, "fuzz rate");
  Output output("fuzz", o, out);
  RecordCommon(output, o, pairs, &train);
  output.config()["fuzz_rates"] = rates;
  output.config()["trials"] = o.trials;
  const AttackPlan plan = LoadOrTrainPlan(g, train, pairs, o, config, output);
  const auto points =
      FuzzRobustness(g, plan, rates, o.trials, pairs, o.seed, config, params);
  Csv csv({"fuzz", "mean_fraction", "stddev", "trials"});
  for (const FuzzPoint& p : points) {
    csv.Row({Num(p.fuzz), Num(p.mean_fraction), Num(p.stddev), Num(o.trials)});
  }
  output.Finish(csv);
}

void RunDelay(const Options& o, std::ostream& out) {
  const ChannelGraph g = LoadGraph(o);
  const RoutingPolicy policy = MakePolicy(o.policy, o);
  const PairSample pairs = MakePairs(g, o);
  const AttackConfig config = MakeAttackConfig(o);
  const auto delays = ParseList<std::int64_t>(o.delays, "delay");
  Output output("delay", o, out);
  RecordCommon(output, o, pairs, &policy);
  output.config()["delays"] = delays;
  const AttackPlan plan = LoadOrTrainPlan(g, policy, pairs, o, config, output);
  const auto points = DelaySweep(g, policy, plan, delays, pairs, o.seed, config);
  Csv csv({"delay", "hijacked", "routable", "newly_routable", "fraction"});
  for (const DelayPoint& p : points) {
    csv.Row({Num(p.delay), Num(static_cast<std::uint64_t>(p.outcome.hijacked)),
             Num(static_cast<std::uint64_t>(p.outcome.routable)),
             Num(static_cast<std::uint64_t>(p.outcome.newly_routable)),
             Num(p.outcome.fraction)});
  }
  output.Finish(csv);
}

void RunSuggested(const Options& o, std::ostream& out) {
  if (o.k < 1) throw UsageError("--k must be >= 1");
  const ChannelGraph g = LoadGraph(o);
  const RoutingPolicy policy = MakePolicy("suggested", o);
  const PairSample pairs = MakePairs(g, o);
  const AttackConfig config = MakeAttackConfig(o);
  const auto delays = ParseList<std::int64_t>(o.delays, "delay");
  Output output("suggested", o, out);
  RecordCommon(output, o, pairs, &policy);
  output.config()["k"] = o.k;
  output.config()["delays"] = delays;

  Csv csv({"experiment", "x", "fraction"});
  const auto routes = RoutePairs(g, policy, pairs, o.seed);
  for (const CurvePoint& p :
       TopCentralNodesFromRoutes(g.node_count(), o.k, routes)) {
    csv.Row({"centrality", Num(p.k), Num(p.fraction)});
  }
  const AttackPlan plan = GreedyAttack(g, policy, o.k, pairs, o.seed, config);
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    csv.Row({"attack", Num(static_cast<std::uint64_t>(i + 1)),
             Num(plan.steps[i].outcome.fraction)});
  }
  for (const DelayPoint& p :
       DelaySweep(g, policy, plan, delays, pairs, o.seed, config)) {
    csv.Row({"delay", Num(p.delay), Num(p.outcome.fraction)});
  }
  output.Finish(csv);
}

Json MatrixJson(const Payoff& m) {
  return Json::array({Json::array({m[kDirect][kDirect], m[kDirect][kIndirect]}),
                      Json::array({m[kIndirect][kDirect],
                                   m[kIndirect][kIndirect]})});
}

void RunGame(const Options& o, std::ostream& out) {
  GameParams params{o.H, o.I, o.V, o.game_k};
  const GameMatrices m = CliqueGameMatrices(params);
  const GameSolution s = CliqueGameSolve(params);
  const EquilibriumCheck check = CheckEquilibrium(m, s.profile, 1e-9);
  Json result;
  result["params"] = {{"H", o.H}, {"I", o.I}, {"V", o.V}, {"k", o.game_k}};
  result["p"] = s.profile.p;
  result["q"] = s.profile.q;
  result["attacker_value"] = s.attacker_value;
  result["equilibrium"] = {{"ok", check.ok},
                           {"defender_regret", check.defender_regret},
                           {"attacker_regret", check.attacker_regret}};
  result["strategies"] = {"direct", "indirect"};
  result["defender_matrix"] = MatrixJson(m.defender);
  result["attacker_matrix"] = MatrixJson(m.attacker);
  Json nash = Json::array();
  for (const StrategyProfile& e : SolveBimatrix(m)) {
    nash.push_back({{"p", e.p}, {"q", e.q}});
  }
  result["bimatrix_equilibria"] = nash;
  out << result.dump(2) << "\n";
  if (o.out.empty()) return;

  Output output("game", o, out);
  output.config()["params"] = result["params"];
  output.summary() = result;
  Csv csv({"p", "q", "attacker_value", "equilibrium_ok", "defender_regret",
           "attacker_regret"});
  csv.Row({Num(s.profile.p), Num(s.profile.q), Num(s.attacker_value),
           check.ok ? "true" : "false", Num(check.defender_regret),
           Num(check.attacker_regret)});
  output.Finish(csv);
}

void AddGraphOptions(CLI::App* sub, Options& o) {
  auto* graph = sub->add_option("--graph", o.graph_path,
                                "lnd describegraph JSON snapshot");
  auto* synth = sub->add_option(
      "--synthetic", o.synthetic,
      "synthetic spec, e.g. nodes=400,m=2,seed=7 (see README)");
  graph->excludes(synth);
  sub->add_option("--out", o.out,
                  "CSV output path (sidecar at <out>.json); stdout if unset");
}

void AddRoutingOptions(CLI::App* sub, Options& o, bool with_policy) {
  if (with_policy) {
    sub->add_option("--policy", o.policy, "lnd|clightning|eclair|suggested")
        ->capture_default_str();
  }
  sub->add_option("--amount", o.amount, "payment amount in msat")
      ->capture_default_str();
  sub->add_option("--pairs", o.pairs, "all | sample:<n> | file:<path>")
      ->capture_default_str();
  sub->add_option("--seed", o.seed, "seed of every random choice")
      ->capture_default_str();
  sub->add_option("--fuzz", o.fuzz, "C-lightning fuzz rate");
  sub->add_option("--sigma", o.sigma, "suggested policy gaussian sigma");
  sub->add_option("--interest-ratio", o.interest_ratio,
                  "suggested policy liquidity term weight")
      ->capture_default_str();
  sub->add_option("--eclair-capacity", o.eclair_capacity,
                  "Eclair capacity normalization: descending|ascending")
      ->capture_default_str();
}

void AddAttackOptions(CLI::App* sub, Options& o) {
  sub->add_option("--attacker-id", o.attacker_id, "id of the attacker node")
      ->capture_default_str();
  sub->add_option("--lookahead", o.lookahead,
                  "candidates searched for the opening channel pair")
      ->capture_default_str();
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Route hijacking experiments on payment channel graphs",
               "pcnhijack"};
  app.require_subcommand(1);

  auto* stats = app.add_subcommand("stats", "channel graph statistics");
  AddGraphOptions(stats, o);

  auto* routes = app.add_subcommand("routes", "path length and fee histograms");
  AddGraphOptions(routes, o);
  AddRoutingOptions(routes, o, true);

  auto* centrality =
      app.add_subcommand("centrality", "cumulative top-k node centrality");
  AddGraphOptions(centrality, o);
  AddRoutingOptions(centrality, o, true);
  centrality->add_option("--k", o.k, "largest set size")->capture_default_str();

  auto* attack = app.add_subcommand(
      "attack", "greedy channel placement against a random baseline");
  AddGraphOptions(attack, o);
  AddRoutingOptions(attack, o, true);
  AddAttackOptions(attack, o);
  attack->add_option("--k", o.k, "channel budget")->capture_default_str();
  attack->add_option("--trials", o.trials, "random baseline trials (0: off)")
      ->capture_default_str();

  auto* fuzz = app.add_subcommand(
      "fuzz", "replay a fuzz-free plan under C-lightning fuzz rates");
  AddGraphOptions(fuzz, o);
  AddRoutingOptions(fuzz, o, false);
  AddAttackOptions(fuzz, o);
  fuzz->add_option("--k", o.k, "channel budget when training a plan")
      ->capture_default_str();
  fuzz->add_option("--fuzz-rates", o.fuzz_rates, "comma separated rates")
      ->capture_default_str();
  fuzz->add_option("--trials", o.trials, "trials per rate")
      ->capture_default_str();
  fuzz->add_option("--plan", o.plan_path, "plan JSON written by attack");

  auto* delay = app.add_subcommand(
      "delay", "replay a plan with increasing attack channel delays");
  AddGraphOptions(delay, o);
  AddRoutingOptions(delay, o, true);
  AddAttackOptions(delay, o);
  delay->add_option("--k", o.k, "channel budget when training a plan")
      ->capture_default_str();
  delay->add_option("--delays", o.delays, "comma separated block counts")
      ->capture_default_str();
  delay->add_option("--plan", o.plan_path, "plan JSON written by attack");

  auto* suggested = app.add_subcommand(
      "suggested", "centrality, attack and delay under the suggested policy");
  AddGraphOptions(suggested, o);
  AddRoutingOptions(suggested, o, false);
  AddAttackOptions(suggested, o);
  suggested->add_option("--k", o.k, "set size and channel budget")
      ->capture_default_str();
  suggested->add_option("--delays", o.delays, "comma separated block counts")
      ->capture_default_str();

  auto* game = app.add_subcommand("game", "clique attacker/defender game");
  game->add_option("--H", o.H, "value at stake")->capture_default_str();
  game->add_option("--I", o.I, "liquidity cost per channel")
      ->capture_default_str();
  game->add_option("--V", o.V, "clique size")->capture_default_str();
  game->add_option("--k", o.game_k, "attacker channels")->capture_default_str();
  game->add_option("--out", o.out, "CSV output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*stats) RunStats(o, out);
    if (*routes) RunRoutes(o, out);
    if (*centrality) RunCentrality(o, out);
    if (*attack) RunAttack(o, out, err);
    if (*fuzz) RunFuzz(o, out);
    if (*delay) RunDelay(o, out);
    if (*suggested) RunSuggested(o, out);
    if (*game) RunGame(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pcnhijack::cli

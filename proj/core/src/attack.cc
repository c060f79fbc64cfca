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

#include "pcnhijack/attack.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pcnhijack/random.h"

namespace pcnhijack {
namespace {

std::vector<char> RoutableMask(std::span<const std::optional<Route>> routes) {
  std::vector<char> mask(routes.size());
  for (std::size_t i = 0; i < routes.size(); ++i) mask[i] = routes[i] ? 1 : 0;
  return mask;
}

HijackOutcome Measure(NodeIndex attacker,
                      std::span<const std::optional<Route>> routes,
                      std::span<const char> routable_before) {
  HijackOutcome out;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    if (!routes[i]) continue;
    ++out.routable;
    if (!routable_before.empty() && !routable_before[i]) ++out.newly_routable;
    if (routes[i]->HasInteriorNode(attacker)) ++out.hijacked;
  }
  out.fraction = out.routable == 0 ? 0.0
                                   : static_cast<double>(out.hijacked) /
                                         static_cast<double>(out.routable);
  return out;
}

ChannelGraph Apply(const ChannelGraph& base, std::span<const std::string> peers,
                   const ChannelPolicy& policy, Msat capacity,
                   const std::string& attacker) {
  std::vector<AttackLink> links;
  links.reserve(peers.size());
  for (const std::string& p : peers) links.push_back({p, policy, capacity});
  return AddAttacker(base, attacker, links, base.max_height());
}

HijackOutcome EvaluateOn(const ChannelGraph& base, const RoutingPolicy& policy,
                         std::span<const std::string> peers,
                         const ChannelPolicy& channel_policy,
                         const PairSample& pairs, std::uint64_t seed,
                         std::uint64_t trial, const AttackConfig& config,
                         std::span<const char> routable_before) {
  const ChannelGraph attacked =
      Apply(base, peers, channel_policy, config.CapacityFor(pairs.amount),
            config.attacker_id);
  const auto routes =
      RoutePairs(attacked, policy, pairs, seed, trial, config.route_options);
  return Measure(attacked.node(config.attacker_id), routes,
                 routable_before);
}

std::vector<char> BaseRoutable(const ChannelGraph& base,
                               const RoutingPolicy& policy,
                               const PairSample& pairs, std::uint64_t seed,
                               std::uint64_t trial,
                               const AttackConfig& config) {
  return RoutableMask(
      RoutePairs(base, policy, pairs, seed, trial, config.route_options));
}

void CheckFresh(const ChannelGraph& base, const AttackConfig& config) {
  if (base.find_node(config.attacker_id)) {
    throw GraphError("attacker '" + config.attacker_id +
                     "' already exists in the graph");
  }
}

}  // namespace

std::vector<std::string> AttackPlan::Peers() const {
  std::vector<std::string> peers;
  peers.reserve(steps.size());
  for (const AttackStep& s : steps) peers.push_back(s.peer);
  return peers;
}

ChannelGraph ApplyPeers(const ChannelGraph& base,
                        std::span<const std::string> peers, Msat amount,
                        const AttackConfig& config) {
  return Apply(base, peers, config.channel_policy, config.CapacityFor(amount),
               config.attacker_id);
}

HijackOutcome EvaluatePeers(const ChannelGraph& base,
                            const RoutingPolicy& policy,
                            std::span<const std::string> peers,
                            const PairSample& pairs, std::uint64_t seed,
                            const AttackConfig& config, std::uint64_t trial) {
  CheckFresh(base, config);
  const auto before = BaseRoutable(base, policy, pairs, seed, trial, config);
  return EvaluateOn(base, policy, peers, config.channel_policy, pairs, seed,
                    trial, config, before);
}

AttackPlan GreedyAttack(const ChannelGraph& base, const RoutingPolicy& policy,
                        int budget, const PairSample& pairs,
                        std::uint64_t seed, const AttackConfig& config) {
  if (budget < 0) throw std::invalid_argument("budget must be >= 0");
  CheckFresh(base, config);
  policy.Validate();
  AttackPlan plan;
  plan.attacker = config.attacker_id;
  plan.policy = config.channel_policy;
  plan.capacity = config.CapacityFor(pairs.amount);
  plan.amount = pairs.amount;
  plan.routing_policy = std::string(policy.name());
  const int steps = std::min<int>(budget, static_cast<int>(base.node_count()));
  if (steps == 0) return plan;

  DistanceOracle oracle(base, policy.DeterministicCore(), pairs, config);
  const auto before = BaseRoutable(base, policy, pairs, seed, 0, config);
  std::vector<std::string> peers;

  const auto commit = [&](NodeIndex peer, std::size_t gain) {
    oracle.Commit(peer);
    peers.push_back(base.node_id(peer));
    AttackStep step;
    step.peer = base.node_id(peer);
    step.policy = config.channel_policy;
    step.capacity = plan.capacity;
    step.oracle_gain = gain;
    step.outcome = EvaluateOn(base, policy, peers, config.channel_policy,
                              pairs, seed, 0, config, before);
    plan.steps.push_back(std::move(step));
  };

  // Opening pair among the highest-degree nodes.
  std::vector<NodeIndex> by_degree(base.node_count());
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](NodeIndex a, NodeIndex b) {
                     return base.incident_channels(a).size() >
                            base.incident_channels(b).size();
                   });
  const auto m = static_cast<std::size_t>(
      std::max(2, config.lookahead_candidates));
  if (by_degree.size() > m) by_degree.resize(m);
  if (base.node_count() < 2) {
    commit(0, 0);
    return plan;
  }
  const NextPair opening = FindBestPair(oracle, by_degree);
  commit(opening.first, 0);
  if (steps >= 2) commit(opening.second, opening.count);

  while (static_cast<int>(plan.steps.size()) < steps) {
    const NextPeer next = FindNextOptimized(oracle, oracle.AttackedPairs());
    commit(next.peer, next.count);
  }
  return plan;
}

std::vector<DelayPoint> DelaySweep(const ChannelGraph& base,
                                   const RoutingPolicy& policy,
                                   const AttackPlan& plan,
                                   std::span<const Blocks> delays,
                                   const PairSample& pairs, std::uint64_t seed,
                                   const AttackConfig& config) {
  CheckFresh(base, config);
  const auto before = BaseRoutable(base, policy, pairs, seed, 0, config);
  const std::vector<std::string> peers = plan.Peers();
  std::vector<DelayPoint> out;
  for (Blocks d : delays) {
    if (d < 0) throw std::invalid_argument("delay must be non-negative");
    ChannelPolicy p = plan.steps.empty() ? config.channel_policy
                                         : plan.steps.front().policy;
    p.delay = d;
    out.push_back({d, EvaluateOn(base, policy, peers, p, pairs, seed, 0,
                                 config, before)});
  }
  return out;
}

std::vector<FuzzPoint> FuzzRobustness(const ChannelGraph& base,
                                      const AttackPlan& plan,
                                      std::span<const double> fuzz_rates,
                                      int trials, const PairSample& pairs,
                                      std::uint64_t seed,
                                      const AttackConfig& config,
                                      const CLightningParams& params) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  CheckFresh(base, config);
  const std::vector<std::string> peers = plan.Peers();
  const ChannelPolicy channel_policy =
      plan.steps.empty() ? config.channel_policy : plan.steps.front().policy;
  std::vector<FuzzPoint> out;
  for (double fuzz : fuzz_rates) {
    CLightningParams p = params;
    p.fuzz = fuzz;
    const RoutingPolicy policy = RoutingPolicy::CLightning(p);
    policy.Validate();
    FuzzPoint point{fuzz, 0, 0, {}};
    for (int t = 0; t < trials; ++t) {
      const auto trial = static_cast<std::uint64_t>(t);
      point.fractions.push_back(EvaluateOn(base, policy, peers, channel_policy,
                                           pairs, seed, trial, config, {})
                                    .fraction);
    }
    const double n = static_cast<double>(trials);
    point.mean_fraction =
        std::accumulate(point.fractions.begin(), point.fractions.end(), 0.0) /
        n;
    double ss = 0;
    for (double f : point.fractions) {
      ss += (f - point.mean_fraction) * (f - point.mean_fraction);
    }
    point.stddev = std::sqrt(ss / n);
    out.push_back(std::move(point));
  }
  return out;
}

BaselineResult RandomBaseline(const ChannelGraph& base,
                              const RoutingPolicy& policy, int k, int trials,
                              const PairSample& pairs, std::uint64_t seed,
                              const AttackConfig& config) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  CheckFresh(base, config);
  BaselineResult result;
  const std::size_t n = base.node_count();
  const std::size_t picks = std::min<std::size_t>(k, n);
  for (int t = 0; t < trials; ++t) {
    if (picks == 0) {
      result.fractions.push_back(0.0);
      continue;
    }
    Rng rng = DeriveRng(KeyedHash(seed, 0x424153454C494E45ULL),
                        static_cast<std::uint64_t>(t));
    std::vector<NodeIndex> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < picks; ++i) {
      std::swap(order[i], order[i + UniformIndex(rng, n - i)]);
    }
    std::vector<std::string> peers;
    for (std::size_t i = 0; i < picks; ++i) {
      peers.push_back(base.node_id(order[i]));
    }
    result.fractions.push_back(EvaluateOn(base, policy, peers,
                                          config.channel_policy, pairs, seed,
                                          static_cast<std::uint64_t>(t),
                                          config, {})
                                   .fraction);
  }
  result.mean_fraction = std::accumulate(result.fractions.begin(),
                                         result.fractions.end(), 0.0) /
                         static_cast<double>(trials);
  return result;
}

CentralityReport ColludingAttack(const ChannelGraph& graph,
                                 const RoutingPolicy& policy, int k,
                                 const PairSample& pairs, std::uint64_t seed,
                                 const RouteOptions& options) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const auto routes = RoutePairs(graph, policy, pairs, seed, 0, options);
  const auto curve =
      TopCentralNodesFromRoutes(graph.node_count(), k, routes);
  std::vector<NodeIndex> nodes = curve.empty() ? std::vector<NodeIndex>{}
                                               : curve.back().nodes;
  if (nodes.empty()) nodes.push_back(0);
  return CentralityFromRoutes(TargetSet::Nodes(std::move(nodes)), routes);
}

}  // namespace pcnhijack

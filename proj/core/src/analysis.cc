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

#include "pcnhijack/analysis.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "pcnhijack/random.h"

namespace pcnhijack {
namespace {

Blocks HeightFor(const ChannelGraph& graph, const RouteOptions& options) {
  return options.current_height.value_or(graph.max_height());
}

}  // namespace

PairSample PairSample::All(const ChannelGraph& graph, Msat amount) {
  PairSample sample;
  sample.amount = amount;
  const auto n = static_cast<NodeIndex>(graph.node_count());
  sample.pairs.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0));
  for (NodeIndex s = 0; s < n; ++s) {
    for (NodeIndex t = 0; t < n; ++t) {
      if (s != t) sample.pairs.emplace_back(s, t);
    }
  }
  return sample;
}

PairSample PairSample::Among(std::span<const NodeIndex> nodes, Msat amount) {
  return Between(nodes, nodes, amount);
}

PairSample PairSample::Between(std::span<const NodeIndex> sources,
                               std::span<const NodeIndex> targets,
                               Msat amount) {
  PairSample sample;
  sample.amount = amount;
  for (NodeIndex s : sources) {
    for (NodeIndex t : targets) {
      if (s != t) sample.pairs.emplace_back(s, t);
    }
  }
  return sample;
}

PairSample PairSample::Sample(const ChannelGraph& graph, Msat amount,
                              std::size_t count, std::uint64_t seed) {
  const std::uint64_t n = graph.node_count();
  const std::uint64_t total = n * (n > 0 ? n - 1 : 0);
  if (count >= total) return All(graph, amount);
  Rng rng(KeyedHash(seed, 0x5041495253ULL));
  PairSample sample;
  sample.amount = amount;
  if (2 * count >= total) {
    PairSample all = All(graph, amount);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + UniformIndex(rng, all.pairs.size() - i);
      std::swap(all.pairs[i], all.pairs[j]);
    }
    all.pairs.resize(count);
    sample.pairs = std::move(all.pairs);
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (sample.pairs.size() < count) {
      const auto s = static_cast<NodeIndex>(UniformIndex(rng, n));
      const auto t = static_cast<NodeIndex>(UniformIndex(rng, n));
      if (s == t) continue;
      if (!seen.insert((static_cast<std::uint64_t>(s) << 32) | t).second) {
        continue;
      }
      sample.pairs.emplace_back(s, t);
    }
  }
  std::sort(sample.pairs.begin(), sample.pairs.end());
  return sample;
}

std::vector<std::optional<Route>> RoutePairs(const ChannelGraph& graph,
                                             const RoutingPolicy& policy,
                                             const PairSample& pairs,
                                             std::uint64_t seed,
                                             std::uint64_t trial,
                                             const RouteOptions& options) {
  policy.Validate();
  std::vector<std::optional<Route>> routes(pairs.size());
  if (policy.randomized()) {
    const std::uint64_t trial_seed = KeyedHash(seed, trial);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      Rng rng = DeriveRng(trial_seed, i);
      const auto [s, t] = pairs.pairs[i];
      routes[i] = FindRoute(graph, s, t, pairs.amount, policy, rng, options);
    }
    return routes;
  }
  const EdgeWeigher weigher(graph, policy, HeightFor(graph, options), 0,
                            options.failure_memory, options.now_seconds);
  std::map<NodeIndex, std::vector<std::size_t>> by_target;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    by_target[pairs.pairs[i].second].push_back(i);
  }
  for (const auto& [target, indices] : by_target) {
    if (indices.size() == 1) {
      const std::size_t i = indices.front();
      routes[i] = FindBestRoute(graph, weigher, pairs.pairs[i].first, target,
                                pairs.amount, options.limits);
      continue;
    }
    const RoutesToTarget all(graph, weigher, target, pairs.amount,
                             options.limits);
    for (std::size_t i : indices) {
      routes[i] = all.RouteFrom(pairs.pairs[i].first);
    }
  }
  return routes;
}

bool TargetSet::Hits(const Route& route) const {
  if (kind == Kind::kNodes) {
    for (std::size_t i = 0; i + 1 < route.hops.size(); ++i) {
      if (std::find(members.begin(), members.end(), route.hops[i].to) !=
          members.end()) {
        return true;
      }
    }
    return false;
  }
  for (const Hop& h : route.hops) {
    if (std::find(members.begin(), members.end(), h.channel) != members.end()) {
      return true;
    }
  }
  return false;
}

namespace {

void Accumulate(const TargetSet& targets,
                std::span<const std::optional<Route>> routes,
                CentralityReport& report) {
  if (report.pair_hits.empty()) report.pair_hits.assign(routes.size(), -1);
  ++report.trials;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    if (!routes[i]) {
      ++report.unroutable;
      continue;
    }
    ++report.routable;
    if (report.pair_hits[i] < 0) report.pair_hits[i] = 0;
    if (targets.Hits(*routes[i])) {
      ++report.hits;
      ++report.pair_hits[i];
    }
  }
  report.fraction = report.routable == 0
                        ? 0.0
                        : static_cast<double>(report.hits) /
                              static_cast<double>(report.routable);
}

}  // namespace

CentralityReport CentralityFromRoutes(
    const TargetSet& targets, std::span<const std::optional<Route>> routes) {
  CentralityReport report;
  report.targets = targets;
  report.pair_count = routes.size();
  Accumulate(targets, routes, report);
  return report;
}

CentralityReport ComputeCentrality(const ChannelGraph& graph,
                                   const RoutingPolicy& policy,
                                   const TargetSet& targets,
                                   const PairSample& pairs, std::uint64_t seed,
                                   int trials, const RouteOptions& options) {
  if (targets.members.empty()) {
    throw std::invalid_argument("centrality target set is empty");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  CentralityReport report;
  report.targets = targets;
  report.pair_count = pairs.size();
  const int runs = policy.randomized() ? trials : 1;
  for (int t = 0; t < runs; ++t) {
    const auto routes = RoutePairs(graph, policy, pairs, seed,
                                   static_cast<std::uint64_t>(t), options);
    Accumulate(targets, routes, report);
  }
  return report;
}

std::vector<CurvePoint> TopCentralNodesFromRoutes(
    std::size_t node_count, int k_max,
    std::span<const std::optional<Route>> routes) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  // Interior nodes per routable pair, and the pairs each node covers.
  std::vector<std::vector<std::size_t>> covers(node_count);
  std::size_t routable = 0;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    if (!routes[i]) continue;
    ++routable;
    const auto& hops = routes[i]->hops;
    for (std::size_t h = 0; h + 1 < hops.size(); ++h) {
      auto& list = covers[hops[h].to];
      if (list.empty() || list.back() != i) list.push_back(i);
    }
  }
  std::vector<char> covered(routes.size(), 0);
  std::vector<char> chosen(node_count, 0);
  std::vector<CurvePoint> curve;
  std::vector<NodeIndex> nodes;
  std::size_t total = 0;
  const int steps = std::min<int>(k_max, static_cast<int>(node_count));
  for (int k = 1; k <= steps; ++k) {
    NodeIndex best = kNoNode;
    std::size_t best_gain = 0;
    for (NodeIndex v = 0; v < node_count; ++v) {
      if (chosen[v]) continue;
      std::size_t gain = 0;
      for (std::size_t i : covers[v]) gain += covered[i] ? 0 : 1;
      if (best == kNoNode || gain > best_gain) {
        best = v;
        best_gain = gain;
      }
    }
    chosen[best] = 1;
    for (std::size_t i : covers[best]) covered[i] = 1;
    total += best_gain;
    nodes.push_back(best);
    curve.push_back({k, nodes,
                     routable == 0 ? 0.0
                                   : static_cast<double>(total) /
                                         static_cast<double>(routable)});
  }
  return curve;
}

std::vector<CurvePoint> TopCentralNodes(const ChannelGraph& graph,
                                        const RoutingPolicy& policy, int k_max,
                                        const PairSample& pairs,
                                        std::uint64_t seed,
                                        const RouteOptions& options) {
  const auto routes = RoutePairs(graph, policy, pairs, seed, 0, options);
  return TopCentralNodesFromRoutes(graph.node_count(), k_max, routes);
}

EclairHijackMetrics ComputeEclairHijackMetrics(
    const ChannelGraph& graph, std::span<const NodeIndex> attackers,
    const PairSample& pairs, const EclairParams& params,
    const RouteOptions& options) {
  if (attackers.empty()) {
    throw std::invalid_argument("attacker set is empty");
  }
  const RoutingPolicy policy = RoutingPolicy::Eclair(params);
  policy.Validate();
  const EdgeWeigher weigher(graph, policy, HeightFor(graph, options), 0,
                            options.failure_memory, options.now_seconds);
  const TargetSet targets =
      TargetSet::Nodes(std::vector<NodeIndex>(attackers.begin(), attackers.end()));
  EclairHijackMetrics m;
  std::size_t best = 0, all = 0;
  double expected = 0;
  for (const auto& [s, t] : pairs.pairs) {
    const auto routes = KShortestRoutes(graph, weigher, s, t, pairs.amount,
                                        params.top_k, options.limits);
    if (routes.empty()) continue;
    ++m.routable;
    std::size_t hijacked = 0;
    for (const Route& r : routes) hijacked += targets.Hits(r) ? 1 : 0;
    if (targets.Hits(routes.front())) ++best;
    if (hijacked == routes.size()) ++all;
    expected += static_cast<double>(hijacked) /
                static_cast<double>(routes.size());
  }
  if (m.routable > 0) {
    const auto n = static_cast<double>(m.routable);
    m.best_route_fraction = static_cast<double>(best) / n;
    m.all_top_fraction = static_cast<double>(all) / n;
    m.expected_fraction = expected / n;
  }
  return m;
}

RouteDistribution PathLengthDistribution(
    std::span<const std::optional<Route>> routes) {
  RouteDistribution d;
  for (const auto& r : routes) {
    if (r) {
      ++d.histogram[static_cast<std::int64_t>(r->hops.size())];
    } else {
      ++d.unroutable;
    }
  }
  return d;
}

RouteDistribution FeeDistribution(
    std::span<const std::optional<Route>> routes) {
  RouteDistribution d;
  for (const auto& r : routes) {
    if (r) {
      ++d.histogram[r->total_fee];
    } else {
      ++d.unroutable;
    }
  }
  return d;
}

}  // namespace pcnhijack

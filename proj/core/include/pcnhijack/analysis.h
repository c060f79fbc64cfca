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

// Route centrality of node and channel sets over a sample of payments.

#ifndef PCNHIJACK_ANALYSIS_H_
#define PCNHIJACK_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pcnhijack/graph.h"
#include "pcnhijack/routing.h"
#include "pcnhijack/stats.h"
#include "pcnhijack/weights.h"

namespace pcnhijack {

// Ordered (source, target) payments of one amount.
struct PairSample {
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  Msat amount = 1'000'000;

  // Every ordered pair of distinct nodes.
  static PairSample All(const ChannelGraph& graph, Msat amount);
  // Every ordered pair of distinct nodes drawn from `nodes`.
  static PairSample Among(std::span<const NodeIndex> nodes, Msat amount);
  // Pairs with source in `sources` and target in `targets` (source != target).
  static PairSample Between(std::span<const NodeIndex> sources,
                            std::span<const NodeIndex> targets, Msat amount);
  // `count` distinct ordered pairs chosen uniformly under `seed`, sorted.
  // Falls back to All() when count covers every pair.
  static PairSample Sample(const ChannelGraph& graph, Msat amount,
                           std::size_t count, std::uint64_t seed);

  std::size_t size() const { return pairs.size(); }
};

// Routes every pair once. Pair i of trial t draws its randomness from
// DeriveRng(KeyedHash(seed, t), i), so results do not depend on evaluation
// order. Deterministic policies are batched per target.
std::vector<std::optional<Route>> RoutePairs(const ChannelGraph& graph,
                                             const RoutingPolicy& policy,
                                             const PairSample& pairs,
                                             std::uint64_t seed,
                                             std::uint64_t trial = 0,
                                             const RouteOptions& options = {});

// Either a node set (hit when a node is strictly interior to the route) or a
// channel set (hit when any hop uses the channel).
struct TargetSet {
  enum class Kind { kNodes, kChannels };
  Kind kind = Kind::kNodes;
  std::vector<std::uint32_t> members;

  static TargetSet Nodes(std::vector<NodeIndex> nodes) {
    return {Kind::kNodes, std::move(nodes)};
  }
  static TargetSet Channels(std::vector<ChannelIndex> channels) {
    return {Kind::kChannels, std::move(channels)};
  }
  bool Hits(const Route& route) const;
};

struct CentralityReport {
  TargetSet targets;
  std::size_t pair_count = 0;
  std::size_t trials = 0;
  // Summed over trials.
  std::size_t routable = 0;
  std::size_t unroutable = 0;
  std::size_t hits = 0;
  // hits / routable (0 when nothing is routable).
  double fraction = 0;
  // Per pair: number of trials in which the pair was hijacked, or -1 when
  // the pair was unroutable in every trial.
  std::vector<int> pair_hits;
};

CentralityReport ComputeCentrality(const ChannelGraph& graph,
                                   const RoutingPolicy& policy,
                                   const TargetSet& targets,
                                   const PairSample& pairs, std::uint64_t seed,
                                   int trials = 1,
                                   const RouteOptions& options = {});

// Same report computed from precomputed routes.
CentralityReport CentralityFromRoutes(
    const TargetSet& targets, std::span<const std::optional<Route>> routes);

struct CurvePoint {
  int k;
  std::vector<NodeIndex> nodes;  // chosen so far
  double fraction;
};

// Greedy maximum coverage over the interior nodes of each pair's route:
// step k adds the node covering the most not-yet-covered routable pairs
// (ties to the smallest node index).
std::vector<CurvePoint> TopCentralNodes(const ChannelGraph& graph,
                                        const RoutingPolicy& policy, int k_max,
                                        const PairSample& pairs,
                                        std::uint64_t seed,
                                        const RouteOptions& options = {});
std::vector<CurvePoint> TopCentralNodesFromRoutes(
    std::size_t node_count, int k_max,
    std::span<const std::optional<Route>> routes);

struct EclairHijackMetrics {
  std::size_t routable = 0;
  double best_route_fraction = 0;
  double all_top_fraction = 0;
  double expected_fraction = 0;
};

// Per pair, the top_k loop-free routes under the Eclair weight; a route is
// hijacked when it has an attacker node strictly inside it.
EclairHijackMetrics ComputeEclairHijackMetrics(
    const ChannelGraph& graph, std::span<const NodeIndex> attackers,
    const PairSample& pairs, const EclairParams& params = {},
    const RouteOptions& options = {});

struct RouteDistribution {
  Histogram histogram;
  std::size_t unroutable = 0;
};

RouteDistribution PathLengthDistribution(
    std::span<const std::optional<Route>> routes);
RouteDistribution FeeDistribution(std::span<const std::optional<Route>> routes);

}  // namespace pcnhijack

#endif  // PCNHIJACK_ANALYSIS_H_

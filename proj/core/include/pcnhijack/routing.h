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

#ifndef PCNHIJACK_ROUTING_H_
#define PCNHIJACK_ROUTING_H_

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pcnhijack/graph.h"
#include "pcnhijack/random.h"
#include "pcnhijack/weights.h"

namespace pcnhijack {

struct Hop {
  ChannelIndex channel;
  Direction dir;
  NodeIndex from;
  NodeIndex to;
  // Amount carried over this hop.
  Msat forwarded_amount;
  // Fee charged by `from` for this hop (0 on the sender's own first hop).
  Msat fee;
  double weight;
};

// A source route. Invariants: hops chain from source to target; the last
// hop carries exactly `amount`; hops[i].forwarded_amount ==
// hops[i + 1].forwarded_amount + hops[i + 1].fee; totals are the hop sums.
struct Route {
  NodeIndex source = kNoNode;
  NodeIndex target = kNoNode;
  Msat amount = 0;
  std::vector<Hop> hops;
  Msat total_fee = 0;
  double total_weight = 0;
  // Sum of the delays of forwarding (non-first) hops.
  Blocks total_delay = 0;

  std::size_t hop_count() const { return hops.size(); }
  // Nodes strictly between source and target.
  bool HasInteriorNode(NodeIndex n) const;
  bool UsesChannel(ChannelIndex c) const;
  // Channel ids in order from the source.
  std::vector<std::string> ChannelIds(const ChannelGraph& graph) const;
};

// Route admission thresholds.
struct RouteLimits {
  int max_hops = 20;
  double max_fee_fraction = 0.05;
  Msat max_fee_base = 5000;

  Msat MaxFee(Msat amount) const {
    return max_fee_base +
           static_cast<Msat>(max_fee_fraction * static_cast<double>(amount));
  }
};

struct RouteOptions {
  RouteLimits limits;
  // Height used for channel ageing; defaults to graph.max_height().
  std::optional<Blocks> current_height;
  // lnd failure memory (only read with the probability penalty on).
  const FailureMemory* failure_memory = nullptr;
  double now_seconds = 0;
};

// Materializes the route that follows `edges` (source first), computing
// amounts, fees and weights backwards from the target. Throws
// std::invalid_argument when the edges do not chain.
Route EvaluatePath(const ChannelGraph& graph, const EdgeWeigher& weigher,
                   Msat amount, std::span<const DirectedEdge> edges);

// Minimum-weight admissible route, searched backwards from the target so
// each hop's forwarded amount is exact when it is weighed. Ties go to fewer
// hops, then the lexicographically smallest channel-id sequence.
//
// One routing attempt: draws the attempt salt (C-lightning fuzz, suggested
// gaussian scales) from `rng`; Eclair additionally picks uniformly among its
// top_k routes. Returns nullopt when no admissible route exists. Throws
// std::invalid_argument when source == target or amount <= 0.
std::optional<Route> FindRoute(const ChannelGraph& graph, NodeIndex source,
                               NodeIndex target, Msat amount,
                               const RoutingPolicy& policy, Rng& rng,
                               const RouteOptions& options = {});

// Deterministic minimum-weight route under an explicit weigher.
std::optional<Route> FindBestRoute(const ChannelGraph& graph,
                                   const EdgeWeigher& weigher,
                                   NodeIndex source, NodeIndex target,
                                   Msat amount, const RouteLimits& limits = {});

// Up to k loop-free admissible routes in nondecreasing weight order (ties
// ordered as in FindBestRoute), by deviation from the best route.
std::vector<Route> KShortestRoutes(const ChannelGraph& graph,
                                   const EdgeWeigher& weigher,
                                   NodeIndex source, NodeIndex target,
                                   Msat amount, int k,
                                   const RouteLimits& limits = {});

// Best routes from every node to one target, from a single backward search.
// Valid for deterministic weighers only; matches FindBestRoute per source.
class RoutesToTarget {
 public:
  RoutesToTarget(const ChannelGraph& graph, const EdgeWeigher& weigher,
                 NodeIndex target, Msat amount, const RouteLimits& limits = {});
  ~RoutesToTarget();
  RoutesToTarget(RoutesToTarget&&) noexcept;
  RoutesToTarget& operator=(RoutesToTarget&&) noexcept;

  NodeIndex target() const;
  // Weight of the best route from `source` (+inf when unroutable).
  double SourceWeight(NodeIndex source) const;
  int SourceHops(NodeIndex source) const;
  std::optional<Route> RouteFrom(NodeIndex source) const;

  // Best label of `node` used as an intermediate hop: weight accumulated
  // from the node to the target and the amount that must reach the node.
  // Weight is +inf when the node cannot forward to the target.
  double IntermediateWeight(NodeIndex node) const;
  Msat IntermediateAmount(NodeIndex node) const;
  int IntermediateHops(NodeIndex node) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pcnhijack

#endif  // PCNHIJACK_ROUTING_H_

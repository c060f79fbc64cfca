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

// Channel-placement attacks by an external node: greedy planning over a
// distance oracle, and the experiments that replay a plan.

#ifndef PCNHIJACK_ATTACK_H_
#define PCNHIJACK_ATTACK_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcnhijack/analysis.h"
#include "pcnhijack/graph.h"
#include "pcnhijack/routing.h"
#include "pcnhijack/weights.h"

namespace pcnhijack {

inline constexpr Blocks kMinimumDelay = 9;

struct AttackConfig {
  std::string attacker_id = "attacker";
  // Policy of both directions of every attack channel.
  ChannelPolicy channel_policy{0, 0, kMinimumDelay, true};
  // Defaults to amount * max_hops.
  std::optional<Msat> capacity;
  // The opening move commits two channels at once (a single channel cannot
  // put the attacker inside any route); the pair is searched among the
  // `lookahead_candidates` highest-degree nodes.
  int lookahead_candidates = 64;
  RouteOptions route_options;

  Msat CapacityFor(Msat amount) const {
    return capacity.value_or(amount * route_options.limits.max_hops);
  }
};

// Realized effect of an attacker on a pair sample.
struct HijackOutcome {
  std::size_t hijacked = 0;
  std::size_t routable = 0;
  // Pairs routable now that were not routable without the attacker.
  std::size_t newly_routable = 0;
  double fraction = 0;  // hijacked / routable
};

struct AttackStep {
  std::string peer;
  ChannelPolicy policy;
  Msat capacity = 0;
  // Pairs newly captured according to the oracle.
  std::size_t oracle_gain = 0;
  HijackOutcome outcome;
};

struct AttackPlan {
  std::string attacker;
  ChannelPolicy policy;
  Msat capacity = 0;
  Msat amount = 0;
  std::string routing_policy;
  std::vector<AttackStep> steps;

  std::vector<std::string> Peers() const;
};

// Weights of the best routes of a pair sample on the attacker-free graph,
// and of the routes that detour through the attacker's committed channels.
// Entries are computed once from backward searches on the base graph; a
// committed channel is folded in by a min-update.
class DistanceOracle {
 public:
  struct Weight {
    double weight;
    int hops;
  };

  // `policy` must be deterministic.
  DistanceOracle(const ChannelGraph& base, const RoutingPolicy& policy,
                 const PairSample& pairs, const AttackConfig& config = {});
  ~DistanceOracle();
  DistanceOracle(DistanceOracle&&) noexcept;
  DistanceOracle& operator=(DistanceOracle&&) noexcept;

  std::size_t pair_count() const;
  std::size_t node_count() const;
  std::span<const NodeIndex> committed() const;
  bool IsCommitted(NodeIndex v) const;

  // Best weight without the attacker (+inf when unroutable).
  Weight Direct(std::size_t pair) const;
  bool Routable(std::size_t pair) const;
  // Best weight through committed channels (+inf when none).
  Weight ViaCommitted(std::size_t pair) const;
  // Through committed channels plus a channel to `candidate`.
  Weight ViaWith(std::size_t pair, NodeIndex candidate) const;
  // Detours that use the candidate's channel together with committed ones.
  Weight ViaNew(std::size_t pair, NodeIndex candidate) const;
  // Through channels to exactly `entry` and `exit` (in that order).
  Weight ViaPath(std::size_t pair, NodeIndex entry, NodeIndex exit) const;

  // via < direct, comparing weight then hops. A full tie goes to the base
  // route: attack channels carry the newest ids and usually lose the
  // channel-id tie-break.
  static bool Captures(const Weight& via, const Weight& direct);
  // Pairs captured by the committed channels.
  std::vector<char> AttackedPairs() const;

  void Commit(NodeIndex peer);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct NextPeer {
  NodeIndex peer = kNoNode;
  std::size_t count = 0;
};

// Counts, for every uncommitted candidate, the pairs captured once it is
// added (every pair, re-deriving committed detours), and returns the best
// candidate; ties go to the smallest index.
NextPeer FindNextNaive(const DistanceOracle& oracle,
                       bool skip_unroutable = true);

// Same selection restricted to routable pairs not in `already_attacked`.
NextPeer FindNextOptimized(const DistanceOracle& oracle,
                           std::span<const char> already_attacked);

// Best opening pair among `candidates` (pairs captured by the two channels).
struct NextPair {
  NodeIndex first = kNoNode;
  NodeIndex second = kNoNode;
  std::size_t count = 0;
};
NextPair FindBestPair(const DistanceOracle& oracle,
                      std::span<const NodeIndex> candidates);

// Routes every pair on `base` plus an attacker linked to `peers` and counts
// routes with the attacker strictly inside.
HijackOutcome EvaluatePeers(const ChannelGraph& base,
                            const RoutingPolicy& policy,
                            std::span<const std::string> peers,
                            const PairSample& pairs, std::uint64_t seed,
                            const AttackConfig& config = {},
                            std::uint64_t trial = 0);

ChannelGraph ApplyPeers(const ChannelGraph& base,
                        std::span<const std::string> peers, Msat amount,
                        const AttackConfig& config);

// Greedy plan of `budget` channels. Peers are chosen on the deterministic
// core of `policy`; each step's outcome is measured under `policy` itself.
AttackPlan GreedyAttack(const ChannelGraph& base, const RoutingPolicy& policy,
                        int budget, const PairSample& pairs,
                        std::uint64_t seed, const AttackConfig& config = {});

struct DelayPoint {
  Blocks delay;
  HijackOutcome outcome;
};

// Replays the plan's peers with every attack direction set to each delay.
std::vector<DelayPoint> DelaySweep(const ChannelGraph& base,
                                   const RoutingPolicy& policy,
                                   const AttackPlan& plan,
                                   std::span<const Blocks> delays,
                                   const PairSample& pairs, std::uint64_t seed,
                                   const AttackConfig& config = {});

struct FuzzPoint {
  double fuzz;
  double mean_fraction;
  double stddev;
  std::vector<double> fractions;
};

// Replays the plan under C-lightning routing at each fuzz rate, one fresh
// salt per pair and trial.
std::vector<FuzzPoint> FuzzRobustness(const ChannelGraph& base,
                                      const AttackPlan& plan,
                                      std::span<const double> fuzz_rates,
                                      int trials, const PairSample& pairs,
                                      std::uint64_t seed,
                                      const AttackConfig& config = {},
                                      const CLightningParams& params = {});

struct BaselineResult {
  double mean_fraction = 0;
  std::vector<double> fractions;
};

// Attacker linked to k distinct peers drawn uniformly per trial.
BaselineResult RandomBaseline(const ChannelGraph& base,
                              const RoutingPolicy& policy, int k, int trials,
                              const PairSample& pairs, std::uint64_t seed,
                              const AttackConfig& config = {});

// The k most central existing nodes acting together.
CentralityReport ColludingAttack(const ChannelGraph& graph,
                                 const RoutingPolicy& policy, int k,
                                 const PairSample& pairs, std::uint64_t seed,
                                 const RouteOptions& options = {});

}  // namespace pcnhijack

#endif  // PCNHIJACK_ATTACK_H_

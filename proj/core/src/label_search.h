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

// Backward multi-label search shared by every route computation.
//
// Labels live at nodes and describe a partial route from the node to the
// target: accumulated weight, the amount that must arrive at the node, and
// the hop count. A label is dropped when another label at the same node is
// no worse in weight and amount (ties resolved by hops, then the channel-id
// sequence), which keeps the search exact for weights that grow with the
// forwarded amount. For weights that can drop as the amount grows, a
// label with the smaller amount must also lead by the most the other one
// could still gain upstream. Hop counts join the comparison only past half the hop
// limit, so the limit is enforced exactly whenever a route's remaining part
// is shorter than that half (always the case on graphs of at most
// max_hops / 2 + 1 nodes).

#ifndef PCNHIJACK_SRC_LABEL_SEARCH_H_
#define PCNHIJACK_SRC_LABEL_SEARCH_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pcnhijack/routing.h"

namespace pcnhijack::internal {

inline constexpr std::uint32_t kNoLabel = static_cast<std::uint32_t>(-1);

struct Label {
  double weight;
  Msat amount;
  int hops;
  NodeIndex node;
  std::uint32_t parent;  // label at via.to, or kNoLabel at the seed
  DirectedEdge via;      // edge node -> parent's node
  bool alive;
};

struct Seed {
  NodeIndex node;
  double weight = 0;
  Msat amount = 0;
  int hops = 0;
};

struct Bans {
  std::vector<char> nodes;  // indexed by NodeIndex; empty = no bans
  std::set<std::pair<ChannelIndex, Direction>> edges;

  bool node(NodeIndex n) const { return !nodes.empty() && nodes[n] != 0; }
  bool edge(const DirectedEdge& e) const {
    return !edges.empty() && edges.contains({e.channel, e.dir});
  }
};

// A finished route candidate from `source`: first edge plus the label at the
// first edge's head.
struct Completion {
  double weight = std::numeric_limits<double>::infinity();
  int hops = 0;
  DirectedEdge first{};
  std::uint32_t label = kNoLabel;
  bool valid() const { return label != kNoLabel; }
};

class LabelSearch {
 public:
  LabelSearch(const ChannelGraph& graph, const EdgeWeigher& weigher,
              const RouteLimits& limits, Msat payment_amount);

  // Best completion towards `source`; stops as soon as no cheaper
  // completion can appear. `suffix` is the fixed tail that follows the seed
  // (used only for tie-breaking).
  Completion RunToSource(NodeIndex source, const Seed& seed, const Bans& bans,
                         const std::vector<DirectedEdge>& suffix = {});

  // Exhaustive search from the seed (every node may be a source).
  void RunAll(const Seed& seed);

  // Best completion for `source` after RunAll.
  Completion CompleteFrom(NodeIndex source) const;

  // Best label per node after RunAll (kNoLabel when none).
  std::uint32_t BestLabel(NodeIndex node) const;

  const Label& label(std::uint32_t id) const { return labels_[id]; }

  // Edges from `first` (if valid) through the label chain up to the seed.
  std::vector<DirectedEdge> PathEdges(const Completion& c) const;

 private:
  struct QueueEntry {
    double weight;
    int hops;
    std::uint32_t label;
    bool operator>(const QueueEntry& o) const {
      if (weight != o.weight) return weight > o.weight;
      if (hops != o.hops) return hops > o.hops;
      return label > o.label;
    }
  };

  QueueEntry Pop();

  void Reset();
  bool Insert(const Label& label);
  bool OnChain(std::uint32_t label, NodeIndex node) const;
  void Push(double weight, int hops, std::uint32_t label);
  // <0 when label a's suffix sorts before b's, 0 when equal.
  int CompareSuffix(std::uint32_t a, std::uint32_t b) const;
  // Lexicographic order of two candidate full routes.
  bool CompletionLess(const Completion& a, const Completion& b) const;
  bool Dominates(const Label& a, std::uint32_t a_id, const Label& b,
                 std::uint32_t b_id) const;
  enum class Order { kBetter, kTied, kIncomparable };
  // kBetter when a is no worse than b in weight and amount, and in hops
  // unless both sit within the first half of the hop limit; kTied when
  // equal throughout.
  Order Compare(const Label& a, const Label& b) const;

  const ChannelGraph& graph_;
  const EdgeWeigher& weigher_;
  RouteLimits limits_;
  Msat payment_amount_;
  Msat max_amount_;
  int hop_slack_;
  // Dominance alone keeps label chains simple only for weights that never
  // drop as the amount grows; otherwise chains are checked explicitly.
  bool check_cycles_;

  std::vector<Label> labels_;
  std::vector<QueueEntry> heap_;
  std::vector<std::vector<std::uint32_t>> node_labels_;
  std::vector<NodeIndex> touched_;
  const std::vector<DirectedEdge>* suffix_ = nullptr;
  NodeIndex seed_node_ = kNoNode;
};

}  // namespace pcnhijack::internal

#endif  // PCNHIJACK_SRC_LABEL_SEARCH_H_

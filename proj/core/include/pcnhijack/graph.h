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

#ifndef PCNHIJACK_GRAPH_H_
#define PCNHIJACK_GRAPH_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pcnhijack {

// Millisatoshi amounts. Every fee and capacity in the library is held in
// msat; snapshot capacities (satoshi) are scaled on ingestion.
using Msat = std::int64_t;
// Block counts (delays, heights, ages).
using Blocks = std::int64_t;

using NodeIndex = std::uint32_t;
using ChannelIndex = std::uint32_t;

inline constexpr NodeIndex kNoNode = static_cast<NodeIndex>(-1);

// Thrown when the graph would violate a structural invariant (unknown
// endpoint, self loop, non-positive capacity, ...).
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Forwarding policy advertised by one endpoint for one direction.
struct ChannelPolicy {
  Msat base_fee = 0;
  // Proportional fee in parts per million of the forwarded amount.
  std::int64_t prop_fee_ppm = 0;
  Blocks delay = 0;
  bool enabled = true;

  static ChannelPolicy Disabled() { return {0, 0, 0, false}; }

  bool operator==(const ChannelPolicy&) const = default;
};

enum class Direction : std::uint8_t {
  kAToB = 0,
  kBToA = 1,
};

inline Direction Reverse(Direction d) {
  return d == Direction::kAToB ? Direction::kBToA : Direction::kAToB;
}

struct Channel {
  std::string id;
  NodeIndex a = kNoNode;
  NodeIndex b = kNoNode;
  Msat capacity = 0;
  Blocks height = 0;
  ChannelPolicy a_to_b;
  ChannelPolicy b_to_a;

  const ChannelPolicy& policy(Direction d) const {
    return d == Direction::kAToB ? a_to_b : b_to_a;
  }
  NodeIndex from(Direction d) const { return d == Direction::kAToB ? a : b; }
  NodeIndex to(Direction d) const { return d == Direction::kAToB ? b : a; }

  bool operator==(const Channel&) const = default;
};

// One usable direction of a channel, stored in the adjacency index.
struct DirectedEdge {
  ChannelIndex channel;
  Direction dir;
  NodeIndex from;
  NodeIndex to;
};

// Short channel ids pack <block:24><tx:24><output:16>. Returns the funding
// block when `id` is a decimal u64, nullopt otherwise.
std::optional<Blocks> DecodeShortChannelHeight(std::string_view id);
std::string EncodeShortChannelId(Blocks block, std::uint32_t tx,
                                 std::uint16_t output);

// Immutable channel multigraph. Mutating operations produce a new graph via
// ChannelGraph::Builder; instances are safe to share across threads.
class ChannelGraph {
 public:
  class Builder;

  ChannelGraph();

  std::size_t node_count() const { return data_->node_ids.size(); }
  std::size_t channel_count() const { return data_->channels.size(); }

  const std::string& node_id(NodeIndex n) const { return data_->node_ids[n]; }
  std::span<const std::string> node_ids() const { return data_->node_ids; }
  std::optional<NodeIndex> find_node(std::string_view id) const;
  // Throws GraphError when the node is unknown.
  NodeIndex node(std::string_view id) const;

  const Channel& channel(ChannelIndex c) const { return data_->channels[c]; }
  std::span<const Channel> channels() const { return data_->channels; }
  // 64-bit routing key of a channel (the packed short channel id when the id
  // is numeric, otherwise a stable hash of the id string).
  std::uint64_t channel_key(ChannelIndex c) const {
    return data_->channel_keys[c];
  }

  // Enabled directions leaving / entering a node.
  std::span<const DirectedEdge> out_edges(NodeIndex n) const;
  std::span<const DirectedEdge> in_edges(NodeIndex n) const;
  // Every channel touching the node, enabled or not.
  std::span<const ChannelIndex> incident_channels(NodeIndex n) const;

  // Highest funding height among all channels; the default "current height"
  // for channel ageing.
  Blocks max_height() const { return data_->max_height; }

  bool operator==(const ChannelGraph& other) const;

 private:
  struct Data {
    std::vector<std::string> node_ids;
    std::unordered_map<std::string, NodeIndex> index;
    std::vector<Channel> channels;
    std::vector<std::uint64_t> channel_keys;

    // CSR adjacency.
    std::vector<std::uint32_t> out_offsets;
    std::vector<DirectedEdge> out_edges;
    std::vector<std::uint32_t> in_offsets;
    std::vector<DirectedEdge> in_edges;
    std::vector<std::uint32_t> incident_offsets;
    std::vector<ChannelIndex> incident;

    Blocks max_height = 0;
  };
  explicit ChannelGraph(std::shared_ptr<const Data> data);

  std::shared_ptr<const Data> data_;
};

class ChannelGraph::Builder {
 public:
  Builder() = default;
  // Seeds the builder with every node and channel of `graph`.
  explicit Builder(const ChannelGraph& graph);

  // Adds a node if absent; returns its index either way.
  NodeIndex AddNode(std::string id);
  bool HasNode(std::string_view id) const;

  // Endpoints must already exist. Throws GraphError on invalid channels.
  ChannelIndex AddChannel(std::string id, std::string_view a,
                          std::string_view b, Msat capacity, Blocks height,
                          ChannelPolicy a_to_b, ChannelPolicy b_to_a);
  ChannelIndex AddChannel(Channel channel);

  std::size_t node_count() const { return node_ids_.size(); }
  std::size_t channel_count() const { return channels_.size(); }

  ChannelGraph Build() &&;

 private:
  std::vector<std::string> node_ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<Channel> channels_;
};

// One channel the attacker opens towards `peer`. The policy is applied to
// both directions of the new channel.
struct AttackLink {
  std::string peer;
  ChannelPolicy policy;
  Msat capacity = 0;
};

// Returns a copy of `graph` with `attacker` present and one new channel per
// link. New channels are funded at `funding_height` (defaults to the graph's
// max height, i.e. brand new channels). Throws GraphError for unknown peers.
ChannelGraph AddAttacker(const ChannelGraph& graph, std::string_view attacker,
                         std::span<const AttackLink> links,
                         std::optional<Blocks> funding_height = std::nullopt);

}  // namespace pcnhijack

#endif  // PCNHIJACK_GRAPH_H_

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

#include "pcnhijack/graph.h"

#include <algorithm>
#include <charconv>
#include <utility>

namespace pcnhijack {

namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t ChannelKey(std::string_view id) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), v);
  if (ec == std::errc() && ptr == id.data() + id.size()) return v;
  return Fnv1a(id);
}

template <typename Key>
void BuildCsr(std::size_t node_count, const std::vector<Key>& keys,
              std::vector<std::uint32_t>& offsets) {
  offsets.assign(node_count + 1, 0);
  for (NodeIndex k : keys) ++offsets[k + 1];
  for (std::size_t i = 0; i < node_count; ++i) offsets[i + 1] += offsets[i];
}

}  // namespace

std::optional<Blocks> DecodeShortChannelHeight(std::string_view id) {
  if (id.empty()) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), v);
  if (ec != std::errc() || ptr != id.data() + id.size()) return std::nullopt;
  return static_cast<Blocks>(v >> 40);
}

std::string EncodeShortChannelId(Blocks block, std::uint32_t tx,
                                 std::uint16_t output) {
  const std::uint64_t packed =
      (static_cast<std::uint64_t>(block & 0xFFFFFF) << 40) |
      (static_cast<std::uint64_t>(tx & 0xFFFFFF) << 16) | output;
  return std::to_string(packed);
}

ChannelGraph::ChannelGraph() : ChannelGraph(Builder().Build()) {}

ChannelGraph::ChannelGraph(std::shared_ptr<const Data> data)
    : data_(std::move(data)) {}

std::optional<NodeIndex> ChannelGraph::find_node(std::string_view id) const {
  auto it = data_->index.find(std::string(id));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

NodeIndex ChannelGraph::node(std::string_view id) const {
  auto n = find_node(id);
  if (!n) throw GraphError("unknown node '" + std::string(id) + "'");
  return *n;
}

std::span<const DirectedEdge> ChannelGraph::out_edges(NodeIndex n) const {
  return std::span<const DirectedEdge>(data_->out_edges)
      .subspan(data_->out_offsets[n],
               data_->out_offsets[n + 1] - data_->out_offsets[n]);
}

std::span<const DirectedEdge> ChannelGraph::in_edges(NodeIndex n) const {
  return std::span<const DirectedEdge>(data_->in_edges)
      .subspan(data_->in_offsets[n],
               data_->in_offsets[n + 1] - data_->in_offsets[n]);
}

std::span<const ChannelIndex> ChannelGraph::incident_channels(
    NodeIndex n) const {
  return std::span<const ChannelIndex>(data_->incident)
      .subspan(data_->incident_offsets[n],
               data_->incident_offsets[n + 1] - data_->incident_offsets[n]);
}

bool ChannelGraph::operator==(const ChannelGraph& other) const {
  return data_->node_ids == other.data_->node_ids &&
         data_->channels == other.data_->channels;
}

ChannelGraph::Builder::Builder(const ChannelGraph& graph)
    : node_ids_(graph.data_->node_ids),
      index_(graph.data_->index),
      channels_(graph.data_->channels) {}

NodeIndex ChannelGraph::Builder::AddNode(std::string id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  const auto n = static_cast<NodeIndex>(node_ids_.size());
  index_.emplace(id, n);
  node_ids_.push_back(std::move(id));
  return n;
}

bool ChannelGraph::Builder::HasNode(std::string_view id) const {
  return index_.contains(std::string(id));
}

ChannelIndex ChannelGraph::Builder::AddChannel(std::string id,
                                               std::string_view a,
                                               std::string_view b,
                                               Msat capacity, Blocks height,
                                               ChannelPolicy a_to_b,
                                               ChannelPolicy b_to_a) {
  auto ia = index_.find(std::string(a));
  auto ib = index_.find(std::string(b));
  if (ia == index_.end() || ib == index_.end()) {
    throw GraphError("channel " + id + " references unknown node " +
                     std::string(ia == index_.end() ? a : b));
  }
  return AddChannel(Channel{std::move(id), ia->second, ib->second, capacity,
                            height, a_to_b, b_to_a});
}

ChannelIndex ChannelGraph::Builder::AddChannel(Channel channel) {
  if (channel.a >= node_ids_.size() || channel.b >= node_ids_.size()) {
    throw GraphError("channel " + channel.id + " references unknown node");
  }
  if (channel.a == channel.b) {
    throw GraphError("channel " + channel.id + " is a self loop");
  }
  if (channel.capacity <= 0) {
    throw GraphError("channel " + channel.id + " has non-positive capacity");
  }
  for (const ChannelPolicy* p : {&channel.a_to_b, &channel.b_to_a}) {
    if (p->base_fee < 0 || p->prop_fee_ppm < 0 || p->delay < 0) {
      throw GraphError("channel " + channel.id + " has a negative policy field");
    }
  }
  channels_.push_back(std::move(channel));
  return static_cast<ChannelIndex>(channels_.size() - 1);
}

ChannelGraph ChannelGraph::Builder::Build() && {
  auto data = std::make_shared<Data>();
  data->node_ids = std::move(node_ids_);
  data->index = std::move(index_);
  data->channels = std::move(channels_);
  const std::size_t n = data->node_ids.size();

  data->channel_keys.reserve(data->channels.size());
  std::vector<NodeIndex> out_keys, in_keys, incident_keys;
  for (const Channel& c : data->channels) {
    data->channel_keys.push_back(ChannelKey(c.id));
    data->max_height = std::max(data->max_height, c.height);
    incident_keys.push_back(c.a);
    incident_keys.push_back(c.b);
    for (Direction d : {Direction::kAToB, Direction::kBToA}) {
      if (!c.policy(d).enabled) continue;
      out_keys.push_back(c.from(d));
      in_keys.push_back(c.to(d));
    }
  }
  BuildCsr(n, out_keys, data->out_offsets);
  BuildCsr(n, in_keys, data->in_offsets);
  BuildCsr(n, incident_keys, data->incident_offsets);
  data->out_edges.resize(out_keys.size());
  data->in_edges.resize(in_keys.size());
  data->incident.resize(incident_keys.size());

  std::vector<std::uint32_t> out_fill(data->out_offsets.begin(),
                                      data->out_offsets.end() - 1);
  std::vector<std::uint32_t> in_fill(data->in_offsets.begin(),
                                     data->in_offsets.end() - 1);
  std::vector<std::uint32_t> inc_fill(data->incident_offsets.begin(),
                                      data->incident_offsets.end() - 1);
  for (ChannelIndex ci = 0; ci < data->channels.size(); ++ci) {
    const Channel& c = data->channels[ci];
    data->incident[inc_fill[c.a]++] = ci;
    data->incident[inc_fill[c.b]++] = ci;
    for (Direction d : {Direction::kAToB, Direction::kBToA}) {
      if (!c.policy(d).enabled) continue;
      const DirectedEdge e{ci, d, c.from(d), c.to(d)};
      data->out_edges[out_fill[e.from]++] = e;
      data->in_edges[in_fill[e.to]++] = e;
    }
  }
  return ChannelGraph(std::move(data));
}

ChannelGraph AddAttacker(const ChannelGraph& graph, std::string_view attacker,
                         std::span<const AttackLink> links,
                         std::optional<Blocks> funding_height) {
  ChannelGraph::Builder builder(graph);
  for (const AttackLink& link : links) {
    if (!graph.find_node(link.peer) || link.peer == attacker) {
      throw GraphError("attack peer '" + link.peer + "' is not in the graph");
    }
  }
  builder.AddNode(std::string(attacker));
  const Blocks height = funding_height.value_or(graph.max_height());
  // Attack channel ids count down from the top tx slot of the funding block;
  // output 0xFFFF keeps them clear of real channels at that height.
  std::uint32_t tx = 0;
  if (auto existing = graph.find_node(attacker)) {
    tx = static_cast<std::uint32_t>(graph.incident_channels(*existing).size());
  }
  for (const AttackLink& link : links) {
    builder.AddChannel(EncodeShortChannelId(height, 0xFFFFFF - tx, 0xFFFF),
                       attacker, link.peer, link.capacity, height, link.policy,
                       link.policy);
    ++tx;
  }
  return std::move(builder).Build();
}

}  // namespace pcnhijack

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "pcnhijack/attack.h"

namespace pcnhijack {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Weight = DistanceOracle::Weight;

constexpr Weight kUnreachable{kInf, 0};

bool Less(const Weight& a, const Weight& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.hops < b.hops;
}

const Weight& Min(const Weight& a, const Weight& b) {
  return Less(b, a) ? b : a;
}

// The two smallest entries of a set, by (weight, hops, node).
struct TopTwo {
  struct Entry {
    Weight key;
    NodeIndex node;
  };
  Entry items[2];
  int size = 0;

  void Insert(Weight key, NodeIndex node) {
    if (!std::isfinite(key.weight)) return;
    const Entry e{key, node};
    const auto before = [](const Entry& a, const Entry& b) {
      if (Less(a.key, b.key)) return true;
      if (Less(b.key, a.key)) return false;
      return a.node < b.node;
    };
    if (size < 2) {
      items[size++] = e;
    } else if (before(e, items[1])) {
      items[1] = e;
    } else {
      return;
    }
    if (size == 2 && before(items[1], items[0])) std::swap(items[0], items[1]);
  }
};

}  // namespace

struct DistanceOracle::Impl {
  std::size_t n = 0;
  RouteLimits limits;
  std::vector<NodeIndex> sources, targets;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_index;
  std::vector<std::pair<NodeIndex, NodeIndex>> pair_nodes;
  std::vector<Weight> direct;
  std::vector<Weight> via;

  // dist[x * sources + si]: best route from sources[si] to node x.
  std::vector<double> dist;
  std::vector<int> dist_hops;

  // Per (target ti, node w), indexed ti * n + w: weight from the attacker
  // through w to the target, its hop count, and the cost of the channel
  // into the attacker when charged by an intermediate or by the sender.
  std::vector<double> exit_part;
  std::vector<int> exit_hops;
  std::vector<double> entry_relay;
  std::vector<double> entry_first;

  std::vector<NodeIndex> committed;
  std::vector<char> is_committed;
  std::vector<TopTwo> best_entry;        // per source
  std::vector<TopTwo> best_exit_relay;   // per target
  std::vector<TopTwo> best_exit_first;   // per target

  double Dist(NodeIndex x, std::uint32_t si) const {
    return dist[static_cast<std::size_t>(x) * sources.size() + si];
  }
  int DistHops(NodeIndex x, std::uint32_t si) const {
    return dist_hops[static_cast<std::size_t>(x) * sources.size() + si];
  }
  std::size_t Cell(std::uint32_t ti, NodeIndex w) const {
    return static_cast<std::size_t>(ti) * n + w;
  }

  Weight Path(std::size_t p, NodeIndex entry, NodeIndex exit) const {
    const auto [s, t] = pair_nodes[p];
    if (entry == exit || entry == t || exit == s) return kUnreachable;
    const auto [si, ti] = pair_index[p];
    const std::size_t cell = Cell(ti, exit);
    const double tail = exit_part[cell];
    if (!std::isfinite(tail)) return kUnreachable;
    double weight;
    int hops;
    if (entry == s) {
      weight = entry_first[cell];
      hops = 0;
    } else {
      const double head = Dist(entry, si);
      if (!std::isfinite(head)) return kUnreachable;
      weight = head + entry_relay[cell];
      hops = DistHops(entry, si);
    }
    weight += tail;
    hops += 1 + exit_hops[cell];
    if (hops > limits.max_hops || !std::isfinite(weight)) return kUnreachable;
    return {weight, hops};
  }

  Weight New(std::size_t p, NodeIndex c) const {
    if (committed.empty()) return kUnreachable;
    const auto [s, t] = pair_nodes[p];
    const auto [si, ti] = pair_index[p];
    Weight best = kUnreachable;
    // Candidate as the entry, a committed peer as the exit.
    if (c != t) {
      const TopTwo& exits = c == s ? best_exit_first[ti] : best_exit_relay[ti];
      for (int i = 0; i < exits.size; ++i) {
        best = Min(best, Path(p, c, exits.items[i].node));
      }
    }
    // A committed peer as the entry, the candidate as the exit.
    if (c != s) {
      if (is_committed[s]) best = Min(best, Path(p, s, c));
      const TopTwo& entries = best_entry[si];
      for (int i = 0; i < entries.size; ++i) {
        best = Min(best, Path(p, entries.items[i].node, c));
      }
    }
    return best;
  }
};

DistanceOracle::DistanceOracle(const ChannelGraph& base,
                               const RoutingPolicy& policy,
                               const PairSample& pairs,
                               const AttackConfig& config)
    : impl_(std::make_unique<Impl>()) {
  if (policy.randomized()) {
    throw std::invalid_argument("distance oracle needs a deterministic policy");
  }
  if (!config.channel_policy.enabled) {
    throw std::invalid_argument("attack channel policy must be enabled");
  }
  if (base.find_node(config.attacker_id)) {
    throw GraphError("attacker '" + config.attacker_id +
                     "' already exists in the graph");
  }
  Impl& m = *impl_;
  m.n = base.node_count();
  m.limits = config.route_options.limits;
  const Msat amount = pairs.amount;
  const Msat max_amount = amount + m.limits.MaxFee(amount);

  // The attacker linked to every node supplies the attack edges.
  std::vector<AttackLink> links;
  links.reserve(m.n);
  for (NodeIndex v = 0; v < m.n; ++v) {
    links.push_back({base.node_id(v), config.channel_policy,
                     config.CapacityFor(amount)});
  }
  const ChannelGraph star =
      AddAttacker(base, config.attacker_id, links, base.max_height());
  const NodeIndex attacker = star.node(config.attacker_id);
  std::vector<DirectedEdge> to_peer(m.n), from_peer(m.n);
  for (const DirectedEdge& e : star.out_edges(attacker)) to_peer[e.to] = e;
  for (const DirectedEdge& e : star.in_edges(attacker)) from_peer[e.from] = e;

  const Blocks height =
      config.route_options.current_height.value_or(base.max_height());
  const EdgeWeigher base_weigher(base, policy, height, 0,
                                 config.route_options.failure_memory,
                                 config.route_options.now_seconds);
  const EdgeWeigher star_weigher(star, policy, height, 0,
                                 config.route_options.failure_memory,
                                 config.route_options.now_seconds);

  std::unordered_map<NodeIndex, std::uint32_t> source_slot, target_slot;
  for (const auto& [s, t] : pairs.pairs) {
    if (s == t) throw std::invalid_argument("pair with source == target");
    if (source_slot.emplace(s, m.sources.size()).second) m.sources.push_back(s);
    if (target_slot.emplace(t, m.targets.size()).second) m.targets.push_back(t);
    m.pair_index.emplace_back(source_slot[s], target_slot[t]);
    m.pair_nodes.emplace_back(s, t);
  }
  const std::size_t ns = m.sources.size();
  const std::size_t nt = m.targets.size();
  m.dist.assign(m.n * ns, kInf);
  m.dist_hops.assign(m.n * ns, 0);
  m.exit_part.assign(nt * m.n, kInf);
  m.exit_hops.assign(nt * m.n, 0);
  m.entry_relay.assign(nt * m.n, kInf);
  m.entry_first.assign(nt * m.n, kInf);
  m.direct.assign(pairs.size(), kUnreachable);

  std::vector<std::vector<std::size_t>> pairs_by_target(nt);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    pairs_by_target[m.pair_index[p].second].push_back(p);
  }

  const ChannelPolicy& attack = config.channel_policy;
  for (NodeIndex x = 0; x < m.n; ++x) {
    const RoutesToTarget routes(base, base_weigher, x, amount, m.limits);
    for (std::uint32_t si = 0; si < ns; ++si) {
      if (m.sources[si] == x) continue;
      m.dist[x * ns + si] = routes.SourceWeight(m.sources[si]);
      m.dist_hops[x * ns + si] = routes.SourceHops(m.sources[si]);
    }
    auto slot = target_slot.find(x);
    if (slot == target_slot.end()) continue;
    const std::uint32_t ti = slot->second;
    for (std::size_t p : pairs_by_target[ti]) {
      const NodeIndex s = m.pair_nodes[p].first;
      m.direct[p] = {routes.SourceWeight(s), routes.SourceHops(s)};
    }
    for (NodeIndex w = 0; w < m.n; ++w) {
      const double tail = routes.IntermediateWeight(w);
      if (!std::isfinite(tail)) continue;
      const Msat at_peer = routes.IntermediateAmount(w);
      const Msat attacker_fee = ChannelFee(attack, at_peer);
      const Msat at_attacker = at_peer + attacker_fee;
      if (at_attacker > max_amount) continue;
      const std::size_t cell = m.Cell(ti, w);
      m.exit_part[cell] =
          star_weigher.Cost(to_peer[w], at_peer, attacker_fee) + tail;
      m.exit_hops[cell] = 1 + routes.IntermediateHops(w);
      m.entry_first[cell] = star_weigher.Cost(from_peer[w], at_attacker, 0);
      const Msat relay_fee = ChannelFee(attack, at_attacker);
      if (at_attacker + relay_fee <= max_amount) {
        m.entry_relay[cell] =
            star_weigher.Cost(from_peer[w], at_attacker, relay_fee);
      }
    }
  }

  m.via.assign(pairs.size(), kUnreachable);
  m.is_committed.assign(m.n, 0);
  m.best_entry.assign(ns, TopTwo{});
  m.best_exit_relay.assign(nt, TopTwo{});
  m.best_exit_first.assign(nt, TopTwo{});
}

DistanceOracle::~DistanceOracle() = default;
DistanceOracle::DistanceOracle(DistanceOracle&&) noexcept = default;
DistanceOracle& DistanceOracle::operator=(DistanceOracle&&) noexcept = default;

std::size_t DistanceOracle::pair_count() const {
  return impl_->pair_nodes.size();
}
std::size_t DistanceOracle::node_count() const { return impl_->n; }
std::span<const NodeIndex> DistanceOracle::committed() const {
  return impl_->committed;
}
bool DistanceOracle::IsCommitted(NodeIndex v) const {
  return impl_->is_committed[v] != 0;
}

Weight DistanceOracle::Direct(std::size_t pair) const {
  return impl_->direct[pair];
}
bool DistanceOracle::Routable(std::size_t pair) const {
  return std::isfinite(impl_->direct[pair].weight);
}
Weight DistanceOracle::ViaCommitted(std::size_t pair) const {
  return impl_->via[pair];
}
Weight DistanceOracle::ViaNew(std::size_t pair, NodeIndex candidate) const {
  if (impl_->is_committed[candidate]) return kUnreachable;
  return impl_->New(pair, candidate);
}
Weight DistanceOracle::ViaWith(std::size_t pair, NodeIndex candidate) const {
  return Min(impl_->via[pair], ViaNew(pair, candidate));
}
Weight DistanceOracle::ViaPath(std::size_t pair, NodeIndex entry,
                               NodeIndex exit) const {
  return impl_->Path(pair, entry, exit);
}

bool DistanceOracle::Captures(const Weight& via, const Weight& direct) {
  if (!std::isfinite(via.weight)) return false;
  return via.weight < direct.weight ||
         (via.weight == direct.weight && via.hops < direct.hops);
}

std::vector<char> DistanceOracle::AttackedPairs() const {
  std::vector<char> out(pair_count());
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = Captures(impl_->via[p], impl_->direct[p]) ? 1 : 0;
  }
  return out;
}

void DistanceOracle::Commit(NodeIndex peer) {
  Impl& m = *impl_;
  if (peer >= m.n) throw std::out_of_range("oracle peer out of range");
  if (m.is_committed[peer]) return;
  for (std::size_t p = 0; p < m.pair_nodes.size(); ++p) {
    m.via[p] = Min(m.via[p], m.New(p, peer));
  }
  m.committed.push_back(peer);
  m.is_committed[peer] = 1;
  for (std::uint32_t si = 0; si < m.sources.size(); ++si) {
    if (m.sources[si] == peer) continue;
    m.best_entry[si].Insert({m.Dist(peer, si), m.DistHops(peer, si)}, peer);
  }
  for (std::uint32_t ti = 0; ti < m.targets.size(); ++ti) {
    const std::size_t cell = m.Cell(ti, peer);
    const int hops = m.exit_hops[cell];
    m.best_exit_relay[ti].Insert(
        {m.entry_relay[cell] + m.exit_part[cell], hops}, peer);
    m.best_exit_first[ti].Insert(
        {m.entry_first[cell] + m.exit_part[cell], hops}, peer);
  }
}

NextPeer FindNextNaive(const DistanceOracle& oracle, bool skip_unroutable) {
  NextPeer best;
  for (NodeIndex c = 0; c < oracle.node_count(); ++c) {
    if (oracle.IsCommitted(c)) continue;
    std::size_t count = 0;
    for (std::size_t p = 0; p < oracle.pair_count(); ++p) {
      if (skip_unroutable && !oracle.Routable(p)) continue;
      if (DistanceOracle::Captures(oracle.ViaWith(p, c), oracle.Direct(p))) {
        ++count;
      }
    }
    if (best.peer == kNoNode || count > best.count) best = {c, count};
  }
  return best;
}

NextPeer FindNextOptimized(const DistanceOracle& oracle,
                           std::span<const char> already_attacked) {
  if (already_attacked.size() != oracle.pair_count()) {
    throw std::invalid_argument("attacked-pair mask has the wrong size");
  }
  std::vector<std::size_t> open;
  for (std::size_t p = 0; p < oracle.pair_count(); ++p) {
    if (!already_attacked[p] && oracle.Routable(p)) open.push_back(p);
  }
  NextPeer best;
  for (NodeIndex c = 0; c < oracle.node_count(); ++c) {
    if (oracle.IsCommitted(c)) continue;
    std::size_t count = 0;
    for (std::size_t p : open) {
      if (DistanceOracle::Captures(oracle.ViaNew(p, c), oracle.Direct(p))) {
        ++count;
      }
    }
    if (best.peer == kNoNode || count > best.count) best = {c, count};
  }
  return best;
}

NextPair FindBestPair(const DistanceOracle& oracle,
                      std::span<const NodeIndex> candidates) {
  const std::vector<char> attacked = oracle.AttackedPairs();
  std::vector<std::size_t> open;
  for (std::size_t p = 0; p < oracle.pair_count(); ++p) {
    if (!attacked[p] && oracle.Routable(p)) open.push_back(p);
  }
  std::vector<NodeIndex> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  NextPair best;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const NodeIndex a = sorted[i], b = sorted[j];
      if (oracle.IsCommitted(a) || oracle.IsCommitted(b)) continue;
      std::size_t count = 0;
      for (std::size_t p : open) {
        const Weight via =
            Min(oracle.ViaPath(p, a, b), oracle.ViaPath(p, b, a));
        if (DistanceOracle::Captures(via, oracle.Direct(p))) ++count;
      }
      if (best.first == kNoNode || count > best.count) best = {a, b, count};
    }
  }
  return best;
}

}  // namespace pcnhijack

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
#include <functional>

#include "label_search.h"

namespace pcnhijack::internal {
namespace {

int CompareIds(const ChannelGraph& graph, ChannelIndex a, ChannelIndex b) {
  if (a == b) return 0;
  const int c = graph.channel(a).id.compare(graph.channel(b).id);
  if (c != 0) return c;
  return a < b ? -1 : 1;
}

}  // namespace

LabelSearch::LabelSearch(const ChannelGraph& graph, const EdgeWeigher& weigher,
                         const RouteLimits& limits, Msat payment_amount)
    : graph_(graph),
      weigher_(weigher),
      limits_(limits),
      payment_amount_(payment_amount),
      max_amount_(payment_amount + limits.MaxFee(payment_amount)),
      hop_slack_(limits.max_hops / 2),
      check_cycles_(weigher.AmountGain(payment_amount, payment_amount + 1) > 0),
      node_labels_(graph.node_count()) {}

void LabelSearch::Reset() {
  for (NodeIndex n : touched_) node_labels_[n].clear();
  touched_.clear();
  labels_.clear();
  heap_.clear();
  suffix_ = nullptr;
}

int LabelSearch::CompareSuffix(std::uint32_t a, std::uint32_t b) const {
  while (a != kNoLabel && b != kNoLabel) {
    if (a == b) return 0;
    const Label& la = labels_[a];
    const Label& lb = labels_[b];
    if (la.parent == kNoLabel || lb.parent == kNoLabel) {
      // Seed reached on at least one side; shorter chain first.
      if (la.parent == kNoLabel && lb.parent == kNoLabel) return 0;
      return la.parent == kNoLabel ? -1 : 1;
    }
    const int c = CompareIds(graph_, la.via.channel, lb.via.channel);
    if (c != 0) return c;
    a = la.parent;
    b = lb.parent;
  }
  return 0;
}

bool LabelSearch::Dominates(const Label& a, std::uint32_t a_id,
                            const Label& b, std::uint32_t b_id) const {
  switch (Compare(a, b)) {
    case Order::kBetter:
      return true;
    case Order::kTied:
      return CompareSuffix(a_id, b_id) <= 0;
    default:
      return false;
  }
}

LabelSearch::Order LabelSearch::Compare(const Label& a, const Label& b) const {
  if (a.amount > b.amount) return Order::kIncomparable;
  // Room for b to catch up upstream when its larger amount lowers later
  // costs. Only the hops that charge a fee count.
  const int fee_hops = std::max(0, limits_.max_hops - b.hops - 1);
  const double slack =
      a.amount < b.amount && fee_hops > 0
          ? fee_hops * weigher_.AmountGain(a.amount, b.amount)
          : 0.0;
  if (slack > 0) {
    if (a.weight + slack > b.weight) return Order::kIncomparable;
    const bool hops_free = a.hops <= hop_slack_ && b.hops <= hop_slack_;
    if (!hops_free && a.hops > b.hops) return Order::kIncomparable;
    return Order::kBetter;
  }
  if (a.weight > b.weight) return Order::kIncomparable;
  // Hop counts only matter once the hop limit can bind.
  const bool hops_free = a.hops <= hop_slack_ && b.hops <= hop_slack_;
  if (!hops_free && a.hops > b.hops) return Order::kIncomparable;
  if (a.weight < b.weight || a.amount < b.amount) return Order::kBetter;
  if (a.hops != b.hops) {
    return a.hops < b.hops ? Order::kBetter : Order::kIncomparable;
  }
  return Order::kTied;
}

bool LabelSearch::Insert(const Label& label) {
  auto& list = node_labels_[label.node];
  auto id = kNoLabel;
  for (std::uint32_t other : list) {
    const Order order = Compare(labels_[other], label);
    if (order == Order::kIncomparable) continue;
    if (order == Order::kBetter) return false;
    // Equal in every dimension: the channel-id suffix decides.
    if (id == kNoLabel) {
      id = static_cast<std::uint32_t>(labels_.size());
      labels_.push_back(label);
    }
    if (CompareSuffix(other, id) <= 0) {
      labels_.pop_back();
      return false;
    }
  }
  if (id == kNoLabel) {
    id = static_cast<std::uint32_t>(labels_.size());
    labels_.push_back(label);
  }
  if (list.empty()) touched_.push_back(label.node);
  std::erase_if(list, [&](std::uint32_t other) {
    if (Dominates(labels_[id], id, labels_[other], other)) {
      labels_[other].alive = false;
      return true;
    }
    return false;
  });
  list.push_back(id);
  return true;
}

bool LabelSearch::OnChain(std::uint32_t label, NodeIndex node) const {
  for (std::uint32_t p = label; p != kNoLabel; p = labels_[p].parent) {
    if (labels_[p].node == node) return true;
  }
  return false;
}

void LabelSearch::Push(double weight, int hops, std::uint32_t label) {
  heap_.push_back({weight, hops, label});
  std::push_heap(heap_.begin(), heap_.end(), std::greater<QueueEntry>());
}

LabelSearch::QueueEntry LabelSearch::Pop() {
  std::pop_heap(heap_.begin(), heap_.end(), std::greater<QueueEntry>());
  const QueueEntry top = heap_.back();
  heap_.pop_back();
  return top;
}

bool LabelSearch::CompletionLess(const Completion& a,
                                 const Completion& b) const {
  if (!b.valid()) return a.valid();
  if (!a.valid()) return false;
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.hops != b.hops) return a.hops < b.hops;
  const int c = CompareIds(graph_, a.first.channel, b.first.channel);
  if (c != 0) return c < 0;
  return CompareSuffix(a.label, b.label) < 0;
}

Completion LabelSearch::RunToSource(NodeIndex source, const Seed& seed,
                                    const Bans& bans,
                                    const std::vector<DirectedEdge>& suffix) {
  Reset();
  suffix_ = &suffix;
  seed_node_ = seed.node;
  Completion best;

  Insert(Label{seed.weight, seed.amount, seed.hops, seed.node, kNoLabel,
               DirectedEdge{}, true});
  Push(seed.weight, seed.hops, 0);

  while (!heap_.empty()) {
    const QueueEntry top = Pop();
    if (top.weight > best.weight) break;
    if (!labels_[top.label].alive) continue;
    const Label current = labels_[top.label];
    for (const DirectedEdge& e : graph_.in_edges(current.node)) {
      const NodeIndex u = e.from;
      if (u == seed.node || bans.node(u) || bans.edge(e)) continue;
      if (u == source) {
        if (current.hops + 1 > limits_.max_hops) continue;
        const double cost = weigher_.Cost(e, current.amount, 0);
        if (!std::isfinite(cost)) continue;
        Completion c{current.weight + cost, current.hops + 1, e, top.label};
        if (CompletionLess(c, best)) best = c;
        continue;
      }
      if (current.hops + 2 > limits_.max_hops) continue;
      if (check_cycles_ && OnChain(top.label, u)) continue;
      const Msat fee = ChannelFee(graph_.channel(e.channel).policy(e.dir),
                                  current.amount);
      const Msat amount = current.amount + fee;
      if (amount > max_amount_) continue;
      const double cost = weigher_.Cost(e, current.amount, fee);
      if (!std::isfinite(cost)) continue;
      const double weight = current.weight + cost;
      if (weight > best.weight) continue;
      if (Insert(Label{weight, amount, current.hops + 1, u, top.label, e,
                       true})) {
        Push(weight, current.hops + 1,
             static_cast<std::uint32_t>(labels_.size() - 1));
      }
    }
  }
  return best;
}

void LabelSearch::RunAll(const Seed& seed) {
  Reset();
  seed_node_ = seed.node;
  Insert(Label{seed.weight, seed.amount, seed.hops, seed.node, kNoLabel,
               DirectedEdge{}, true});
  Push(seed.weight, seed.hops, 0);
  while (!heap_.empty()) {
    const QueueEntry top = Pop();
    if (!labels_[top.label].alive) continue;
    const Label current = labels_[top.label];
    if (current.hops + 2 > limits_.max_hops) continue;
    for (const DirectedEdge& e : graph_.in_edges(current.node)) {
      const NodeIndex u = e.from;
      if (u == seed.node) continue;
      if (check_cycles_ && OnChain(top.label, u)) continue;
      const Msat fee = ChannelFee(graph_.channel(e.channel).policy(e.dir),
                                  current.amount);
      const Msat amount = current.amount + fee;
      if (amount > max_amount_) continue;
      const double cost = weigher_.Cost(e, current.amount, fee);
      if (!std::isfinite(cost)) continue;
      const double weight = current.weight + cost;
      if (Insert(Label{weight, amount, current.hops + 1, u, top.label, e,
                       true})) {
        Push(weight, current.hops + 1,
             static_cast<std::uint32_t>(labels_.size() - 1));
      }
    }
  }
}

Completion LabelSearch::CompleteFrom(NodeIndex source) const {
  Completion best;
  if (source == seed_node_) return best;
  for (const DirectedEdge& e : graph_.out_edges(source)) {
    for (std::uint32_t id : node_labels_[e.to]) {
      const Label& l = labels_[id];
      if (l.hops + 1 > limits_.max_hops) continue;
      const double cost = weigher_.Cost(e, l.amount, 0);
      if (!std::isfinite(cost)) continue;
      Completion c{l.weight + cost, l.hops + 1, e, id};
      if (!CompletionLess(c, best)) continue;
      // Reject routes that revisit the source further down.
      bool cyclic = false;
      for (std::uint32_t p = id; p != kNoLabel; p = labels_[p].parent) {
        if (labels_[p].node == source) {
          cyclic = true;
          break;
        }
      }
      if (!cyclic) best = c;
    }
  }
  return best;
}

std::uint32_t LabelSearch::BestLabel(NodeIndex node) const {
  std::uint32_t best = kNoLabel;
  for (std::uint32_t id : node_labels_[node]) {
    if (best == kNoLabel) {
      best = id;
      continue;
    }
    const Label& a = labels_[id];
    const Label& b = labels_[best];
    if (a.weight < b.weight ||
        (a.weight == b.weight &&
         (a.hops < b.hops ||
          (a.hops == b.hops && CompareSuffix(id, best) < 0)))) {
      best = id;
    }
  }
  return best;
}

std::vector<DirectedEdge> LabelSearch::PathEdges(const Completion& c) const {
  std::vector<DirectedEdge> edges;
  if (!c.valid()) return edges;
  edges.push_back(c.first);
  for (std::uint32_t p = c.label; labels_[p].parent != kNoLabel;
       p = labels_[p].parent) {
    edges.push_back(labels_[p].via);
  }
  return edges;
}

}  // namespace pcnhijack::internal

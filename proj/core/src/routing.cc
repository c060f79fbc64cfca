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

#include "pcnhijack/routing.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "label_search.h"

namespace pcnhijack {
namespace {

using internal::Bans;
using internal::Completion;
using internal::LabelSearch;
using internal::Seed;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<DirectedEdge> EdgesOf(const Route& route) {
  std::vector<DirectedEdge> edges;
  edges.reserve(route.hops.size());
  for (const Hop& h : route.hops) {
    edges.push_back({h.channel, h.dir, h.from, h.to});
  }
  return edges;
}

// Ordering of finished routes: weight, hop count, channel-id sequence.
bool RouteLess(const ChannelGraph& graph, const Route& a, const Route& b) {
  if (a.total_weight != b.total_weight) return a.total_weight < b.total_weight;
  if (a.hops.size() != b.hops.size()) return a.hops.size() < b.hops.size();
  for (std::size_t i = 0; i < a.hops.size(); ++i) {
    if (a.hops[i].channel == b.hops[i].channel) continue;
    const int c = graph.channel(a.hops[i].channel)
                      .id.compare(graph.channel(b.hops[i].channel).id);
    if (c != 0) return c < 0;
    return a.hops[i].channel < b.hops[i].channel;
  }
  return false;
}

bool SamePath(const Route& a, const Route& b) {
  if (a.hops.size() != b.hops.size()) return false;
  for (std::size_t i = 0; i < a.hops.size(); ++i) {
    if (a.hops[i].channel != b.hops[i].channel || a.hops[i].dir != b.hops[i].dir)
      return false;
  }
  return true;
}

bool Admissible(const Route& route, const RouteLimits& limits) {
  return static_cast<int>(route.hops.size()) <= limits.max_hops &&
         route.total_fee <= limits.MaxFee(route.amount) &&
         std::isfinite(route.total_weight);
}

void CheckEndpoints(const ChannelGraph& graph, NodeIndex source,
                    NodeIndex target, Msat amount) {
  if (source >= graph.node_count() || target >= graph.node_count()) {
    throw std::invalid_argument("route endpoint out of range");
  }
  if (source == target) {
    throw std::invalid_argument("route source equals target");
  }
  if (amount <= 0) throw std::invalid_argument("route amount must be positive");
}

}  // namespace

bool Route::HasInteriorNode(NodeIndex n) const {
  for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
    if (hops[i].to == n) return true;
  }
  return false;
}

bool Route::UsesChannel(ChannelIndex c) const {
  return std::any_of(hops.begin(), hops.end(),
                     [c](const Hop& h) { return h.channel == c; });
}

std::vector<std::string> Route::ChannelIds(const ChannelGraph& graph) const {
  std::vector<std::string> ids;
  ids.reserve(hops.size());
  for (const Hop& h : hops) ids.push_back(graph.channel(h.channel).id);
  return ids;
}

Route EvaluatePath(const ChannelGraph& graph, const EdgeWeigher& weigher,
                   Msat amount, std::span<const DirectedEdge> edges) {
  if (edges.empty()) throw std::invalid_argument("empty path");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i].to != edges[i + 1].from) {
      throw std::invalid_argument("path edges do not chain");
    }
  }
  Route route;
  route.source = edges.front().from;
  route.target = edges.back().to;
  route.amount = amount;
  route.hops.resize(edges.size());
  Msat carried = amount;
  double weight = 0;
  for (std::size_t i = edges.size(); i-- > 0;) {
    const DirectedEdge& e = edges[i];
    const ChannelPolicy& policy = graph.channel(e.channel).policy(e.dir);
    const Msat fee = i == 0 ? 0 : ChannelFee(policy, carried);
    const double w = weigher.Cost(e, carried, fee);
    route.hops[i] = Hop{e.channel, e.dir, e.from, e.to, carried, fee, w};
    weight += w;
    route.total_fee += fee;
    if (i > 0) route.total_delay += policy.delay;
    carried += fee;
  }
  route.total_weight = weight;
  return route;
}

std::optional<Route> FindBestRoute(const ChannelGraph& graph,
                                   const EdgeWeigher& weigher,
                                   NodeIndex source, NodeIndex target,
                                   Msat amount, const RouteLimits& limits) {
  CheckEndpoints(graph, source, target, amount);
  LabelSearch search(graph, weigher, limits, amount);
  const Completion c =
      search.RunToSource(source, Seed{target, 0, amount, 0}, Bans{});
  if (!c.valid()) return std::nullopt;
  const auto edges = search.PathEdges(c);
  return EvaluatePath(graph, weigher, amount, edges);
}

std::vector<Route> KShortestRoutes(const ChannelGraph& graph,
                                   const EdgeWeigher& weigher,
                                   NodeIndex source, NodeIndex target,
                                   Msat amount, int k,
                                   const RouteLimits& limits) {
  CheckEndpoints(graph, source, target, amount);
  std::vector<Route> found;
  if (k <= 0) return found;
  LabelSearch search(graph, weigher, limits, amount);
  {
    const Completion c =
        search.RunToSource(source, Seed{target, 0, amount, 0}, Bans{});
    if (!c.valid()) return found;
    found.push_back(EvaluatePath(graph, weigher, amount, search.PathEdges(c)));
  }
  std::vector<Route> candidates;
  while (static_cast<int>(found.size()) < k) {
    const Route& last = found.back();
    const std::vector<DirectedEdge> last_edges = EdgesOf(last);
    const std::size_t length = last_edges.size();
    // The fixed part is the tail last_edges[j..); the spur node is the head
    // of edge j - 1, reached by a fresh prefix from the source.
    for (std::size_t j = length; j >= 1; --j) {
      const NodeIndex spur = last_edges[j - 1].to;
      std::vector<DirectedEdge> suffix(last_edges.begin() + j,
                                       last_edges.end());
      Bans bans;
      bans.nodes.assign(graph.node_count(), 0);
      for (const DirectedEdge& e : suffix) bans.nodes[e.to] = 1;
      for (const Route& r : found) {
        if (r.hops.size() < suffix.size() + 1) continue;
        const std::size_t offset = r.hops.size() - suffix.size();
        bool same = true;
        for (std::size_t i = 0; i < suffix.size() && same; ++i) {
          const Hop& h = r.hops[offset + i];
          same = h.channel == suffix[i].channel && h.dir == suffix[i].dir;
        }
        if (!same) continue;
        const Hop& entry = r.hops[offset - 1];
        bans.edges.insert({entry.channel, entry.dir});
      }
      double seed_weight = 0;
      for (std::size_t i = length; i-- > j;) seed_weight += last.hops[i].weight;
      const Seed seed{spur, seed_weight, last.hops[j - 1].forwarded_amount,
                      static_cast<int>(length - j)};
      const Completion c = search.RunToSource(source, seed, bans, suffix);
      if (!c.valid()) continue;
      std::vector<DirectedEdge> path = search.PathEdges(c);
      path.insert(path.end(), suffix.begin(), suffix.end());
      Route candidate = EvaluatePath(graph, weigher, amount, path);
      if (!Admissible(candidate, limits)) continue;
      const auto same_as = [&](const Route& r) { return SamePath(r, candidate); };
      if (std::any_of(found.begin(), found.end(), same_as) ||
          std::any_of(candidates.begin(), candidates.end(), same_as)) {
        continue;
      }
      candidates.push_back(std::move(candidate));
    }
    if (candidates.empty()) break;
    auto best = std::min_element(
        candidates.begin(), candidates.end(),
        [&](const Route& a, const Route& b) { return RouteLess(graph, a, b); });
    found.push_back(std::move(*best));
    candidates.erase(best);
  }
  return found;
}

std::optional<Route> FindRoute(const ChannelGraph& graph, NodeIndex source,
                               NodeIndex target, Msat amount,
                               const RoutingPolicy& policy, Rng& rng,
                               const RouteOptions& options) {
  CheckEndpoints(graph, source, target, amount);
  policy.Validate();
  const Blocks height = options.current_height.value_or(graph.max_height());
  const std::uint64_t salt = rng();
  const EdgeWeigher weigher(graph, policy, height, salt,
                            options.failure_memory, options.now_seconds);
  if (policy.kind() == PolicyKind::kEclair) {
    const int top_k = std::get<EclairParams>(policy.params).top_k;
    if (top_k > 1) {
      std::vector<Route> routes = KShortestRoutes(graph, weigher, source,
                                                  target, amount, top_k,
                                                  options.limits);
      if (routes.empty()) return std::nullopt;
      return std::move(routes[UniformIndex(rng, routes.size())]);
    }
  }
  return FindBestRoute(graph, weigher, source, target, amount, options.limits);
}

struct RoutesToTarget::Impl {
  Impl(const ChannelGraph& g, const EdgeWeigher& w, NodeIndex t, Msat a,
       const RouteLimits& limits)
      : graph(g), weigher(w), target(t), amount(a), search(g, w, limits, a) {}

  const ChannelGraph& graph;
  const EdgeWeigher& weigher;
  NodeIndex target;
  Msat amount;
  LabelSearch search;
  std::vector<Completion> completions;
  std::vector<std::uint32_t> best_labels;
};

RoutesToTarget::RoutesToTarget(const ChannelGraph& graph,
                               const EdgeWeigher& weigher, NodeIndex target,
                               Msat amount, const RouteLimits& limits) {
  if (target >= graph.node_count()) {
    throw std::invalid_argument("route endpoint out of range");
  }
  if (amount <= 0) throw std::invalid_argument("route amount must be positive");
  impl_ = std::make_unique<Impl>(graph, weigher, target, amount, limits);
  impl_->search.RunAll(Seed{target, 0, amount, 0});
  const std::size_t n = graph.node_count();
  impl_->completions.resize(n);
  impl_->best_labels.resize(n);
  for (NodeIndex v = 0; v < n; ++v) {
    impl_->completions[v] = impl_->search.CompleteFrom(v);
    impl_->best_labels[v] = impl_->search.BestLabel(v);
  }
}

RoutesToTarget::~RoutesToTarget() = default;
RoutesToTarget::RoutesToTarget(RoutesToTarget&&) noexcept = default;
RoutesToTarget& RoutesToTarget::operator=(RoutesToTarget&&) noexcept = default;

NodeIndex RoutesToTarget::target() const { return impl_->target; }

double RoutesToTarget::SourceWeight(NodeIndex source) const {
  const Completion& c = impl_->completions[source];
  return c.valid() ? c.weight : kInf;
}

int RoutesToTarget::SourceHops(NodeIndex source) const {
  const Completion& c = impl_->completions[source];
  return c.valid() ? c.hops : 0;
}

std::optional<Route> RoutesToTarget::RouteFrom(NodeIndex source) const {
  const Completion& c = impl_->completions[source];
  if (!c.valid()) return std::nullopt;
  return EvaluatePath(impl_->graph, impl_->weigher, impl_->amount,
                      impl_->search.PathEdges(c));
}

double RoutesToTarget::IntermediateWeight(NodeIndex node) const {
  const std::uint32_t id = impl_->best_labels[node];
  return id == internal::kNoLabel ? kInf : impl_->search.label(id).weight;
}

Msat RoutesToTarget::IntermediateAmount(NodeIndex node) const {
  const std::uint32_t id = impl_->best_labels[node];
  return id == internal::kNoLabel ? 0 : impl_->search.label(id).amount;
}

int RoutesToTarget::IntermediateHops(NodeIndex node) const {
  const std::uint32_t id = impl_->best_labels[node];
  return id == internal::kNoLabel ? 0 : impl_->search.label(id).hops;
}

}  // namespace pcnhijack

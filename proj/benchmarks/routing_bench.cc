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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "pcnhijack/analysis.h"
#include "pcnhijack/routing.h"
#include "pcnhijack/synthetic.h"
#include "pcnhijack/weights.h"

namespace pcnhijack {
namespace {

ChannelGraph Graph(std::int64_t nodes) {
  SyntheticSpec spec;
  spec.node_count = static_cast<std::size_t>(nodes);
  spec.attachment = 4;
  spec.seed = 7;
  return GenerateSynthetic(spec);
}

RoutingPolicy PolicyAt(std::int64_t index) {
  switch (index) {
    case 0:
      return RoutingPolicy::Lnd().DeterministicCore();
    case 1:
      return RoutingPolicy::CLightning().DeterministicCore();
    case 2:
      return RoutingPolicy::Eclair().DeterministicCore();
    default:
      return RoutingPolicy::Suggested().DeterministicCore();
  }
}

// range(0): node count, range(1): policy index.
void BM_FindBestRoute(benchmark::State& state) {
  const ChannelGraph g = Graph(state.range(0));
  const RoutingPolicy policy = PolicyAt(state.range(1));
  const EdgeWeigher weigher(g, policy, g.max_height(), 0);
  const auto n = static_cast<NodeIndex>(g.node_count());
  NodeIndex source = 0;
  for (auto _ : state) {
    source = (source + 37) % n;
    const NodeIndex target = (source + n / 2) % n;
    benchmark::DoNotOptimize(
        FindBestRoute(g, weigher, source, target, 1'000'000));
  }
  state.SetLabel(std::string(policy.name()));
}
BENCHMARK(BM_FindBestRoute)
    ->ArgsProduct({{1000, 4000}, {0, 1, 2, 3}})
    ->Unit(benchmark::kMicrosecond);

void BM_RoutesToTarget(benchmark::State& state) {
  const ChannelGraph g = Graph(state.range(0));
  const RoutingPolicy policy = PolicyAt(state.range(1));
  const EdgeWeigher weigher(g, policy, g.max_height(), 0);
  NodeIndex target = 0;
  for (auto _ : state) {
    target = (target + 11) % static_cast<NodeIndex>(g.node_count());
    RoutesToTarget routes(g, weigher, target, 1'000'000);
    benchmark::DoNotOptimize(routes.SourceWeight(0));
  }
  state.SetLabel(std::string(policy.name()));
}
BENCHMARK(BM_RoutesToTarget)
    ->ArgsProduct({{1000, 4000}, {0, 1, 2, 3}})
    ->Unit(benchmark::kMillisecond);

void BM_KShortestRoutes(benchmark::State& state) {
  const ChannelGraph g = Graph(1000);
  const RoutingPolicy policy = RoutingPolicy::Eclair().DeterministicCore();
  const EdgeWeigher weigher(g, policy, g.max_height(), 0);
  NodeIndex source = 0;
  for (auto _ : state) {
    source = (source + 37) % 1000;
    benchmark::DoNotOptimize(KShortestRoutes(
        g, weigher, source, (source + 500) % 1000, 1'000'000,
        static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_KShortestRoutes)->Arg(1)->Arg(3)->Arg(10)->Unit(
    benchmark::kMicrosecond);

void BM_RoutePairs(benchmark::State& state) {
  const ChannelGraph g = Graph(1000);
  const RoutingPolicy policy = RoutingPolicy::CLightning();
  const PairSample pairs = PairSample::Sample(
      g, 1'000'000, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(RoutePairs(g, policy, pairs, 5));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RoutePairs)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pcnhijack

BENCHMARK_MAIN();

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
#include <numeric>
#include <set>

#include "gtest/gtest.h"
#include "pcnhijack/analysis.h"
#include "pcnhijack/synthetic.h"
#include "support/oracles.h"

namespace pcnhijack {
namespace {

using testing::DeterministicPolicies;
using testing::LoadFixture;
using testing::RandomSmallGraph;

std::vector<NodeIndex> NodesWithPrefix(const ChannelGraph& g, char prefix) {
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (g.node_id(v)[0] == prefix) out.push_back(v);
  }
  return out;
}

ChannelGraph Star(int leaves) {
  ChannelGraph::Builder b;
  b.AddNode("hub");
  for (int i = 0; i < leaves; ++i) {
    b.AddNode("leaf" + std::to_string(i));
    b.AddChannel(std::to_string(i + 1), "hub", "leaf" + std::to_string(i),
                 1'000'000'000, 0, {1000, 1, 40, true}, {1000, 1, 40, true});
  }
  return std::move(b).Build();
}

TEST(PairSampleTest, AllAndSample) {
  const ChannelGraph g = LoadFixture("mainnet_style.json");
  const PairSample all = PairSample::All(LoadFixture("bridge.json"), 1000);
  EXPECT_EQ(all.size(), 9u * 8u);
  const PairSample a = PairSample::Sample(g, 1000, 500, 4);
  const PairSample b = PairSample::Sample(g, 1000, 500, 4);
  EXPECT_EQ(a.pairs, b.pairs);
  EXPECT_EQ(a.size(), 500u);
  std::set<std::pair<NodeIndex, NodeIndex>> distinct(a.pairs.begin(),
                                                     a.pairs.end());
  EXPECT_EQ(distinct.size(), 500u);
  for (const auto& [s, t] : a.pairs) EXPECT_NE(s, t);
  EXPECT_NE(PairSample::Sample(g, 1000, 500, 5).pairs, a.pairs);
  EXPECT_EQ(PairSample::Sample(LoadFixture("two_node.json"), 1000, 50, 1).size(),
            2u);
}

TEST(CentralityTest, CutVertexCarriesCrossTraffic) {
  const ChannelGraph g = LoadFixture("bridge.json");
  const auto left = NodesWithPrefix(g, 'l');
  const auto right = NodesWithPrefix(g, 'r');
  const PairSample cross = PairSample::Between(left, right, 1'000'000);
  for (const RoutingPolicy& policy :
       {RoutingPolicy::Lnd(), RoutingPolicy::CLightning(),
        RoutingPolicy::Eclair(), RoutingPolicy::Suggested()}) {
    const CentralityReport r = ComputeCentrality(
        g, policy, TargetSet::Nodes({g.node("m")}), cross, 1);
    EXPECT_EQ(r.routable, cross.size());
    EXPECT_DOUBLE_EQ(r.fraction, 1.0) << policy.name();
  }
}

TEST(CentralityTest, DisjointSetScoresZero) {
  const ChannelGraph g = LoadFixture("bridge.json");
  const auto left = NodesWithPrefix(g, 'l');
  const PairSample within = PairSample::Among(left, 1'000'000);
  const CentralityReport r = ComputeCentrality(
      g, RoutingPolicy::Lnd(), TargetSet::Nodes({g.node("r2")}), within, 1);
  EXPECT_EQ(r.hits, 0u);
  EXPECT_EQ(r.fraction, 0.0);
}

TEST(CentralityTest, EndpointsAreNotHijacks) {
  const ChannelGraph g = LoadFixture("two_node.json");
  const CentralityReport r =
      ComputeCentrality(g, RoutingPolicy::Lnd(), TargetSet::Nodes({0, 1}),
                        PairSample::All(g, 1000), 1);
  EXPECT_EQ(r.routable, 2u);
  EXPECT_EQ(r.hits, 0u);
}

TEST(CentralityTest, UnroutablePairsLeaveTheDenominator) {
  const ChannelGraph g = LoadFixture("null_policy.json");
  const CentralityReport r =
      ComputeCentrality(g, RoutingPolicy::Lnd(), TargetSet::Nodes({0}),
                        PairSample::All(g, 1000), 1);
  EXPECT_EQ(r.routable, 1u);
  EXPECT_EQ(r.unroutable, 1u);
  EXPECT_EQ(std::count(r.pair_hits.begin(), r.pair_hits.end(), -1), 1);
}

TEST(CentralityTest, DoubleCountingIdentity) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    testing::SmallGraphOptions opts;
    opts.nodes = 10;
    const ChannelGraph g = RandomSmallGraph(seed, opts);
    const PairSample pairs = PairSample::All(g, 200'000);
    for (const RoutingPolicy& policy : DeterministicPolicies()) {
      std::size_t per_node = 0;
      for (NodeIndex v = 0; v < g.node_count(); ++v) {
        per_node +=
            ComputeCentrality(g, policy, TargetSet::Nodes({v}), pairs, 1).hits;
      }
      std::size_t interior = 0;
      const EdgeWeigher w = testing::CoreWeigher(g, policy);
      for (const auto& [s, t] : pairs.pairs) {
        const auto brute = testing::BruteForceRoutes(g, w, s, t, pairs.amount);
        if (!brute.empty()) interior += brute[0].hop_count() - 1;
      }
      EXPECT_EQ(per_node, interior) << policy.name() << " seed " << seed;
    }
  }
}

TEST(CentralityTest, SupersetNeverScoresLower) {
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const ChannelGraph g = RandomSmallGraph(seed);
    const PairSample pairs = PairSample::All(g, 100'000);
    Rng rng(seed);
    for (const RoutingPolicy& policy : DeterministicPolicies()) {
      std::vector<ChannelIndex> set;
      double last = 0;
      std::vector<ChannelIndex> order(g.channel_count());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (ChannelIndex c : order) {
        set.push_back(c);
        const double f =
            ComputeCentrality(g, policy, TargetSet::Channels(set), pairs, 1)
                .fraction;
        EXPECT_GE(f, last);
        last = f;
      }
      EXPECT_DOUBLE_EQ(last, 1.0);
    }
  }
}

TEST(CentralityTest, ChannelSetsAreSubmodular) {
  int checked = 0;
  for (std::uint64_t seed = 40; seed < 80; ++seed) {
    testing::SmallGraphOptions opts;
    opts.nodes = 9 + seed % 4;
    const ChannelGraph g = RandomSmallGraph(seed, opts);
    const PairSample pairs = PairSample::All(g, 100'000);
    const RoutingPolicy policy = DeterministicPolicies()[seed % 4];
    const auto routes = RoutePairs(g, policy, pairs, 1);
    Rng rng(seed);
    for (int i = 0; i < 5; ++i) {
      std::vector<ChannelIndex> a, b, both, either;
      for (ChannelIndex c = 0; c < g.channel_count(); ++c) {
        const bool in_a = UniformReal(rng) < 0.3;
        const bool in_b = UniformReal(rng) < 0.3;
        if (in_a) a.push_back(c);
        if (in_b) b.push_back(c);
        if (in_a && in_b) both.push_back(c);
        if (in_a || in_b) either.push_back(c);
      }
      const auto hits = [&](const std::vector<ChannelIndex>& s) {
        return CentralityFromRoutes(TargetSet::Channels(s), routes).hits;
      };
      EXPECT_GE(hits(a) + hits(b), hits(either) + hits(both));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 200);
}

TEST(CentralityTest, ReportsAreReproducible) {
  const ChannelGraph g = LoadFixture("mainnet_style.json");
  const PairSample pairs = PairSample::Sample(g, 1'000'000, 400, 9);
  for (const char* name : {"lnd", "clightning", "eclair", "suggested"}) {
    const RoutingPolicy policy = RoutingPolicy::FromName(name);
    const auto a =
        ComputeCentrality(g, policy, TargetSet::Nodes({0, 1, 2}), pairs, 3, 2);
    const auto b =
        ComputeCentrality(g, policy, TargetSet::Nodes({0, 1, 2}), pairs, 3, 2);
    EXPECT_EQ(a.pair_hits, b.pair_hits) << name;
    EXPECT_EQ(a.fraction, b.fraction) << name;
    // Deterministic policies route each pair once whatever the trial count.
    const std::size_t trials = policy.randomized() ? 2 : 1;
    EXPECT_EQ(a.trials, trials) << name;
    EXPECT_EQ(a.routable + a.unroutable, trials * pairs.size());
  }
}

TEST(TopCentralTest, StarHubCoversLeafPairs) {
  for (int leaves : {3, 5, 9}) {
    const ChannelGraph g = Star(leaves);
    const auto curve = TopCentralNodes(g, RoutingPolicy::Lnd(), 2,
                                       PairSample::All(g, 1000), 1);
    ASSERT_GE(curve.size(), 1u);
    EXPECT_EQ(curve[0].nodes, (std::vector<NodeIndex>{g.node("hub")}));
    const double n = leaves;
    EXPECT_DOUBLE_EQ(curve[0].fraction,
                     n * (n - 1) / ((n + 1) * n));
  }
}

TEST(TopCentralTest, EveryNodeCoversEveryMultiHopRoute) {
  const ChannelGraph star = Star(6);
  std::vector<NodeIndex> leaves;
  for (NodeIndex v = 0; v < star.node_count(); ++v) {
    if (v != star.node("hub")) leaves.push_back(v);
  }
  const auto curve =
      TopCentralNodes(star, RoutingPolicy::Lnd(), star.node_count(),
                      PairSample::Among(leaves, 1000), 1);
  EXPECT_DOUBLE_EQ(curve.back().fraction, 1.0);

  const ChannelGraph g = LoadFixture("mainnet_style.json");
  const PairSample pairs = PairSample::Sample(g, 1'000'000, 600, 2);
  const auto routes = RoutePairs(g, RoutingPolicy::Lnd(), pairs, 1);
  std::size_t routable = 0, multi = 0;
  for (const auto& r : routes) {
    if (!r) continue;
    ++routable;
    multi += r->hop_count() > 1;
  }
  const auto full = TopCentralNodesFromRoutes(g.node_count(),
                                              g.node_count(), routes);
  EXPECT_DOUBLE_EQ(full.back().fraction,
                   static_cast<double>(multi) / static_cast<double>(routable));
}

TEST(TopCentralTest, CurveIsNondecreasingAndMatchesCentrality) {
  const ChannelGraph g = LoadFixture("mainnet_style.json");
  const PairSample pairs = PairSample::Sample(g, 1'000'000, 800, 3);
  const auto curve = TopCentralNodes(g, RoutingPolicy::Lnd(), 10, pairs, 1);
  ASSERT_EQ(curve.size(), 10u);
  double last = 0;
  double last_gain = 1;
  for (const CurvePoint& p : curve) {
    EXPECT_GE(p.fraction, last);
    // Greedy coverage gains never grow.
    EXPECT_LE(p.fraction - last, last_gain + 1e-12);
    last_gain = p.fraction - last;
    last = p.fraction;
    const double direct =
        ComputeCentrality(g, RoutingPolicy::Lnd(), TargetSet::Nodes(p.nodes),
                          pairs, 1)
            .fraction;
    EXPECT_DOUBLE_EQ(direct, p.fraction);
  }
}

TEST(EclairMetricsTest, TopThreeFixture) {
  const ChannelGraph g = LoadFixture("top3.json");
  PairSample pairs;
  pairs.amount = 1'000'000;
  pairs.pairs = {{g.node("s1"), g.node("t1")}, {g.node("s2"), g.node("t2")}};
  const std::vector<NodeIndex> attacker = {g.node("A")};
  const EclairHijackMetrics m = ComputeEclairHijackMetrics(g, attacker, pairs);
  EXPECT_EQ(m.routable, 2u);
  EXPECT_DOUBLE_EQ(m.best_route_fraction, 0.5);
  EXPECT_DOUBLE_EQ(m.all_top_fraction, 0.0);
  EXPECT_NEAR(m.expected_fraction, 2.0 / 3.0, 1e-12);
}

TEST(EclairMetricsTest, SaturatedAndEmptyAttackers) {
  const ChannelGraph g = LoadFixture("top3.json");
  PairSample pairs;
  pairs.pairs = {{g.node("s1"), g.node("t1")}};
  std::vector<NodeIndex> everyone(g.node_count());
  std::iota(everyone.begin(), everyone.end(), 0);
  const auto full = ComputeEclairHijackMetrics(g, everyone, pairs);
  EXPECT_EQ(full.best_route_fraction, 1.0);
  EXPECT_EQ(full.all_top_fraction, 1.0);
  EXPECT_EQ(full.expected_fraction, 1.0);
  const std::vector<NodeIndex> idle = {g.node("t2")};
  const auto none = ComputeEclairHijackMetrics(g, idle, pairs);
  EXPECT_EQ(none.best_route_fraction, 0.0);
  EXPECT_EQ(none.all_top_fraction, 0.0);
  EXPECT_EQ(none.expected_fraction, 0.0);
}

TEST(EclairMetricsTest, OrderingInvariants) {
  const ChannelGraph g = LoadFixture("mainnet_style.json");
  const PairSample pairs = PairSample::Sample(g, 1'000'000, 300, 4);
  for (NodeIndex first = 0; first < 20; first += 4) {
    const std::vector<NodeIndex> attackers = {first, first + 1};
    const auto m = ComputeEclairHijackMetrics(g, attackers, pairs);
    EXPECT_LE(m.all_top_fraction, m.best_route_fraction);
    EXPECT_LE(m.all_top_fraction, m.expected_fraction);
  }
}

TEST(DistributionTest, CompleteGraphRoutesDirectly) {
  ChannelGraph::Builder b;
  for (int i = 0; i < 6; ++i) b.AddNode("k" + std::to_string(i));
  int id = 1;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      b.AddChannel(std::to_string(id++), "k" + std::to_string(i),
                   "k" + std::to_string(j), 1'000'000'000, 0, {1, 1, 40, true},
                   {1, 1, 40, true});
    }
  }
  const ChannelGraph g = std::move(b).Build();
  const auto routes =
      RoutePairs(g, RoutingPolicy::Lnd(), PairSample::All(g, 100'000), 1);
  EXPECT_EQ(PathLengthDistribution(routes).histogram, (Histogram{{1, 30}}));
  EXPECT_EQ(FeeDistribution(routes).histogram, (Histogram{{0, 30}}));
}

TEST(DistributionTest, PathGraphEndToEnd) {
  ChannelGraph::Builder b;
  const int n = 7;
  for (int i = 0; i < n; ++i) b.AddNode("p" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) {
    b.AddChannel(std::to_string(i + 1), "p" + std::to_string(i),
                 "p" + std::to_string(i + 1), 1'000'000'000, 0, {0, 0, 40, true},
                 {0, 0, 40, true});
  }
  const ChannelGraph g = std::move(b).Build();
  PairSample pairs;
  pairs.pairs = {{0, n - 1}};
  const auto routes = RoutePairs(g, RoutingPolicy::CLightning(), pairs, 1);
  EXPECT_EQ(PathLengthDistribution(routes).histogram, (Histogram{{n - 1, 1}}));
  // Zero-fee network: every route is free.
  const auto all =
      RoutePairs(g, RoutingPolicy::Eclair(), PairSample::All(g, 5000), 1);
  EXPECT_EQ(FeeDistribution(all).histogram, (Histogram{{0, n * (n - 1)}}));
}

TEST(DistributionTest, UnroutableCountedSeparately) {
  const ChannelGraph g = LoadFixture("null_policy.json");
  const auto routes =
      RoutePairs(g, RoutingPolicy::Lnd(), PairSample::All(g, 1000), 1);
  const RouteDistribution d = PathLengthDistribution(routes);
  EXPECT_EQ(d.unroutable, 1u);
  EXPECT_EQ(d.histogram, (Histogram{{1, 1}}));
}

TEST(DistributionTest, PoliciesProduceDifferentShapes) {
  SyntheticSpec spec;
  spec.node_count = 50;
  spec.attachment = 2;
  spec.seed = 5;
  const ChannelGraph g = GenerateSynthetic(spec);
  const PairSample pairs = PairSample::All(g, 1'000'000);
  const auto lnd = RoutePairs(g, RoutingPolicy::Lnd(), pairs, 1);
  const auto cl = RoutePairs(g, RoutingPolicy::CLightning(), pairs, 1);
  const auto eclair = RoutePairs(g, RoutingPolicy::Eclair(), pairs, 1);
  const Histogram hl = PathLengthDistribution(lnd).histogram;
  const Histogram hc = PathLengthDistribution(cl).histogram;
  const Histogram he = PathLengthDistribution(eclair).histogram;
  EXPECT_FALSE(hl == hc && hc == he);
  EXPECT_EQ(HistogramTotal(hl), HistogramTotal(he));
}

}  // namespace
}  // namespace pcnhijack

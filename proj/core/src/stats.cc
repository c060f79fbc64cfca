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

#include "pcnhijack/stats.h"

namespace pcnhijack {

NetworkStats ComputeStats(const ChannelGraph& graph) {
  NetworkStats stats;
  stats.node_count = graph.node_count();
  stats.channel_count = graph.channel_count();

  long double capacity_sum = 0;
  for (const Channel& c : graph.channels()) {
    capacity_sum += c.capacity;
    ++stats.capacities[c.capacity / 1000];
    for (const ChannelPolicy* p : {&c.a_to_b, &c.b_to_a}) {
      if (!p->enabled) continue;
      ++stats.base_fees[p->base_fee];
      ++stats.prop_fees[p->prop_fee_ppm];
      ++stats.delays[p->delay];
    }
  }
  if (stats.channel_count > 0) {
    stats.mean_channel_capacity =
        static_cast<double>(capacity_sum / stats.channel_count);
  }
  if (stats.node_count > 0) {
    // Every channel's capacity counts towards both endpoints.
    stats.mean_node_capacity =
        static_cast<double>(2 * capacity_sum / stats.node_count);
  }
  for (NodeIndex n = 0; n < graph.node_count(); ++n) {
    ++stats.degrees[static_cast<std::int64_t>(graph.incident_channels(n).size())];
  }
  return stats;
}

}  // namespace pcnhijack

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

#ifndef PCNHIJACK_STATS_H_
#define PCNHIJACK_STATS_H_

#include <cstdint>
#include <map>

#include "pcnhijack/graph.h"

namespace pcnhijack {

// Exact-value histogram: value -> count.
using Histogram = std::map<std::int64_t, std::uint64_t>;

inline std::uint64_t HistogramTotal(const Histogram& h) {
  std::uint64_t total = 0;
  for (const auto& [value, count] : h) total += count;
  return total;
}

struct NetworkStats {
  std::size_t node_count = 0;
  std::size_t channel_count = 0;
  double mean_channel_capacity = 0;  // msat
  // Sum of incident channel capacities averaged over nodes (msat).
  double mean_node_capacity = 0;

  // Fee and delay histograms count every enabled direction; the capacity
  // histogram counts channels; the degree histogram counts nodes.
  Histogram base_fees;
  Histogram prop_fees;
  Histogram delays;
  Histogram capacities;  // bucketed by satoshi
  Histogram degrees;
};

// Degree counts each incident channel once per endpoint.
NetworkStats ComputeStats(const ChannelGraph& graph);

}  // namespace pcnhijack

#endif  // PCNHIJACK_STATS_H_

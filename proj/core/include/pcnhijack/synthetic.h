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

#ifndef PCNHIJACK_SYNTHETIC_H_
#define PCNHIJACK_SYNTHETIC_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pcnhijack/graph.h"

namespace pcnhijack {

class InvalidSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Draws per-direction policies, capacities and funding heights. The defaults
// follow the public network's observed marginals: most channels keep the
// implementation defaults, a sizeable minority charges nothing.
struct PolicySampler {
  Msat default_base_fee = 1000;
  std::int64_t default_prop_fee_ppm = 1000;
  Blocks default_delay = 144;

  // Probability that a direction keeps the default fees / default delay.
  double default_fraction = 0.7;
  double default_delay_fraction = 0.7;
  // Probability that a direction charges no base fee / no proportional fee.
  double zero_base_fraction = 0.15;
  double zero_prop_fraction = 0.15;

  // Capacities are log-uniform in [min, max] satoshi, with a small share of
  // full-coin channels.
  std::int64_t min_capacity_sat = 20'000;
  std::int64_t max_capacity_sat = 16'777'216;
  double full_coin_fraction = 0.05;

  // Funding heights are uniform in [current_height - height_span,
  // current_height].
  Blocks current_height = 586'000;
  Blocks height_span = 60'000;
};

struct SyntheticSpec {
  std::size_t node_count = 100;
  std::size_t attachment = 2;
  std::uint64_t seed = 1;
  PolicySampler sampler;
};

// Preferential-attachment channel graph: a clique on the first
// attachment + 1 nodes, then every new node opens `attachment` channels to
// distinct existing nodes picked proportionally to degree. Node ids are the
// decimal indices "0".."n-1"; channel ids are packed short channel ids.
// Connected, and a pure function of the spec. Throws InvalidSpecError when
// node_count < 2 or attachment < 1.
ChannelGraph GenerateSynthetic(const SyntheticSpec& spec);

// Parses "nodes=400,m=2,seed=7[,delay=144][,zero_base=0.2]..." as used by
// the command line. Unknown keys throw InvalidSpecError.
SyntheticSpec ParseSyntheticSpec(std::string_view text);
std::string FormatSyntheticSpec(const SyntheticSpec& spec);

}  // namespace pcnhijack

#endif  // PCNHIJACK_SYNTHETIC_H_
